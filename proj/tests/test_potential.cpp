#include <doctest.h>

#include <cmath>
#include <random>

#include "lph/number_theory.hpp"
#include "lph/potential.hpp"

using namespace lph;

namespace {

const FrequencyChain pow2({2}, {2});

// sum_{j<=J} (k mod n_j)/n_j^3 in long double, straight from the definition
long double remark_partial(const FrequencyChain& c, std::size_t level, std::int64_t k) {
  long double sum = 0.0L;
  long double n = 1.0L;
  for (std::size_t j = 1; j <= level; ++j) {
    n = c.term_approx(j);
    const long double nn = n;
    long double r = std::fmod(static_cast<long double>(k), nn);
    if (r < 0) r += nn;
    sum += r / (nn * nn * nn);
  }
  return sum;
}

}  // namespace

TEST_CASE("periodic layers") {
  CHECK_THROWS_AS(PeriodicLayer({}), SamplingError);
  CHECK_THROWS_AS(PeriodicLayer({1.0, NAN}), SamplingError);
  const PeriodicLayer l({1.0, -3.0, 2.0});
  CHECK(l.period() == 3);
  CHECK(l.sup_norm() == 3.0);
  CHECK(l.at(7) == -3.0);
  CHECK_THROWS_AS(SamplingFunction::from_layers(pow2, {PeriodicLayer({1, 2, 3})}), SamplingError);
}

TEST_CASE("synth_remark") {
  CHECK(synth_remark(pow2, 40, 0).value == 0.0);
  const auto v = synth_remark(pow2, 40, 1);
  CHECK(std::abs(v.value - 1.0 / 7.0) < 1e-11);
  CHECK(v.error_bound < 1e-20);
  for (std::int64_t k : {2, 3, 17, -5, 1000001}) {
    for (std::size_t level : {1, 3, 10, 25}) {
      const auto s = synth_remark(pow2, level, k);
      CHECK(std::abs(static_cast<long double>(s.value) - remark_partial(pow2, level, k)) < 1e-15L);
    }
  }
  // tail bound against a long brute-force sum of (n_j - 1)/n_j^3
  const FrequencyChain c({3}, {2, 5});
  for (std::size_t level : {1, 2, 5, 9}) {
    long double brute = 0.0L;
    for (std::size_t j = level + 1; j <= 200; ++j) {
      const long double n = c.term_approx(j);
      brute += (n - 1.0L) / (n * n * n);
    }
    const double bound = synth_remark(c, level, 1).error_bound;
    CHECK(bound >= static_cast<double>(brute));
    CHECK(bound <= static_cast<double>(brute) * (1 + 1e-6) + 1e-300);
  }
  // finite chains stop at their last entry and carry no tail
  CHECK(synth_remark(FrequencyChain({2, 4}), 10, 3).value == doctest::Approx(1.0 / 8 + 3.0 / 64));
  CHECK(synth_remark(FrequencyChain({2, 4}), 10, 3).error_bound == 0.0);
}

TEST_CASE("synth_metric") {
  CHECK(synth_metric(pow2, 10, 0).distance.is_zero());
  const auto one = synth_metric(pow2, 30, 1);
  CHECK(std::abs(one.approx() - 0.5) <= one.tail_bound.to_double());
  const auto two = synth_metric(pow2, 30, 2);
  CHECK(std::abs(two.approx() - 0.25) <= two.tail_bound.to_double());
  CHECK(two.distance == Dyadic((Dyadic::Integer{1} << 29) - 1, 31));
}

TEST_CASE("sample") {
  const auto f = SamplingFunction::from_layers(pow2, {PeriodicLayer({0.0, 1.0})});
  for (std::int64_t n = -5; n <= 5; ++n) {
    CHECK(sample(f, ProcyclicElement::identity(pow2, 1), 1, n, 1e-12) == static_cast<double>(floor_mod(n, 2)));
  }
  const auto r = SamplingFunction::remark(pow2);
  for (std::int64_t n = -20; n <= 20; ++n) {
    const double v = sample(r, std::int64_t{0}, 1, n, 1e-13);
    CHECK(std::abs(v - synth_remark(pow2, 40, n).value) < 1e-13);
  }
  const Potential shifted{r, ProcyclicElement::from_integer(pow2, 60, 1), 1, 1e-13};
  const Potential plain{r, ProcyclicElement::identity(pow2, 60), 1, 1e-13};
  for (std::int64_t n = -50; n <= 50; ++n) CHECK(shifted(n) == plain(n + 1));
  CHECK_THROWS_AS(Potential(r, ProcyclicElement::identity(pow2, 3), 1, 1e-13), SamplingError);
  CHECK_THROWS_AS(Potential(r, std::int64_t{0}, 1, 1e-60), SamplingError);
  CHECK_THROWS_AS(Potential(r, std::int64_t{0}, 1, 0.0), SamplingError);
}

TEST_CASE("hull shift consistency on random base points") {
  std::mt19937_64 rng(12);
  const FrequencyChain c({3}, {2, 3});
  const auto f = SamplingFunction::metric(c);
  for (int t = 0; t < 50; ++t) {
    const auto omega = ProcyclicElement::from_integer(c, 30, static_cast<std::int64_t>(rng() >> 4));
    const std::int64_t n = static_cast<std::int64_t>(rng() % 2000) - 1000;
    CHECK(sample(f, omega.translate(1), 1, n, 1e-8) == sample(f, omega, 1, n + 1, 1e-8));
  }
}

TEST_CASE("approximants stay within the certified tail") {
  for (const auto& f : {SamplingFunction::remark(pow2), SamplingFunction::metric(FrequencyChain({2}, {3}))}) {
    const Potential v{f, std::int64_t{0}, 1, 1e-11};
    for (std::size_t level : {2, 4, 6}) {
      const PeriodicLayer a = v.approximant(level);
      const double tail = v.approximant_tail(level);
      double worst = 0.0;
      for (std::int64_t n = -5000; n < 5000; ++n) {
        worst = std::max(worst, std::abs(v(n) - a.at(floor_mod(n, a.period()))));
      }
      CHECK(worst <= tail + 2e-11);
    }
  }
}

TEST_CASE("periodize") {
  const FrequencyChain c({2, 4});
  const auto f = SamplingFunction::from_layers(c, {PeriodicLayer({1.0, 2.0, 5.0, 7.0})});
  const auto g = periodize(f, 1);
  REQUIRE(g.layers().size() == 1);
  CHECK(g.layers()[0] == PeriodicLayer({3.0, 4.5}));
  CHECK(g.sup_norm_bound() <= f.sup_norm_bound());
  CHECK(periodize(g, 1).layers()[0] == g.layers()[0]);

  const Potential p1{g, std::int64_t{0}, 1}, p3{g, std::int64_t{0}, 3};
  for (std::int64_t n = -10; n <= 10; ++n) {
    CHECK(p1(n + 2) == p1(n));
    CHECK(p3(n + 2) == p3(n));
  }

  const auto r = periodize(SamplingFunction::remark(pow2), 2);
  const Potential a{r, std::int64_t{0}, 1, 1e-13}, b{r, std::int64_t{0}, 5, 1e-13};
  const Potential raw{SamplingFunction::remark(pow2), std::int64_t{0}, 1, 1e-13};
  bool a_periodic = true, b_periodic = true, raw_periodic = true;
  for (std::int64_t n = -200; n <= 200; ++n) {
    a_periodic = a_periodic && std::abs(a(n + 4) - a(n)) < 1e-15;
    b_periodic = b_periodic && std::abs(b(n + 4) - b(n)) < 1e-15;
    raw_periodic = raw_periodic && std::abs(raw(n + 4) - raw(n)) < 1e-15;
  }
  CHECK(a_periodic);
  CHECK(a_periodic == b_periodic);
  CHECK_FALSE(raw_periodic);
  // averaging over the level-2 cosets: a(n) is the mean of raw over n + 4 Z
  double mean = 0.0;
  const std::int64_t cosets = 1 << 12;
  for (std::int64_t m = 0; m < cosets; ++m) mean += raw(1 + 4 * m);
  mean /= static_cast<double>(cosets);
  CHECK(std::abs(a(1) - mean) < 1e-9);
}

TEST_CASE("sampling_from_potential") {
  const FrequencyChain c2({2});
  std::vector<double> periodic(40);
  for (std::size_t i = 0; i < periodic.size(); ++i) periodic[i] = i % 2 == 0 ? 0.25 : -1.5;
  const auto exact = sampling_from_potential(periodic, 0, c2, 1, 1e-12);
  CHECK(exact.within_tolerance);
  CHECK(exact.residual == 0.0);
  CHECK(exact.sampling.layers()[0] == PeriodicLayer({0.25, -1.5}));

  const FrequencyChain fin({2, 4, 8});
  const Potential on_fin{SamplingFunction::remark(fin), std::int64_t{0}, 1, 1e-14};
  std::vector<double> window(80);
  for (std::size_t i = 0; i < window.size(); ++i) window[i] = on_fin(static_cast<std::int64_t>(i) - 7);
  CHECK(sampling_from_potential(window, -7, fin, 3, 1e-9).residual <= 1e-9);

  const Potential v{SamplingFunction::remark(pow2), std::int64_t{0}, 1, 1e-14};
  for (std::size_t i = 0; i < window.size(); ++i) window[i] = v(static_cast<std::int64_t>(i));
  const double tail = SamplingFunction::remark(pow2).tail_bound(3);
  const auto got = sampling_from_potential(window, 0, pow2, 3, tail + 1e-9);
  CHECK(got.residual <= tail + 1e-9);
  CHECK(got.within_tolerance);
  // the extracted layers sum to the level-3 part up to the tail
  for (std::int64_t n = 0; n < 8; ++n) {
    const std::vector<std::uint64_t> res{floor_mod(n, 2), floor_mod(n, 4), floor_mod(n, 8)};
    const double extracted = got.sampling.evaluate(res, 0);
    const double truth = synth_remark(pow2, 3, n).value;
    CHECK(extracted - truth >= -1e-15);
    CHECK(extracted - truth <= tail + 1e-15);
  }

  std::vector<double> noise(4096);
  for (std::size_t i = 0; i < noise.size(); ++i) noise[i] = iid_uniform(99, static_cast<std::int64_t>(i));
  const auto bad = sampling_from_potential(noise, 0, pow2, 5, 1e-3);
  CHECK_FALSE(bad.within_tolerance);
  CHECK(bad.residual > 0.3);
  CHECK_THROWS_AS(sampling_from_potential(noise, 0, pow2, 13, 1e-3), SamplingError);
}

TEST_CASE("gordon_check") {
  const Potential four = Potential::periodic({0.3, -1.0, 2.0, 0.5});
  const std::vector<std::uint64_t> q{4, 8, 12, 16, 20};
  const auto pass = gordon_check([&](std::int64_t n) { return four(n); }, q);
  CHECK(pass.gordon);
  for (const auto& m : pass.margins) {
    CHECK(m.max_deviation == 0.0);
    CHECK(m.pass);
  }
  CHECK(pass.margins[2].log_threshold == doctest::Approx(-12 * std::log(3.0)));

  const auto fail = gordon_check(iid_uniform_sequence(2024), q);
  CHECK_FALSE(fail.gordon);
  CHECK(fail.margins[0].pass);  // 1^-q = 1 bounds any deviation of values in [0, 1)
  CHECK_FALSE(fail.margins[1].pass);

  const Potential r{SamplingFunction::remark(pow2), std::int64_t{0}, 1, 1e-15};
  const std::vector<std::uint64_t> nj{2, 4, 8, 16, 32};
  const auto rep = gordon_check([&](std::int64_t n) { return r(n); }, nj);
  for (const auto& m : rep.margins) {
    CHECK(m.max_deviation <= SamplingFunction::remark(pow2).tail_bound(m.j) + 1e-15);
    CHECK(m.pass == (std::log(m.max_deviation) <= m.log_threshold));
  }
  CHECK_THROWS(gordon_check(iid_uniform_sequence(1), std::vector<std::uint64_t>{4, 4}));
}

TEST_CASE("iid uniform is counter based") {
  CHECK(iid_uniform(5, 17) == iid_uniform(5, 17));
  CHECK(iid_uniform(5, 17) != iid_uniform(6, 17));
  double mean = 0.0;
  for (std::int64_t n = 0; n < 100000; ++n) {
    const double u = iid_uniform(1, n);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    mean += u;
  }
  CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
}
