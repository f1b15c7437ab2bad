#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "lph/procyclic.hpp"

using namespace lph;

namespace {

const FrequencyChain pow2({2}, {2});

ProcyclicElement random_element(const FrequencyChain& c, std::size_t level, std::mt19937_64& rng) {
  // a random point of the level-J quotient is the image of a random integer
  return ProcyclicElement::from_integer(c, level, static_cast<std::int64_t>(rng() >> 2));
}

}  // namespace

TEST_CASE("elements from integers") {
  CHECK(ProcyclicElement::from_integer(pow2, 5, 0).is_identity());
  const FrequencyChain c({2, 4, 8});
  const auto five = ProcyclicElement::from_integer(c, 3, 5);
  CHECK(std::vector<std::uint64_t>(five.residues().begin(), five.residues().end()) ==
        std::vector<std::uint64_t>{1, 1, 5});
  CHECK(ProcyclicElement::from_integer(c, 3, 8) == ProcyclicElement::identity(c, 3));
  CHECK(ProcyclicElement::from_integer(c, 3, -1).residue(3) == 7);
  CHECK_THROWS_AS(ProcyclicElement(c, {1, 2}), GroupError);
  CHECK_THROWS_AS(ProcyclicElement(c, {2}), GroupError);
  CHECK_NOTHROW(ProcyclicElement(c, {1, 3, 7}));
}

TEST_CASE("group operations") {
  const FrequencyChain c({2, 4});
  const ProcyclicElement a(c, {1, 3}), b(c, {1, 1});
  CHECK((a + b).is_identity());
  CHECK(a + ProcyclicElement::identity(c, 2) == a);
  CHECK((a + (-a)).is_identity());
  CHECK(a - b == ProcyclicElement(c, {0, 2}));
  CHECK_THROWS_AS(a + ProcyclicElement::identity(c, 1), GroupError);
  CHECK_THROWS_AS(a + ProcyclicElement::identity(pow2, 2), GroupError);

  std::mt19937_64 rng(1);
  const FrequencyChain d({3, 6}, {2, 5});
  for (int t = 0; t < 200; ++t) {
    const auto x = random_element(d, 8, rng), y = random_element(d, 8, rng);
    // re-validating through the public constructor checks compatibility
    const auto sum = x + y, neg = -x;
    CHECK_NOTHROW(ProcyclicElement(d, {sum.residues().begin(), sum.residues().end()}));
    CHECK_NOTHROW(ProcyclicElement(d, {neg.residues().begin(), neg.residues().end()}));
    CHECK(x + y == y + x);
    const std::int64_t k = static_cast<std::int64_t>(rng() % 1000) - 500;
    CHECK(x.translate(k) == x + ProcyclicElement::from_integer(d, 8, k));
  }
}

TEST_CASE("metric values") {
  const auto zero = ProcyclicElement::identity(pow2, 20);
  const auto e = ProcyclicElement::from_integer(pow2, 20, 1);
  const auto m = metric(e, zero);
  CHECK(m.distance == Dyadic((Dyadic::Integer{1} << 20) - 1, 21));
  CHECK(m.tail_bound == Dyadic::power_of_half(20));
  CHECK(metric(e, e).distance.is_zero());
  const auto two = metric(ProcyclicElement::from_integer(pow2, 20, 2), zero);
  // 1/4 - 2^-21
  CHECK(two.distance == Dyadic((Dyadic::Integer{1} << 19) - 1, 21));
  // coarser level wins
  CHECK(metric(e, ProcyclicElement::identity(pow2, 3)).distance == Dyadic(7, 4));
}

TEST_CASE("metric axioms hold exactly") {
  std::mt19937_64 rng(2);
  const FrequencyChain c({2}, {3, 2});
  for (int t = 0; t < 300; ++t) {
    const auto a = random_element(c, 12, rng), b = random_element(c, 12, rng), d = random_element(c, 12, rng);
    CHECK(metric(a, b).distance == metric(b, a).distance);
    CHECK(metric(a, b).distance.is_zero() == (a == b));
    CHECK(metric(a, d).distance <= metric(a, b).distance + metric(b, d).distance);
    // translation invariance
    CHECK(metric(a + d, b + d).distance == metric(a, b).distance);
  }
}

TEST_CASE("generators") {
  CHECK(is_generator(pow2, 3, 10).generator);
  const auto two = is_generator(pow2, 2, 10);
  CHECK_FALSE(two.generator);
  REQUIRE(two.witness);
  CHECK(two.witness->kind == GeneratorWitness::Kind::level);
  CHECK(two.witness->index == 1);
  CHECK(two.witness->value == 2);
  CHECK(is_generator(FrequencyChain({6}, {5}), 1, 1).generator);
  // the offending prime enters only through the rule, beyond the probed depth
  const auto deep = is_generator(FrequencyChain({2}, {2, 2, 7}), 7, 2);
  CHECK_FALSE(deep.generator);
  CHECK(deep.witness->kind == GeneratorWitness::Kind::ratio);
  CHECK(deep.witness->value == 7);
  CHECK(is_generator(pow2, -3, 5).generator);
  CHECK(translation_is_minimal(pow2, 3, 10).generator);
  CHECK_FALSE(translation_is_minimal(pow2, 2, 10).generator);
  CHECK(translation_is_minimal(pow2, 1, 10).generator);
}

TEST_CASE("generator verdict against a brute-force gcd scan") {
  std::mt19937_64 rng(4);
  const std::uint64_t small[] = {2, 3, 5, 6, 7, 10};
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint64_t> rule(1 + rng() % 3);
    for (auto& r : rule) r = small[rng() % 6];
    const FrequencyChain c({small[rng() % 6]}, rule);
    const std::int64_t k = static_cast<std::int64_t>(rng() % 200) + 1;
    bool brute = true;
    // every prime of the chain shows up within prefix + one full cycle
    for (std::size_t j = 1; j <= 1 + rule.size(); ++j) brute = brute && std::gcd<std::uint64_t>(k, c.term(j)) == 1;
    CHECK(is_generator(c, k, 1).generator == brute);
  }
}

TEST_CASE("orbits") {
  const auto all = orbit_residues(pow2, 3, 4, 16);
  CHECK(std::set<std::uint64_t>(all.begin(), all.end()).size() == 16);
  const auto fixed = orbit_residues(pow2, 0, 4, 5);
  CHECK(std::set<std::uint64_t>(fixed.begin(), fixed.end()) == std::set<std::uint64_t>{0});
  const auto two = orbit_residues(FrequencyChain({2, 4}), 2, 2, 4);
  CHECK(std::set<std::uint64_t>(two.begin(), two.end()) == std::set<std::uint64_t>{0, 2});

  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const FrequencyChain c({6}, {2, 3});
    const std::size_t level = 1 + rng() % 5;
    const std::uint64_t n = c.term(level);
    const std::int64_t k = static_cast<std::int64_t>(rng() % 500);
    const auto orbit = orbit_residues(c, k, level, n);
    const std::set<std::uint64_t> seen(orbit.begin(), orbit.end());
    CHECK(seen.size() == n / std::gcd<std::uint64_t>(static_cast<std::uint64_t>(k), n));
  }
}

TEST_CASE("subgroups") {
  const FrequencyChain c({2, 4, 8});
  CHECK(in_subgroup(2, ProcyclicElement::identity(c, 3)));
  CHECK(in_subgroup(2, ProcyclicElement::from_integer(c, 3, 4)));
  CHECK_FALSE(in_subgroup(2, ProcyclicElement::from_integer(c, 3, 2)));
  CHECK_THROWS_AS(in_subgroup(4, ProcyclicElement::identity(c, 3)), GroupError);
}

TEST_CASE("quotient maps") {
  const QuotientMap same(pow2, pow2);
  const auto x = ProcyclicElement::from_integer(pow2, 6, 45);
  CHECK(same.apply(x) == x);

  const QuotientMap q(pow2, FrequencyChain({2, 4}));
  const auto y = q.apply(x);
  CHECK(y.level() == 2);
  CHECK(y.residue(1) == x.residue(1));
  CHECK(y.residue(2) == x.residue(2));
  CHECK_THROWS_AS(QuotientMap(pow2, FrequencyChain({3}, {3})), GroupError);

  // misaligned target: 6 | 12 but not 2 or 4 of {2,4,12,...}
  const FrequencyChain src({2, 4, 12}, {2, 3});
  const FrequencyChain tgt({3, 6}, {2, 3});
  const QuotientMap r(src, tgt);
  CHECK(r.source_level(1) == 3);
  CHECK(r.source_level(2) == 3);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_element(src, 10, rng), b = random_element(src, 10, rng);
    CHECK(r.apply(a + b) == r.apply(a) + r.apply(b));
    const std::int64_t k = static_cast<std::int64_t>(rng() % 100000);
    // integer points go to integer points
    const auto image = r.apply(ProcyclicElement::from_integer(src, 10, k));
    CHECK(image == ProcyclicElement::from_integer(tgt, image.level(), k));
  }
  // surjective: the generator maps to a generator
  CHECK(r.apply(ProcyclicElement::from_integer(src, 10, 1)) ==
        ProcyclicElement::from_integer(tgt, r.apply(ProcyclicElement::from_integer(src, 10, 1)).level(), 1));
}

TEST_CASE("subchain restriction and re-embedding commute with addition") {
  std::mt19937_64 rng(10);
  const FrequencyChain c({2, 6}, {2, 5, 3});
  for (int t = 0; t < 100; ++t) {
    const std::size_t step = 1 + rng() % 3;
    const std::size_t level = 3 * step;
    const auto a = random_element(c, level, rng), b = random_element(c, level, rng);
    const auto ra = restrict_to_subchain(a, step), rb = restrict_to_subchain(b, step);
    CHECK(restrict_to_subchain(a + b, step) == ra + rb);
    CHECK(extend_from_subchain(ra, c, step, level) == a);
    CHECK(extend_from_subchain(ra + rb, c, step, level) == a + b);
  }
}
