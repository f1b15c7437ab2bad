#include "lph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lph/kernels.hpp"

namespace lph {

TransferState transfer_product(const Sequence& v, double energy, std::int64_t n_start,
                               std::int64_t n_end) {
  if (n_start > n_end) throw std::invalid_argument("transfer_product needs n_start <= n_end");
  TransferState state;
  for (std::int64_t n = n_start; n < n_end; ++n) state.step(energy - v(n));
  return state;
}

double lyapunov_estimate(const Sequence& v, double energy, std::size_t n) {
  const double e[] = {energy};
  return lyapunov_curve(v, e, n).front();
}

std::vector<double> lyapunov_curve(const Sequence& v, std::span<const double> energies, std::size_t n) {
  if (n == 0) throw std::invalid_argument("lyapunov estimate needs N >= 1");
  const auto values = kernels::omp::sample(v, 1, n);
  return kernels::omp::lyapunov_sweep(values, energies);
}

double discriminant(const PeriodicLayer& period, double energy) {
  return transfer_over(period.values(), energy).trace();
}

namespace {

// Shrinks [lo, hi] around a sign change of f, keeping f(lo) on the side of
// `lo_positive`.
template <class F>
double bisect(F&& f, double lo, double hi, bool lo_positive, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> potential_range(const PeriodicLayer& period) {
  const auto vals = period.values();
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  return {*lo, *hi};
}

void require_tol(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("band tolerance must be positive");
}

}  // namespace

BandSet bands(const PeriodicLayer& period, double tol) {
  require_tol(tol);
  const auto [vmin, vmax] = potential_range(period);
  const auto vals = period.values();
  auto delta = [&](double e) { return transfer_over(vals, e).trace(); };

  std::vector<double> brackets{vmin - 2.0};
  if (vals.size() > 1) {
    const auto mu = kernels::omp::tridiagonal_eigenvalues(vals.first(vals.size() - 1), vmin - 2.0,
                                                          vmax + 2.0, 0.25 * tol);
    brackets.insert(brackets.end(), mu.begin(), mu.end());
  }
  brackets.push_back(vmax + 2.0);

  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < brackets.size(); ++i) {
    const double a = brackets[i];
    const double b = brackets[i + 1];
    // Delta runs monotonically through [-2, 2] exactly once in (a, b).
    const double da = delta(a);
    const bool up = da < 0.0;
    const double z = bisect(delta, a, b, !up, 0.25 * tol);
    const double s = up ? -1.0 : 1.0;
    auto outside = [&](double e) { return s * delta(e) - 2.0; };
    auto outside_right = [&](double e) { return -s * delta(e) - 2.0; };
    const double lo = bisect(outside, a, z, true, tol);
    const double hi = bisect(outside_right, z, b, false, tol);
    out.push_back({lo, std::max(lo, hi)});
  }
  return BandSet::merged(std::move(out), tol);
}

BandSet bands_by_scan(const PeriodicLayer& period, double tol) {
  require_tol(tol);
  const double sup = period.sup_norm();
  const double lo = -2.0 - sup;
  const double hi = 2.0 + sup;
  const auto vals = period.values();
  const std::size_t points =
      static_cast<std::size_t>(std::ceil(16.0 * static_cast<double>(vals.size()) * (hi - lo))) + 1;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  const auto d = kernels::omp::discriminant_grid(vals, grid);
  auto inside = [](double x) { return std::abs(x) <= 2.0; };
  auto excess = [&](double e) { return std::abs(transfer_over(vals, e).trace()) - 2.0; };

  std::vector<Interval> out;
  std::size_t i = 0;
  while (i < points) {
    if (!inside(d[i])) {
      // a band narrower than the grid spacing: Delta jumps from one side to the other
      if (i + 1 < points && !inside(d[i + 1]) && (d[i] > 0.0) != (d[i + 1] > 0.0)) {
        auto delta = [&](double e) { return transfer_over(vals, e).trace(); };
        const double z = bisect(delta, grid[i], grid[i + 1], d[i] > 0.0, 0.25 * tol);
        out.push_back({bisect(excess, grid[i], z, true, tol), bisect(excess, z, grid[i + 1], false, tol)});
      }
      ++i;
      continue;
    }
    const double left = i == 0 ? grid[0] : bisect(excess, grid[i - 1], grid[i], true, tol);
    std::size_t k = i;
    while (k + 1 < points && inside(d[k + 1])) ++k;
    const double right = k + 1 == points ? grid[k] : bisect(excess, grid[k], grid[k + 1], false, tol);
    out.push_back({left, right});
    i = k + 1;
  }
  return BandSet::merged(std::move(out), tol);
}

double ids(const Sequence& v, double energy, std::size_t n) {
  const double e[] = {energy};
  return ids_curve(v, e, n).values.front();
}

IDSCurve ids_curve(const Sequence& v, std::span<const double> energies, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ids needs N >= 1");
  if (!std::is_sorted(energies.begin(), energies.end())) {
    throw std::invalid_argument("ids energy grid must be ascending");
  }
  const auto diagonal = kernels::omp::sample(v, 1, n);
  const auto counts = kernels::omp::inertia_counts(diagonal, energies);
  IDSCurve curve{{energies.begin(), energies.end()}, std::vector<double>(counts.size()), n};
  for (std::size_t i = 0; i < counts.size(); ++i) {
    curve.values[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return curve;
}

SpectrumApprox spectrum_approx(const Potential& v, std::size_t level, double tol) {
  const PeriodicLayer layer = v.approximant(level);
  return {bands(layer, tol), v.approximant_tail(level), level, layer.period()};
}

namespace {

ConditionAReport summarize(std::span<const long double> logs, bool structural) {
  ConditionAReport r;
  r.structural = structural;
  r.prefix_only = !structural;
  r.depth = logs.size();
  long double sup = 0.0L;
  for (std::size_t j = 0; j + 1 < logs.size(); ++j) {
    if (logs[j] <= 0.0L) continue;  // m_j = 1
    const long double q = logs[j + 1] / logs[j];
    r.log_ratios.push_back(static_cast<double>(q));
    sup = std::max(sup, q);
  }
  r.sup_ratio = static_cast<double>(sup);
  r.holds = std::isfinite(r.sup_ratio);
  r.witness = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(sup - 1e-12L)));
  if (!structural && r.log_ratios.size() >= 2) {
    r.unbounded_trend = r.log_ratios.back() == r.sup_ratio && r.log_ratios.back() > r.log_ratios.front();
  }
  return r;
}

}  // namespace

ConditionAReport condition_a_check(const FrequencyChain& chain, std::size_t depth) {
  if (depth < 2) throw std::invalid_argument("condition A needs depth >= 2");
  // Split only the listed prefix; recurring ratios come as primes in the rule.
  const FrequencyChain m = maximal_chain(chain, chain.prefix().size());
  std::vector<long double> logs;
  const auto prefix = m.prefix();
  for (std::size_t j = 0; j < prefix.size() && logs.size() < depth; ++j) {
    logs.push_back(std::log(static_cast<long double>(prefix[j])));
  }
  for (std::size_t i = 0; !m.is_finite() && logs.size() < depth; ++i) {
    logs.push_back(logs.back() + std::log(static_cast<long double>(m.rule()[i % m.rule().size()])));
  }
  return summarize(logs, !m.is_finite());
}

ConditionAReport condition_a_check_logs(std::span<const long double> log_entries) {
  if (log_entries.size() < 2) throw std::invalid_argument("condition A needs at least two entries");
  for (std::size_t j = 1; j < log_entries.size(); ++j) {
    if (!(log_entries[j] > log_entries[j - 1])) throw std::invalid_argument("entries must increase");
  }
  return summarize(log_entries, false);
}

}  // namespace lph
