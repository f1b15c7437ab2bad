#include <cmath>
#include <numbers>

#include "lph/kernels.hpp"
#include "lph/number_theory.hpp"
#include "lph/transfer.hpp"

namespace lph::kernels {

namespace {

constexpr std::uint64_t kMaxRootTable = std::uint64_t{1} << 22;

std::complex<double> phase(std::int64_t k, std::uint64_t q) {
  const long double r = static_cast<long double>(floor_mod(k, q));
  const long double angle = -2.0L * std::numbers::pi_v<long double> * r / static_cast<long double>(q);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

}  // namespace

std::vector<std::complex<double>> unit_roots(std::uint64_t q) {
  std::vector<std::complex<double>> out;
  if (q > kMaxRootTable) return out;
  out.reserve(q);
  for (std::uint64_t r = 0; r < q; ++r) out.push_back(phase(static_cast<std::int64_t>(r), q));
  return out;
}

double bisect_eigenvalue(std::span<const double> diagonal, std::size_t k, double lo, double hi,
                         double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_eigenvalues_below(diagonal, mid) >= k + 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace serial {

std::vector<double> sample(const Sequence& v, std::int64_t first, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = v(first + static_cast<std::int64_t>(i));
  return out;
}

std::complex<double> phase_sum(std::span<const double> values, std::int64_t first_index,
                               std::uint64_t q) {
  const auto roots = unit_roots(q);
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::int64_t k = first_index + static_cast<std::int64_t>(i);
    const auto w = roots.empty() ? phase(k, q) : roots[floor_mod(k, q)];
    sum += values[i] * w;
  }
  return sum;
}

std::vector<std::size_t> inertia_counts(std::span<const double> diagonal,
                                        std::span<const double> energies) {
  std::vector<std::size_t> out(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    out[i] = count_eigenvalues_below(diagonal, energies[i]);
  }
  return out;
}

std::vector<double> lyapunov_sweep(std::span<const double> values,
                                   std::span<const double> energies) {
  std::vector<double> out(energies.size());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const TransferState t = transfer_over(values, energies[i]);
    out[i] = (t.log_scale + std::log(t.max_abs_entry())) / n;
  }
  return out;
}

std::vector<double> discriminant_grid(std::span<const double> period_values,
                                      std::span<const double> energies) {
  std::vector<double> out(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    out[i] = transfer_over(period_values, energies[i]).trace();
  }
  return out;
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diagonal, double lo,
                                            double hi, double tol) {
  std::vector<double> out(diagonal.size());
  for (std::size_t k = 0; k < diagonal.size(); ++k) {
    out[k] = bisect_eigenvalue(diagonal, k, lo, hi, tol);
  }
  return out;
}

}  // namespace serial
}  // namespace lph::kernels
