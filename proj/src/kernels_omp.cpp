#include <omp.h>

#include <cmath>
#include <numbers>

#include "lph/kernels.hpp"
#include "lph/number_theory.hpp"
#include "lph/transfer.hpp"

namespace lph::kernels {

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

namespace omp {

namespace {

std::ptrdiff_t as_index(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

}  // namespace

std::vector<double> sample(const Sequence& v, std::int64_t first, std::size_t count) {
  std::vector<double> out(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < as_index(count); ++i) out[i] = v(first + i);
  return out;
}

std::complex<double> phase_sum(std::span<const double> values, std::int64_t first_index,
                               std::uint64_t q) {
  const auto roots = unit_roots(q);
  const std::size_t chunks = (values.size() + kReductionChunk - 1) / kReductionChunk;
  std::vector<std::complex<double>> partial(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < as_index(chunks); ++c) {
    // Same per-element term as the serial kernel; only the grouping differs.
    const auto chunk = values.subspan(static_cast<std::size_t>(c) * kReductionChunk)
                           .first(std::min(kReductionChunk, values.size() - c * kReductionChunk));
    const std::int64_t start = first_index + c * static_cast<std::int64_t>(kReductionChunk);
    if (roots.empty()) {
      partial[c] = serial::phase_sum(chunk, start, q);
      continue;
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      sum += chunk[i] * roots[floor_mod(start + static_cast<std::int64_t>(i), q)];
    }
    partial[c] = sum;
  }
  std::complex<double> total{0.0, 0.0};
  for (const auto& s : partial) total += s;
  return total;
}

std::vector<std::size_t> inertia_counts(std::span<const double> diagonal,
                                        std::span<const double> energies) {
  std::vector<std::size_t> out(energies.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < as_index(energies.size()); ++i) {
    out[i] = count_eigenvalues_below(diagonal, energies[i]);
  }
  return out;
}

std::vector<double> lyapunov_sweep(std::span<const double> values,
                                   std::span<const double> energies) {
  std::vector<double> out(energies.size());
  const double n = static_cast<double>(values.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < as_index(energies.size()); ++i) {
    const TransferState t = transfer_over(values, energies[i]);
    out[i] = (t.log_scale + std::log(t.max_abs_entry())) / n;
  }
  return out;
}

std::vector<double> discriminant_grid(std::span<const double> period_values,
                                      std::span<const double> energies) {
  std::vector<double> out(energies.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < as_index(energies.size()); ++i) {
    out[i] = transfer_over(period_values, energies[i]).trace();
  }
  return out;
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diagonal, double lo,
                                            double hi, double tol) {
  std::vector<double> out(diagonal.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < as_index(diagonal.size()); ++k) {
    out[k] = bisect_eigenvalue(diagonal, static_cast<std::size_t>(k), lo, hi, tol);
  }
  return out;
}

}  // namespace omp
}  // namespace lph::kernels
