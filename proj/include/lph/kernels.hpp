#pragma once

// Data-parallel kernels behind the spectral and frequency code.
//
// Every kernel exists twice with the same signature: `serial` is the plain
// reference loop kept for testing, `omp` is the OpenMP version used by the
// library. Sweeps over independent energies give bitwise-identical results
// in both. phase_sum reduces in fixed-size chunks, so its value does not
// depend on the thread count, but it differs from the serial left-to-right
// sum at rounding level (relative 1e-12 is the documented bound).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lph::kernels {

using Sequence = std::function<double(std::int64_t)>;

/// Chunk length used by the parallel reductions.
inline constexpr std::size_t kReductionChunk = 4096;

namespace serial {

/// v(first), v(first+1), ..., count values.
std::vector<double> sample(const Sequence& v, std::int64_t first, std::size_t count);

/// sum_i values[i] * exp(-2 pi i (first_index + i) / q).
std::complex<double> phase_sum(std::span<const double> values, std::int64_t first_index,
                               std::uint64_t q);

/// Eigenvalue counts (<= E) of the Dirichlet truncation for each energy.
std::vector<std::size_t> inertia_counts(std::span<const double> diagonal,
                                        std::span<const double> energies);

/// (log_scale + log max|entry|) / N of the transfer product, per energy.
std::vector<double> lyapunov_sweep(std::span<const double> values,
                                   std::span<const double> energies);

/// Trace of the one-period transfer matrix at each energy.
std::vector<double> discriminant_grid(std::span<const double> period_values,
                                      std::span<const double> energies);

/// All eigenvalues of the tridiagonal matrix (unit off-diagonal) by bisection
/// on the inertia count inside [lo, hi], each to absolute width `tol`.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diagonal, double lo,
                                            double hi, double tol);

}  // namespace serial

namespace omp {

std::vector<double> sample(const Sequence& v, std::int64_t first, std::size_t count);
std::complex<double> phase_sum(std::span<const double> values, std::int64_t first_index,
                               std::uint64_t q);
std::vector<std::size_t> inertia_counts(std::span<const double> diagonal,
                                        std::span<const double> energies);
std::vector<double> lyapunov_sweep(std::span<const double> values,
                                   std::span<const double> energies);
std::vector<double> discriminant_grid(std::span<const double> period_values,
                                      std::span<const double> energies);
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diagonal, double lo,
                                            double hi, double tol);

}  // namespace omp

/// Root of unity table exp(-2 pi i r / q), r = 0..q-1; shared by both variants.
std::vector<std::complex<double>> unit_roots(std::uint64_t q);

/// k-th smallest eigenvalue (0-based) by bisection; shared by both variants.
double bisect_eigenvalue(std::span<const double> diagonal, std::size_t k, double lo, double hi,
                         double tol);

/// Threads the omp kernels will use.
int max_threads();
void set_threads(int n);

}  // namespace lph::kernels
