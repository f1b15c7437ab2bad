#pragma once

// Spectral measurements for H u(n) = u(n+1) + u(n-1) + V(n) u(n).

#include <cstdint>
#include <span>
#include <vector>

#include "lph/band_set.hpp"
#include "lph/frequency.hpp"
#include "lph/potential.hpp"
#include "lph/transfer.hpp"

namespace lph {

/// Product of the one-step matrices for sites n_start, ..., n_end - 1.
TransferState transfer_product(const Sequence& v, double energy, std::int64_t n_start,
                               std::int64_t n_end);

/// (1/N) log |M_N(E)| over sites 1..N, max-abs-entry norm, not clamped.
double lyapunov_estimate(const Sequence& v, double energy, std::size_t n);
std::vector<double> lyapunov_curve(const Sequence& v, std::span<const double> energies, std::size_t n);

/// Trace of the transfer matrix over one period.
double discriminant(const PeriodicLayer& period, double energy);

/// {E : |discriminant(E)| <= 2}. Edges are bracketed by the Dirichlet
/// eigenvalues of one period, which sit in the closed gaps, then bisected to
/// width tol; bands closer than tol are merged.
BandSet bands(const PeriodicLayer& period, double tol);
/// Same set from a sign scan of 16 p points per unit length plus bisection.
BandSet bands_by_scan(const PeriodicLayer& period, double tol);

/// Fraction of eigenvalues <= E of the N x N Dirichlet truncation on sites 1..N.
double ids(const Sequence& v, double energy, std::size_t n);

struct IDSCurve {
  std::vector<double> energies;
  std::vector<double> values;
  std::size_t n = 0;
};

/// Energies must be ascending.
IDSCurve ids_curve(const Sequence& v, std::span<const double> energies, std::size_t n);

struct SpectrumApprox {
  BandSet bands;
  double tail_bound = 0.0;  // spectrum lies within this Hausdorff distance
  std::size_t level = 0;
  std::uint64_t period = 0;
};

SpectrumApprox spectrum_approx(const Potential& v, std::size_t level, double tol);

struct ConditionAReport {
  bool holds = false;
  std::uint64_t witness = 0;      // m with log m_{j+1} / log m_j <= m on the checked range
  double sup_ratio = 0.0;
  std::size_t depth = 0;          // entries examined
  bool structural = false;        // bounded for all j because the ratios recur
  bool prefix_only = false;       // verdict covers only the listed entries
  bool unbounded_trend = false;   // ratios still growing at the last entry
  std::vector<double> log_ratios;
};

/// Runs on the maximal refinement of the chain.
ConditionAReport condition_a_check(const FrequencyChain& chain, std::size_t depth);
/// Entries given by their natural logs and used as listed; always a
/// prefix-only verdict.
ConditionAReport condition_a_check_logs(std::span<const long double> log_entries);

}  // namespace lph
