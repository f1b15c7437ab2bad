#pragma once

// Transfer matrices for H u(n) = u(n+1) + u(n-1) + V(n) u(n).
// The one-step matrix at site n is [[E - V(n), -1], [1, 0]]; products are
// rescaled by exact powers of two so they never overflow.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

namespace lph {

struct TransferState {
  double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
  /// Natural log of the factor stripped from the stored entries.
  double log_scale = 0.0;

  static constexpr int kRescaleExponent = 512;

  double max_abs_entry() const {
    return std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
  }
  double determinant() const { return m00 * m11 - m01 * m10; }
  /// Trace of the full (unscaled) product; may be +-inf for long products.
  double trace() const { return (m00 + m11) * std::exp(log_scale); }

  /// |det(full) - 1| measured against max(1, |full|^2): the scale at which
  /// rounding in a 2x2 product shows up.
  double unimodularity_defect() const {
    const double norm = max_abs_entry();
    const double unit = std::exp(-2.0 * log_scale);
    return std::abs(determinant() - unit) / std::max(unit, norm * norm);
  }

  void step(double e_minus_v) {
    const double n00 = e_minus_v * m00 - m10;
    const double n01 = e_minus_v * m01 - m11;
    m10 = m00;
    m11 = m01;
    m00 = n00;
    m01 = n01;
    if (max_abs_entry() > 0x1p512) {
      m00 = std::ldexp(m00, -kRescaleExponent);
      m01 = std::ldexp(m01, -kRescaleExponent);
      m10 = std::ldexp(m10, -kRescaleExponent);
      m11 = std::ldexp(m11, -kRescaleExponent);
      log_scale += kRescaleExponent * std::numbers::ln2;
    }
  }
};

/// Ordered product over the sites whose potential values are given, first
/// value applied first.
inline TransferState transfer_over(std::span<const double> values, double energy) {
  TransferState state;
  for (const double v : values) state.step(energy - v);
  return state;
}

/// Number of eigenvalues <= energy of the tridiagonal matrix with the given
/// diagonal and unit off-diagonals, from the signs of the LDL^T pivots.
inline std::size_t count_eigenvalues_below(std::span<const double> diagonal, double energy) {
  std::size_t count = 0;
  double pivot = 1.0;
  bool first = true;
  for (const double v : diagonal) {
    pivot = first ? (v - energy) : (v - energy) - 1.0 / pivot;
    first = false;
    if (pivot == 0.0) pivot = -1e-300;
    if (pivot < 0.0) ++count;
  }
  return count;
}

}  // namespace lph
