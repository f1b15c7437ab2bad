#pragma once

// Limit-periodic potentials as sampling functions on the procyclic group,
// read along a translation orbit: V(n) = f(omega + n k E).
//
// A sampling function is a sum of periodic layers. Explicit layers are
// finite value tables; an analytic family (the t/n_j^3 layers or the metric
// layers) contributes one layer per chain level and comes with a computable
// bound on everything past a given level, so every evaluation carries an
// absolute error bound.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lph/frequency.hpp"
#include "lph/procyclic.hpp"

namespace lph {

class SamplingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PeriodicLayer {
 public:
  explicit PeriodicLayer(std::vector<double> values);

  std::uint64_t period() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double at(std::uint64_t residue) const { return values_[residue % values_.size()]; }
  double sup_norm() const;

  bool operator==(const PeriodicLayer&) const = default;

 private:
  std::vector<double> values_;
};

enum class LayerFamily { none, remark, metric };

/// A value with a certified absolute error bound.
struct Certified {
  double value = 0.0;
  double error_bound = 0.0;
};

class SamplingFunction {
 public:
  /// Layers p_j(x) = (x_j mod n_j) / n_j^3. Finite chains stop at their last entry.
  static SamplingFunction remark(FrequencyChain chain);
  /// Layers p_j(x) = 2^-(j+1) [x_j != 0]; f(kE) = dist(kE, 0).
  static SamplingFunction metric(FrequencyChain chain);
  /// Finite sum of explicit layers; every period must be a chain entry.
  static SamplingFunction from_layers(FrequencyChain chain, std::vector<PeriodicLayer> layers);

  const FrequencyChain& chain() const { return chain_; }
  LayerFamily family() const { return family_; }
  std::span<const PeriodicLayer> layers() const { return layers_; }
  /// Level k at which family layers beyond k were coset-averaged (0 = never).
  std::size_t averaged_level() const { return averaged_level_; }

  /// Number of family layers (SIZE_MAX when unbounded, 0 without a family).
  std::size_t family_depth() const;
  /// Bound on sup |p_j| for family layer j.
  double family_sup(std::size_t j) const;
  /// Bound on the sup norm of all family layers past level J.
  double tail_bound(std::size_t level) const;
  /// Smallest level whose family tail is below tol; throws SamplingError when
  /// the needed chain entries do not fit in 64 bits.
  std::size_t required_level(double tol) const;
  /// Smallest level L with every explicit period dividing n_L.
  std::size_t explicit_level() const;
  double sup_norm_bound() const;

  /// f at the point with residues x_1..x_L (L >= every level used), using
  /// family layers 1..family_levels.
  double evaluate(std::span<const std::uint64_t> residues, std::size_t family_levels) const;
  double family_layer(std::size_t j, std::span<const std::uint64_t> residues) const;

 private:
  SamplingFunction(FrequencyChain chain, LayerFamily family, std::vector<PeriodicLayer> layers);

  friend SamplingFunction periodize(const SamplingFunction& f, std::size_t level);

  FrequencyChain chain_;
  LayerFamily family_ = LayerFamily::none;
  std::vector<PeriodicLayer> layers_;
  std::vector<std::uint64_t> terms_;       // n_1.. as far as they fit in 64 bits
  std::vector<std::size_t> layer_levels_;  // level whose residue each explicit layer reads
  std::size_t averaged_level_ = 0;
};

/// Base point of an orbit: an integer point mE or an explicit element.
using BasePoint = std::variant<std::int64_t, ProcyclicElement>;

class Potential {
 public:
  Potential(SamplingFunction f, BasePoint base = std::int64_t{0}, std::int64_t generator = 1,
            double tol = 1e-12);

  /// n-periodic potential given by one period of values (chain {p}).
  static Potential periodic(std::vector<double> one_period);

  const SamplingFunction& sampling() const { return f_; }
  const BasePoint& base() const { return base_; }
  std::int64_t generator() const { return generator_; }
  double tolerance() const { return tol_; }
  std::size_t evaluation_level() const { return level_; }

  Certified evaluate(std::int64_t n) const;
  double operator()(std::int64_t n) const { return evaluate(n).value; }
  double sup_bound() const { return f_.sup_norm_bound(); }

  /// Residues of omega + n k E at levels 1..level.
  std::vector<std::uint64_t> residues_at(std::int64_t n, std::size_t level) const;

  /// One period (n = 0..n_J-1) of the level-J approximant along the orbit.
  PeriodicLayer approximant(std::size_t level) const;
  /// Sup distance bound between the potential and its level-J approximant.
  double approximant_tail(std::size_t level) const;

 private:
  SamplingFunction f_;
  BasePoint base_;
  std::int64_t generator_;
  double tol_;
  std::size_t level_ = 0;
  std::size_t family_levels_ = 0;
};

/// f(omega + n k E) to absolute accuracy tol.
double sample(const SamplingFunction& f, const BasePoint& omega, std::int64_t k, std::int64_t n, double tol);

/// sum_{j<=J} (k mod n_j)/n_j^3 with the bound on the omitted layers.
Certified synth_remark(const FrequencyChain& chain, std::size_t level, std::int64_t k);

/// dist(kE, 0) through level J, exact, with tail bound 2^-J.
MetricValue synth_metric(const FrequencyChain& chain, std::size_t level, std::int64_t k);

/// Haar average over the cosets of the level-k subgroup: the result is
/// n_k-periodic along every orbit.
SamplingFunction periodize(const SamplingFunction& f, std::size_t level);

struct ExtractionResult {
  SamplingFunction sampling;
  double residual = 0.0;   // sup |d - sum of extracted layers| on the window
  bool within_tolerance = false;
};

/// Greedy coset-average layer extraction from a window of values
/// d(first_index), d(first_index+1), ...; layers have periods n_1..n_J.
ExtractionResult sampling_from_potential(std::span<const double> values, std::int64_t first_index,
                                         const FrequencyChain& chain, std::size_t level, double tol);

struct GordonMargin {
  std::size_t j = 0;
  std::uint64_t q = 0;
  double max_deviation = 0.0;  // max_{1<=n<=q} |V(n) - V(n +- q)|
  double log_threshold = 0.0;  // log(j^-q) = -q log j
  bool pass = false;
};

struct GordonReport {
  bool gordon = false;
  std::vector<GordonMargin> margins;
};

GordonReport gordon_check(const Sequence& v, std::span<const std::uint64_t> q_list);

/// Counter-based iid uniform [0,1) values: the same (seed, n) always gives
/// the same number, independent of evaluation order.
double iid_uniform(std::uint64_t seed, std::int64_t n);
Sequence iid_uniform_sequence(std::uint64_t seed);

}  // namespace lph
