#include "lph/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "lph/kernels.hpp"
#include "lph/number_theory.hpp"

namespace lph {

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
// Largest approximant period materialized as a value table.
constexpr std::uint64_t kMaxMaterializedPeriod = std::uint64_t{1} << 24;

std::vector<std::uint64_t> cached_terms(const FrequencyChain& chain) {
  const std::size_t depth = chain.is_finite() ? chain.prefix().size() : chain.representable_depth();
  return chain.terms(depth);
}

}  // namespace

PeriodicLayer::PeriodicLayer(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw SamplingError("periodic layer needs at least one value");
  for (const double v : values_) {
    if (!std::isfinite(v)) throw SamplingError("periodic layer values must be finite");
  }
}

double PeriodicLayer::sup_norm() const {
  double out = 0.0;
  for (const double v : values_) out = std::max(out, std::abs(v));
  return out;
}

SamplingFunction::SamplingFunction(FrequencyChain chain, LayerFamily family,
                                   std::vector<PeriodicLayer> layers)
    : chain_(std::move(chain)), family_(family), layers_(std::move(layers)), terms_(cached_terms(chain_)) {
  const auto& terms = terms_;
  for (const auto& layer : layers_) {
    const auto it = std::find_if(terms.begin(), terms.end(),
                                 [&](std::uint64_t n) { return n % layer.period() == 0; });
    if (it == terms.end()) {
      throw SamplingError("layer period " + std::to_string(layer.period()) + " divides no chain entry");
    }
    layer_levels_.push_back(static_cast<std::size_t>(it - terms.begin()) + 1);
  }
}

SamplingFunction SamplingFunction::remark(FrequencyChain chain) {
  return {std::move(chain), LayerFamily::remark, {}};
}

SamplingFunction SamplingFunction::metric(FrequencyChain chain) {
  return {std::move(chain), LayerFamily::metric, {}};
}

SamplingFunction SamplingFunction::from_layers(FrequencyChain chain, std::vector<PeriodicLayer> layers) {
  return {std::move(chain), LayerFamily::none, std::move(layers)};
}

std::size_t SamplingFunction::family_depth() const {
  switch (family_) {
    case LayerFamily::none:
      return 0;
    case LayerFamily::remark:
      return chain_.is_finite() ? chain_.prefix().size() : kUnbounded;
    case LayerFamily::metric:
      return kUnbounded;
  }
  return 0;
}

double SamplingFunction::family_sup(std::size_t j) const {
  if (j == 0 || j > family_depth()) return 0.0;
  const long double n = chain_.term_approx(j);
  if (family_ == LayerFamily::remark) return static_cast<double>((n - 1.0L) / (n * n * n));
  return n == 1.0L ? 0.0 : std::ldexp(1.0, -static_cast<int>(j) - 1);
}

double SamplingFunction::tail_bound(std::size_t level) const {
  switch (family_) {
    case LayerFamily::none:
      return 0.0;
    case LayerFamily::metric:
      return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(level, 1074)));
    case LayerFamily::remark:
      break;
  }
  if (chain_.is_finite()) {
    double sum = 0.0;
    for (std::size_t j = level + 1; j <= chain_.prefix().size(); ++j) sum += family_sup(j);
    return sum;
  }
  // Exact terms until they are negligible, then the geometric remainder:
  // n_{j+1} >= 2 n_j, so sum_{i>j} 1/n_i^2 <= 1/(3 n_j^2).
  long double n = chain_.term_approx(level + 1);
  long double sum = 0.0L;
  for (std::size_t j = level + 1;; ++j) {
    sum += (n - 1.0L) / (n * n * n);
    const long double remainder = 1.0L / (3.0L * n * n);
    if (remainder < 1e-22L * sum || n > 1e40L) {
      return static_cast<double>((sum + remainder) * (1.0L + 1e-15L));
    }
    n *= static_cast<long double>(chain_.ratio(j));
  }
}

std::size_t SamplingFunction::required_level(double tol) const {
  if (!(tol > 0.0)) throw SamplingError("tolerance must be positive");
  if (family_ == LayerFamily::none) return 0;
  // Finite chains repeat their last entry, so any level is usable there.
  const std::size_t available = chain_.is_finite() ? 1100 : chain_.representable_depth();
  for (std::size_t level = 0; level <= available; ++level) {
    if (tail_bound(level) < tol) return std::min(level, family_depth());
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tol);
  throw SamplingError(std::string("tolerance ") + buf +
                      " needs chain entries beyond 64 bits; the tail bound cannot certify it");
}

std::size_t SamplingFunction::explicit_level() const {
  return layer_levels_.empty() ? 0 : *std::max_element(layer_levels_.begin(), layer_levels_.end());
}

double SamplingFunction::sup_norm_bound() const {
  double out = 0.0;
  for (const auto& layer : layers_) out += layer.sup_norm();
  return out + tail_bound(0);
}

double SamplingFunction::family_layer(std::size_t j, std::span<const std::uint64_t> residues) const {
  const long double n = static_cast<long double>(j <= terms_.size() ? terms_[j - 1] : terms_.back());
  if (j > terms_.size() && !chain_.is_finite()) throw std::out_of_range("family layer beyond 64-bit chain entries");
  const bool averaged = averaged_level_ != 0 && j > averaged_level_;
  if (family_ == LayerFamily::remark) {
    if (!averaged) return static_cast<double>(static_cast<long double>(residues[j - 1]) / (n * n * n));
    // mean of t over t = r (mod n_k), 0 <= t < n_j
    const long double nk = static_cast<long double>(terms_[averaged_level_ - 1]);
    const long double r = static_cast<long double>(residues[averaged_level_ - 1]);
    return static_cast<double>((r + 0.5L * (n - nk)) / (n * n * n));
  }
  const double weight = std::ldexp(1.0, -static_cast<int>(j) - 1);
  if (!averaged) return residues[j - 1] != 0 ? weight : 0.0;
  if (residues[averaged_level_ - 1] != 0) return weight;
  const long double nk = static_cast<long double>(terms_[averaged_level_ - 1]);
  return static_cast<double>(weight * (1.0L - nk / n));
}

double SamplingFunction::evaluate(std::span<const std::uint64_t> residues, std::size_t family_levels) const {
  double value = 0.0;
  for (std::size_t i = 0; i < layers_.size(); ++i) value += layers_[i].at(residues[layer_levels_[i] - 1]);
  const std::size_t levels = std::min(family_levels, family_depth());
  for (std::size_t j = 1; j <= levels; ++j) value += family_layer(j, residues);
  return value;
}

Potential::Potential(SamplingFunction f, BasePoint base, std::int64_t generator, double tol)
    : f_(std::move(f)), base_(std::move(base)), generator_(generator), tol_(tol) {
  family_levels_ = f_.required_level(tol);
  level_ = std::max({family_levels_, f_.explicit_level(), std::size_t{1}});
  if (const auto* omega = std::get_if<ProcyclicElement>(&base_)) {
    if (!(omega->chain() == f_.chain())) throw SamplingError("base point lives on a different chain");
    if (omega->level() < level_) {
      throw SamplingError("base point is truncated at level " + std::to_string(omega->level()) +
                          " but tolerance needs level " + std::to_string(level_));
    }
  }
}

Potential Potential::periodic(std::vector<double> one_period) {
  const auto period = static_cast<std::uint64_t>(one_period.size());
  FrequencyChain chain{{std::max<std::uint64_t>(period, 1)}};
  std::vector<PeriodicLayer> layers;
  layers.emplace_back(std::move(one_period));
  return Potential{SamplingFunction::from_layers(std::move(chain), std::move(layers))};
}

std::vector<std::uint64_t> Potential::residues_at(std::int64_t n, std::size_t level) const {
  const auto moduli = f_.chain().terms(level);
  std::vector<std::uint64_t> out(level);
  const i128 shift = static_cast<i128>(n) * generator_;
  if (const auto* m = std::get_if<std::int64_t>(&base_)) {
    const i128 point = shift + *m;
    for (std::size_t j = 0; j < level; ++j) out[j] = floor_mod(point, moduli[j]);
    return out;
  }
  const auto& omega = std::get<ProcyclicElement>(base_);
  if (omega.level() < level) throw SamplingError("base point too coarse for requested level");
  for (std::size_t j = 0; j < level; ++j) {
    out[j] = add_mod(omega.residue(j + 1), floor_mod(shift, moduli[j]), moduli[j]);
  }
  return out;
}

Certified Potential::evaluate(std::int64_t n) const {
  const auto residues = residues_at(n, level_);
  return {f_.evaluate(residues, family_levels_), f_.tail_bound(family_levels_)};
}

PeriodicLayer Potential::approximant(std::size_t level) const {
  if (level == 0) throw SamplingError("approximant level must be at least 1");
  const std::uint64_t period = f_.chain().term(level);
  if (period > kMaxMaterializedPeriod) throw SamplingError("approximant period too large to tabulate");
  // Explicit layers whose period does not divide n_J are left out; they are
  // accounted for in approximant_tail.
  std::vector<PeriodicLayer> kept;
  for (const auto& layer : f_.layers()) {
    if (period % layer.period() == 0) kept.push_back(layer);
  }
  SamplingFunction truncated = SamplingFunction::from_layers(f_.chain(), std::move(kept));
  std::vector<double> values(period);
  const std::size_t family_levels = std::min(level, f_.family_depth());
  for (std::uint64_t n = 0; n < period; ++n) {
    const auto residues = residues_at(static_cast<std::int64_t>(n), level);
    double value = truncated.evaluate(residues, 0);
    for (std::size_t j = 1; j <= family_levels; ++j) value += f_.family_layer(j, residues);
    values[n] = value;
  }
  return PeriodicLayer{std::move(values)};
}

double Potential::approximant_tail(std::size_t level) const {
  const std::uint64_t period = f_.chain().term(level);
  double tail = f_.tail_bound(level);
  for (const auto& layer : f_.layers()) {
    if (period % layer.period() != 0) tail += layer.sup_norm();
  }
  return tail;
}

double sample(const SamplingFunction& f, const BasePoint& omega, std::int64_t k, std::int64_t n, double tol) {
  return Potential{f, omega, k, tol}.evaluate(n).value;
}

Certified synth_remark(const FrequencyChain& chain, std::size_t level, std::int64_t k) {
  if (level == 0) throw SamplingError("level must be at least 1");
  const SamplingFunction f = SamplingFunction::remark(chain);
  const std::size_t levels = std::min(level, f.family_depth());
  const auto moduli = chain.terms(levels);
  double value = 0.0;
  for (std::size_t j = 0; j < levels; ++j) {
    const double n = static_cast<double>(moduli[j]);
    value += static_cast<double>(floor_mod(k, moduli[j])) / n / n / n;
  }
  return {value, f.tail_bound(levels)};
}

MetricValue synth_metric(const FrequencyChain& chain, std::size_t level, std::int64_t k) {
  return metric(ProcyclicElement::from_integer(chain, level, k), ProcyclicElement::identity(chain, level));
}

SamplingFunction periodize(const SamplingFunction& f, std::size_t level) {
  if (level == 0) throw SamplingError("periodization level must be at least 1");
  const std::uint64_t nk = f.chain().term(level);
  std::vector<PeriodicLayer> layers;
  for (const auto& layer : f.layers()) {
    const std::uint64_t p = layer.period();
    if (nk % p == 0) {
      layers.push_back(layer);
      continue;
    }
    if (p % nk != 0) throw SamplingError("layer period is not comparable with n_k");
    std::vector<double> averaged(nk, 0.0);
    const auto values = layer.values();
    for (std::uint64_t s = 0; s < p; ++s) averaged[s % nk] += values[s];
    const double cosets = static_cast<double>(p / nk);
    for (double& v : averaged) v /= cosets;
    layers.emplace_back(std::move(averaged));
  }
  SamplingFunction out{f.chain(), f.family(), std::move(layers)};
  out.averaged_level_ = f.averaged_level_ == 0 ? level : std::min(f.averaged_level_, level);
  return out;
}

ExtractionResult sampling_from_potential(std::span<const double> values, std::int64_t first_index,
                                         const FrequencyChain& chain, std::size_t level, double tol) {
  if (level == 0) throw SamplingError("extraction level must be at least 1");
  const auto moduli = chain.terms(level);
  if (values.size() < moduli.back()) {
    throw SamplingError("window of " + std::to_string(values.size()) + " values is shorter than n_J = " +
                        std::to_string(moduli.back()));
  }
  std::vector<double> residual(values.begin(), values.end());
  std::vector<PeriodicLayer> layers;
  for (const std::uint64_t n : moduli) {
    std::vector<double> sums(n, 0.0);
    std::vector<std::size_t> counts(n, 0);
    for (std::size_t i = 0; i < residual.size(); ++i) {
      const auto t = floor_mod(first_index + static_cast<std::int64_t>(i), n);
      sums[t] += residual[i];
      ++counts[t];
    }
    for (std::uint64_t t = 0; t < n; ++t) sums[t] /= static_cast<double>(counts[t]);
    for (std::size_t i = 0; i < residual.size(); ++i) {
      residual[i] -= sums[floor_mod(first_index + static_cast<std::int64_t>(i), n)];
    }
    layers.emplace_back(std::move(sums));
  }
  double sup = 0.0;
  for (const double r : residual) sup = std::max(sup, std::abs(r));
  return {SamplingFunction::from_layers(chain, std::move(layers)), sup, sup <= tol};
}

GordonReport gordon_check(const Sequence& v, std::span<const std::uint64_t> q_list) {
  GordonReport report{true, {}};
  for (std::size_t i = 1; i < q_list.size(); ++i) {
    if (q_list[i] <= q_list[i - 1]) throw std::invalid_argument("Gordon scales must be increasing");
  }
  for (std::size_t i = 0; i < q_list.size(); ++i) {
    const std::uint64_t q = q_list[i];
    if (q == 0) throw std::invalid_argument("Gordon scales must be positive");
    const auto qi = static_cast<std::int64_t>(q);
    // V(1-q) .. V(2q): everything n +- q touches for 1 <= n <= q.
    const auto window = kernels::omp::sample(v, 1 - qi, static_cast<std::size_t>(3 * q));
    auto at = [&](std::int64_t n) { return window[static_cast<std::size_t>(n - (1 - qi))]; };
    double deviation = 0.0;
    for (std::int64_t n = 1; n <= qi; ++n) {
      deviation = std::max({deviation, std::abs(at(n) - at(n + qi)), std::abs(at(n) - at(n - qi))});
    }
    const std::size_t j = i + 1;
    const double log_threshold = -static_cast<double>(q) * std::log(static_cast<double>(j));
    const bool pass = deviation == 0.0 || std::log(deviation) <= log_threshold;
    report.margins.push_back({j, q, deviation, log_threshold, pass});
    report.gordon = report.gordon && pass;
  }
  return report;
}

double iid_uniform(std::uint64_t seed, std::int64_t n) {
  // splitmix64 finalizer over (seed, n)
  std::uint64_t x = seed + static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return static_cast<double>(x >> 11) * 0x1p-53;
}

Sequence iid_uniform_sequence(std::uint64_t seed) {
  return [seed](std::int64_t n) { return iid_uniform(seed, n); };
}

}  // namespace lph
