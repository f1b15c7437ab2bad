#include "lph/procyclic.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lph/number_theory.hpp"

namespace lph {

ProcyclicElement::ProcyclicElement(FrequencyChain chain, std::vector<std::uint64_t> residues, bool)
    : chain_(std::move(chain)), residues_(std::move(residues)) {}

ProcyclicElement::ProcyclicElement(FrequencyChain chain, std::vector<std::uint64_t> residues)
    : chain_(std::move(chain)), residues_(std::move(residues)) {
  if (residues_.empty()) throw GroupError("element needs at least one level");
  const auto moduli = chain_.terms(residues_.size());
  for (std::size_t j = 0; j < residues_.size(); ++j) {
    if (residues_[j] >= moduli[j]) {
      throw GroupError("residue at level " + std::to_string(j + 1) + " is not below n_j");
    }
    if (j > 0 && residues_[j] % moduli[j - 1] != residues_[j - 1]) {
      throw GroupError("residues are incompatible at level " + std::to_string(j + 1));
    }
  }
}

ProcyclicElement ProcyclicElement::from_integer(const FrequencyChain& chain, std::size_t level,
                                                std::int64_t k) {
  if (level == 0) throw GroupError("level must be at least 1");
  const auto moduli = chain.terms(level);
  std::vector<std::uint64_t> residues(level);
  for (std::size_t j = 0; j < level; ++j) residues[j] = floor_mod(k, moduli[j]);
  return {chain, std::move(residues), true};
}

ProcyclicElement ProcyclicElement::identity(const FrequencyChain& chain, std::size_t level) {
  return from_integer(chain, level, 0);
}

ProcyclicElement ProcyclicElement::restrict_to(std::size_t level) const {
  if (level == 0 || level > residues_.size()) throw GroupError("restriction level out of range");
  return {chain_, std::vector<std::uint64_t>(residues_.begin(), residues_.begin() + level), true};
}

ProcyclicElement ProcyclicElement::translate(std::int64_t k) const {
  const auto moduli = chain_.terms(residues_.size());
  std::vector<std::uint64_t> out(residues_.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = add_mod(residues_[j], floor_mod(k, moduli[j]), moduli[j]);
  }
  return {chain_, std::move(out), true};
}

bool ProcyclicElement::is_identity() const {
  return std::all_of(residues_.begin(), residues_.end(), [](std::uint64_t x) { return x == 0; });
}

namespace {

void require_same_group(const ProcyclicElement& a, const ProcyclicElement& b) {
  if (!(a.chain() == b.chain())) throw GroupError("elements belong to different chains");
  if (a.level() != b.level()) throw GroupError("elements are truncated at different levels");
}

}  // namespace

ProcyclicElement operator+(const ProcyclicElement& a, const ProcyclicElement& b) {
  require_same_group(a, b);
  const auto moduli = a.chain_.terms(a.level());
  std::vector<std::uint64_t> out(a.level());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = add_mod(a.residues_[j], b.residues_[j], moduli[j]);
  return {a.chain_, std::move(out), true};
}

ProcyclicElement operator-(const ProcyclicElement& a) {
  const auto moduli = a.chain_.terms(a.level());
  std::vector<std::uint64_t> out(a.level());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = a.residues_[j] == 0 ? 0 : moduli[j] - a.residues_[j];
  return {a.chain_, std::move(out), true};
}

ProcyclicElement operator-(const ProcyclicElement& a, const ProcyclicElement& b) { return a + (-b); }

MetricValue metric(const ProcyclicElement& a, const ProcyclicElement& b) {
  if (!(a.chain() == b.chain())) throw GroupError("elements belong to different chains");
  const std::size_t level = std::min(a.level(), b.level());
  const unsigned shift = static_cast<unsigned>(level + 1);
  Dyadic::Integer numerator = 0;
  for (std::size_t j = 1; j <= level; ++j) {
    // term 2^-(j+1) written over the common denominator 2^(level+1)
    if (a.residue(j) != b.residue(j)) numerator += Dyadic::Integer{1} << (level - j);
  }
  return {Dyadic{std::move(numerator), shift}, Dyadic::power_of_half(static_cast<unsigned>(level))};
}

GeneratorVerdict is_generator(const FrequencyChain& chain, std::int64_t k, std::size_t depth) {
  if (depth == 0) throw GroupError("depth must be at least 1");
  const std::uint64_t magnitude = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  const std::size_t probed = chain.is_finite() ? std::min(depth, chain.prefix().size())
                                               : std::min(depth, chain.representable_depth());
  for (std::size_t j = 1; j <= probed; ++j) {
    const std::uint64_t n = chain.term(j);
    const std::uint64_t g = std::gcd(magnitude, n);
    if (g != 1) return {false, GeneratorWitness{GeneratorWitness::Kind::level, j, n, g}};
  }
  // gcd(k, n_j) = 1 for all j iff k is coprime to the last prefix entry and
  // to every ratio that keeps recurring.
  const std::uint64_t last = chain.prefix().back();
  if (const std::uint64_t g = std::gcd(magnitude, last); g != 1) {
    return {false, GeneratorWitness{GeneratorWitness::Kind::level, chain.prefix().size(), last, g}};
  }
  for (std::size_t i = 0; i < chain.rule().size(); ++i) {
    const std::uint64_t r = chain.rule()[i];
    if (const std::uint64_t g = std::gcd(magnitude, r); g != 1) {
      return {false, GeneratorWitness{GeneratorWitness::Kind::ratio, i + 1, r, g}};
    }
  }
  return {true, std::nullopt};
}

GeneratorVerdict translation_is_minimal(const FrequencyChain& chain, std::int64_t k, std::size_t depth) {
  return is_generator(chain, k, depth);
}

std::vector<std::uint64_t> orbit_residues(const FrequencyChain& chain, std::int64_t k,
                                          std::size_t level, std::size_t steps) {
  if (level == 0) throw GroupError("level must be at least 1");
  const std::uint64_t n = chain.term(level);
  const std::uint64_t step = floor_mod(k, n);
  std::vector<std::uint64_t> out(steps);
  std::uint64_t x = 0;
  for (std::size_t m = 0; m < steps; ++m) {
    out[m] = x;
    x = add_mod(x, step, n);
  }
  return out;
}

bool in_subgroup(std::size_t subgroup_level, const ProcyclicElement& x) {
  if (subgroup_level == 0 || subgroup_level > x.level()) {
    throw GroupError("subgroup level outside the element's truncation");
  }
  return x.residue(subgroup_level) == 0;
}

QuotientMap::QuotientMap(FrequencyChain source, FrequencyChain target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!divides(chain_limit(target_), chain_limit(source_))) {
    throw GroupError("target order " + format(chain_limit(target_)) + " does not divide source order " +
                     format(chain_limit(source_)));
  }
}

std::size_t QuotientMap::source_level(std::size_t target_level) const {
  const std::uint64_t m = target_.term(target_level);
  for (std::size_t j = 1;; ++j) {
    const auto n = source_.try_term(j);
    if (!n) throw std::overflow_error("no representable source level covers target level");
    if (*n % m == 0) return j;
    if (source_.is_finite() && j >= source_.prefix().size()) {
      throw std::logic_error("target entry does not divide the finite source");
    }
  }
}

ProcyclicElement QuotientMap::apply(const ProcyclicElement& x) const {
  if (!(x.chain() == source_)) throw GroupError("element does not belong to the source chain");
  const std::size_t cap = target_.is_finite() ? target_.prefix().size() : x.level();
  std::vector<std::uint64_t> out;
  for (std::size_t t = 1; t <= cap; ++t) {
    const std::size_t s = source_level(t);
    if (s > x.level()) break;
    out.push_back(x.residue(s) % target_.term(t));
  }
  if (out.empty()) throw GroupError("element is too coarse to determine any target level");
  return ProcyclicElement{target_, std::move(out)};
}

ProcyclicElement restrict_to_subchain(const ProcyclicElement& x, std::size_t step) {
  if (step == 0 || step > x.level()) throw GroupError("subchain step exceeds element level");
  const FrequencyChain sub = x.chain().subchain(step);
  std::vector<std::uint64_t> out;
  for (std::size_t m = 1; m * step <= x.level(); ++m) out.push_back(x.residue(m * step));
  return ProcyclicElement{sub, std::move(out)};
}

ProcyclicElement extend_from_subchain(const ProcyclicElement& y, const FrequencyChain& full,
                                      std::size_t step, std::size_t level) {
  if (!(y.chain() == full.subchain(step))) throw GroupError("element is not on the subchain");
  if (level == 0 || (level + step - 1) / step > y.level()) {
    throw GroupError("subchain element too coarse for requested level");
  }
  const auto moduli = full.terms(level);
  std::vector<std::uint64_t> out(level);
  for (std::size_t i = 1; i <= level; ++i) out[i - 1] = y.residue((i + step - 1) / step) % moduli[i - 1];
  return ProcyclicElement{full, std::move(out)};
}

}  // namespace lph
