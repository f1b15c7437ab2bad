#pragma once

// The procyclic group B = closure{ nE } inside prod_j Z_{n_j}, handled through
// its finite quotients: an element is a compatible residue vector truncated
// at some level J, and every exact statement is "at level J".

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lph/dyadic.hpp"
#include "lph/frequency.hpp"

namespace lph {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ProcyclicElement {
 public:
  /// Validates 0 <= x_j < n_j and x_{j+1} = x_j (mod n_j).
  ProcyclicElement(FrequencyChain chain, std::vector<std::uint64_t> residues);

  /// kE truncated at level J: residues k mod n_j.
  static ProcyclicElement from_integer(const FrequencyChain& chain, std::size_t level, std::int64_t k);
  static ProcyclicElement identity(const FrequencyChain& chain, std::size_t level);

  const FrequencyChain& chain() const { return chain_; }
  std::size_t level() const { return residues_.size(); }
  std::span<const std::uint64_t> residues() const { return residues_; }
  /// x_j, 1-indexed.
  std::uint64_t residue(std::size_t j) const { return residues_.at(j - 1); }

  ProcyclicElement restrict_to(std::size_t level) const;
  /// x + k E
  ProcyclicElement translate(std::int64_t k) const;
  bool is_identity() const;

  friend ProcyclicElement operator+(const ProcyclicElement& a, const ProcyclicElement& b);
  friend ProcyclicElement operator-(const ProcyclicElement& a, const ProcyclicElement& b);
  friend ProcyclicElement operator-(const ProcyclicElement& a);
  friend bool operator==(const ProcyclicElement& a, const ProcyclicElement& b) = default;

 private:
  ProcyclicElement(FrequencyChain chain, std::vector<std::uint64_t> residues, bool /*trusted*/);

  FrequencyChain chain_;
  std::vector<std::uint64_t> residues_;
};

struct MetricValue {
  Dyadic distance;    // partial sum over levels j <= J
  Dyadic tail_bound;  // 2^-J
  double approx() const { return distance.to_double(); }
};

/// sum_{j<=J} 2^-j * d_j/(1+d_j) with the discrete metric d_j, i.e. 2^-(j+1)
/// per differing level. Elements of different levels are compared at the
/// coarser one.
MetricValue metric(const ProcyclicElement& a, const ProcyclicElement& b);

struct GeneratorWitness {
  enum class Kind { level, ratio };
  Kind kind = Kind::level;
  std::size_t index = 0;      // level j, or position in the rule cycle (1-based)
  std::uint64_t value = 0;    // n_j or the ratio
  std::uint64_t common = 0;   // gcd(k, value)
};

struct GeneratorVerdict {
  bool generator = false;
  std::optional<GeneratorWitness> witness;
};

/// kE generates B iff gcd(k, n_j) = 1 for every j. Levels up to `depth` are
/// probed first; the rule's ratios then decide all remaining levels.
GeneratorVerdict is_generator(const FrequencyChain& chain, std::int64_t k, std::size_t depth);

/// Translation x -> x + kE is minimal exactly when kE is a generator.
GeneratorVerdict translation_is_minimal(const FrequencyChain& chain, std::int64_t k, std::size_t depth);

/// m*k mod n_J for m = 0..steps-1.
std::vector<std::uint64_t> orbit_residues(const FrequencyChain& chain, std::int64_t k,
                                          std::size_t level, std::size_t steps);

/// x in B_k = closure{ n n_k E }, i.e. x_k = 0.
bool in_subgroup(std::size_t subgroup_level, const ProcyclicElement& x);

/// Reduction B(source) -> B(target) for a target whose order divides the
/// source order. Target level t reads the first source level s(t) with
/// m_t | n_{s(t)}.
class QuotientMap {
 public:
  QuotientMap(FrequencyChain source, FrequencyChain target);

  const FrequencyChain& source() const { return source_; }
  const FrequencyChain& target() const { return target_; }

  /// s(t), 1-indexed.
  std::size_t source_level(std::size_t target_level) const;
  /// Image of x at the deepest target level x determines.
  ProcyclicElement apply(const ProcyclicElement& x) const;

 private:
  FrequencyChain source_;
  FrequencyChain target_;
};

/// Restrict x to the subchain n_t, n_{2t}, ...
ProcyclicElement restrict_to_subchain(const ProcyclicElement& x, std::size_t step);
/// Inverse of restrict_to_subchain: rebuild full-chain residues up to level J.
ProcyclicElement extend_from_subchain(const ProcyclicElement& y, const FrequencyChain& full,
                                      std::size_t step, std::size_t level);

}  // namespace lph
