#pragma once

// Frequency chains n_1 | n_2 | ... and the hull classification they induce.
//
// An infinite chain is a finite prefix followed by a cyclic list of ratios;
// a chain without ratios is finite and stays at its last entry, i.e. it
// describes a periodic sequence. Terms are 1-indexed throughout.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lph/supernatural.hpp"

namespace lph {

class ChainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FrequencyChain {
 public:
  using Factors = std::map<std::uint64_t, std::uint64_t>;

  FrequencyChain(std::vector<std::uint64_t> prefix, std::vector<std::uint64_t> rule = {});

  std::span<const std::uint64_t> prefix() const { return prefix_; }
  std::span<const std::uint64_t> rule() const { return rule_; }
  bool is_finite() const { return rule_.empty(); }

  /// n_j; throws std::overflow_error when n_j does not fit in 64 bits.
  std::uint64_t term(std::size_t j) const;
  std::optional<std::uint64_t> try_term(std::size_t j) const;
  /// First `count` terms; throws on overflow.
  std::vector<std::uint64_t> terms(std::size_t count) const;
  /// n_j as a long double, usable far beyond the 64-bit range.
  long double term_approx(std::size_t j) const;
  /// Largest j such that n_1..n_j are all representable (SIZE_MAX if finite).
  std::size_t representable_depth() const;

  /// n_{j+1} / n_j (1 past the end of a finite chain).
  std::uint64_t ratio(std::size_t j) const;
  /// Exact factorization of n_j, available at any depth.
  Factors term_factors(std::size_t j) const;

  /// The chain n_t, n_{2t}, n_{3t}, ...
  FrequencyChain subchain(std::size_t step) const;

  bool operator==(const FrequencyChain&) const = default;

 private:
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> rule_;
};

/// Order of the hull: the supernatural limit of the chain.
Supernatural chain_limit(const FrequencyChain& chain);

struct DivisibilityWitness {
  std::size_t index = 0;                     // entry j of the dominated chain
  std::optional<std::uint64_t> value;        // n_j, when representable
  std::size_t partner_index = 0;             // first entry of the other chain n_j divides
  std::optional<std::uint64_t> partner_value;
};

struct NonDominatedEntry {
  char side = 'a';                           // chain the entry belongs to
  std::size_t index = 0;
  std::optional<std::uint64_t> value;
  std::uint64_t prime = 0;                   // prime whose exponent cannot be matched
  Exponent required;                         // exponent of `prime` in that entry
  Exponent available;                        // exponent in the other chain's limit
};

struct IsomorphismCertificate {
  std::vector<DivisibilityWitness> a_in_b;
  std::vector<DivisibilityWitness> b_in_a;
  std::optional<NonDominatedEntry> counterexample;
};

struct IsomorphismVerdict {
  bool isomorphic = false;
  Supernatural order_a;
  Supernatural order_b;
  IsomorphismCertificate certificate;
};

/// Decides hull isomorphism by comparing limits. The certificate pairs each of
/// the first `depth` entries of one chain with an entry of the other that it
/// divides, or names an entry that divides nothing on the other side.
IsomorphismVerdict hulls_isomorphic(const FrequencyChain& a, const FrequencyChain& b,
                                    std::size_t depth = 8);

/// Refinement with prime consecutive ratios; composite ratios split into
/// nondecreasing primes. The first `depth` original terms are materialized in
/// the result's prefix.
FrequencyChain maximal_chain(const FrequencyChain& chain, std::size_t depth);

/// Frequencies 2*pi/n_j, j <= level.
struct FrequencyModuleView {
  FrequencyChain chain;
  std::size_t level = 1;

  std::vector<double> generators() const;
};

using Sequence = std::function<double(std::int64_t)>;

enum class BohrWindow {
  closed,     // k = -N..N, divided by 2N
  half_open,  // k = -N..N-1, divided by 2N
};

struct BohrCoefficient {
  std::complex<double> value;
  double magnitude = 0.0;
};

/// Windowed Birkhoff average (1/2N) sum_k d(k) exp(-2 pi i k / q).
BohrCoefficient bohr_coefficient(const Sequence& d, std::uint64_t q, std::int64_t window,
                                 BohrWindow shape = BohrWindow::closed);

/// Frequency generating both 2pi/q1 and 2pi/q2, reported as its denominator.
std::uint64_t common_divisor_frequency(std::uint64_t q1, std::uint64_t q2);

}  // namespace lph
