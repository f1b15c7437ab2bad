#pragma once

// Supernatural numbers: formal products prod p^{e(p)} with e(p) in N or
// infinity. They are the order invariant of procyclic groups; two hulls of
// limit-periodic sequences are isomorphic exactly when their orders agree.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lph {

class SupernaturalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponent in N u {inf}. Infinity is its own state, never a large integer.
class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr explicit Exponent(std::uint64_t value) : value_(value) {}

  static constexpr Exponent infinite() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0; }

  /// Finite value; throws for infinity.
  std::uint64_t value() const {
    if (infinite_) throw std::logic_error("exponent is infinite");
    return value_;
  }

  constexpr std::strong_ordering operator<=>(const Exponent& other) const {
    if (infinite_ || other.infinite_) return infinite_ <=> other.infinite_;
    return value_ <=> other.value_;
  }
  constexpr bool operator==(const Exponent& other) const = default;

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

class Supernatural {
 public:
  using FactorMap = std::map<std::uint64_t, Exponent>;

  /// The number 1.
  Supernatural() = default;

  /// Validates primality of keys and drops zero exponents.
  explicit Supernatural(FactorMap factors);

  static Supernatural from_integer(std::uint64_t n);

  const FactorMap& factors() const { return factors_; }
  Exponent exponent(std::uint64_t p) const;
  bool is_finite() const;
  bool is_one() const { return factors_.empty(); }
  /// The integer value when finite and representable in 64 bits.
  std::optional<std::uint64_t> to_integer() const;

  bool operator==(const Supernatural&) const = default;

 private:
  FactorMap factors_;
};

/// Grammar: `p^e` terms joined by `*`, e a positive integer or `inf`; "1" is
/// the empty product. Whitespace around terms is ignored.
Supernatural parse_supernatural(std::string_view text);
std::string format(const Supernatural& n);

/// a | b: every exponent of a is at most the matching exponent of b.
bool divides(const Supernatural& a, const Supernatural& b);
Supernatural lcm(const Supernatural& a, const Supernatural& b);
Supernatural gcd(const Supernatural& a, const Supernatural& b);

}  // namespace lph
