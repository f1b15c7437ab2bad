#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>

namespace lph {

/// Exact nonnegative dyadic rational numerator / 2^shift, kept reduced.
class Dyadic {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Dyadic() = default;
  /// numerator / 2^shift
  Dyadic(Integer numerator, unsigned shift);

  /// 2^-shift
  static Dyadic power_of_half(unsigned shift);

  const Integer& numerator() const { return numerator_; }
  unsigned shift() const { return shift_; }
  bool is_zero() const { return numerator_ == 0; }
  double to_double() const;
  std::string to_string() const;  // "num/2^shift"

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);  // requires a >= b
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return (a <=> b) == 0; }

 private:
  void normalize();

  Integer numerator_ = 0;
  unsigned shift_ = 0;
};

}  // namespace lph
