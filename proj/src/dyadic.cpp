#include "lph/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace lph {

Dyadic::Dyadic(Integer numerator, unsigned shift) : numerator_(std::move(numerator)), shift_(shift) {
  if (numerator_ < 0) throw std::invalid_argument("dyadic values are nonnegative here");
  normalize();
}

Dyadic Dyadic::power_of_half(unsigned shift) { return Dyadic{Integer{1}, shift}; }

void Dyadic::normalize() {
  if (numerator_ == 0) {
    shift_ = 0;
    return;
  }
  while (shift_ > 0 && boost::multiprecision::bit_test(numerator_, 0) == false) {
    numerator_ >>= 1;
    --shift_;
  }
}

double Dyadic::to_double() const {
  // Scale down first so huge shifts do not overflow the numerator conversion.
  const unsigned bits = numerator_ == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(numerator_)) + 1;
  if (bits <= 60) return std::ldexp(static_cast<double>(numerator_), -static_cast<int>(shift_));
  const unsigned drop = bits - 60;
  const Integer top = numerator_ >> drop;
  return std::ldexp(static_cast<double>(top), static_cast<int>(drop) - static_cast<int>(shift_));
}

std::string Dyadic::to_string() const { return numerator_.str() + "/2^" + std::to_string(shift_); }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const unsigned shift = std::max(a.shift_, b.shift_);
  return Dyadic{(a.numerator_ << (shift - a.shift_)) + (b.numerator_ << (shift - b.shift_)), shift};
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  const unsigned shift = std::max(a.shift_, b.shift_);
  Dyadic::Integer diff = (a.numerator_ << (shift - a.shift_)) - (b.numerator_ << (shift - b.shift_));
  if (diff < 0) throw std::domain_error("negative dyadic difference");
  return Dyadic{std::move(diff), shift};
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const unsigned shift = std::max(a.shift_, b.shift_);
  const Dyadic::Integer lhs = a.numerator_ << (shift - a.shift_);
  const Dyadic::Integer rhs = b.numerator_ << (shift - b.shift_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace lph
