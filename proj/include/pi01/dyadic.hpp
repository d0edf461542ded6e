#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "pi01/bignum.hpp"

namespace pi01 {

enum class Round { Down, Up };

inline Round opposite(Round r) { return r == Round::Down ? Round::Up : Round::Down; }

// An exact dyadic rational mantissa * 2^exponent. The mantissa is kept odd
// (or zero with exponent 0) so equal values have equal representations.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt mantissa, std::int64_t exponent);
  explicit Dyadic(long v) : Dyadic(BigInt(v), 0) {}
  static Dyadic from_int(const BigInt& v) { return Dyadic(v, 0); }
  // Doubles are dyadic, so this conversion is exact. Rejects inf/nan.
  static Dyadic from_double(double v);

  const BigInt& mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }
  int sign() const { return sgn(mant_); }
  bool is_zero() const { return sgn(mant_) == 0; }

  // floor(log2 |x|); undefined for zero.
  std::int64_t top_bit() const;

  Dyadic operator-() const { return Dyadic(-mant_, exp_); }
  Dyadic abs() const { return sign() < 0 ? -*this : *this; }
  Dyadic shifted(std::int64_t k) const { return is_zero() ? *this : Dyadic(mant_, exp_ + k); }

  std::strong_ordering operator<=>(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const { return mant_ == o.mant_ && exp_ == o.exp_; }

  // Comparison with an exact rational.
  std::strong_ordering compare(const BigRational& r) const;

  BigInt floor() const;
  BigInt ceil() const;
  // Exact value; only sensible for moderate exponents.
  BigRational to_rational() const;
  double to_double() const;

  // "m*2^e" with decimal m and e.
  std::string to_string() const;
  static Dyadic parse(const std::string& s);

 private:
  void normalize();

  BigInt mant_{0};
  std::int64_t exp_{0};
};

// Directed-rounding arithmetic. Results carry at most `bits` significant
// bits and are rounded in the requested direction.
Dyadic round_to(const Dyadic& x, int bits, Round dir);
Dyadic add(const Dyadic& a, const Dyadic& b, int bits, Round dir);
Dyadic sub(const Dyadic& a, const Dyadic& b, int bits, Round dir);
Dyadic mul(const Dyadic& a, const Dyadic& b, int bits, Round dir);
Dyadic div(const Dyadic& a, const Dyadic& b, int bits, Round dir);
Dyadic sqrt(const Dyadic& a, int bits, Round dir);
Dyadic from_rational(const BigRational& r, int bits, Round dir);

// Exact sum (no rounding); the caller must keep exponent gaps moderate.
Dyadic exact_add(const Dyadic& a, const Dyadic& b);
Dyadic exact_mul(const Dyadic& a, const Dyadic& b);

// Fixed-point view: floor or ceil of x * 2^frac_bits.
BigInt to_fixed(const Dyadic& x, std::int64_t frac_bits, Round dir);

}  // namespace pi01
