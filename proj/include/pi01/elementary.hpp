#pragma once

#include <cstdint>

#include "pi01/interval.hpp"

namespace pi01 {

// Enclosure [lo, hi] of a real v as integers: lo <= v * 2^frac_bits <= hi.
struct FixedEnclosure {
  BigInt lo;
  BigInt hi;
  std::int64_t frac_bits = 0;

  Interval to_interval() const {
    return {Dyadic(lo, -frac_bits), Dyadic(hi, -frac_bits)};
  }
};

// ln(x) for a positive dyadic, with lo/hi a few units apart at frac_bits.
// Argument reduction to [1/sqrt2, sqrt2] by exponent extraction, then the
// atanh series with a geometric tail bound.
FixedEnclosure ln_fixed(const Dyadic& x, std::int64_t frac_bits);
FixedEnclosure ln2_fixed(std::int64_t frac_bits);

// Monotone enclosures: ln needs lo(x) > 0.
Interval iv_ln(const Interval& x, Precision p);
Interval iv_exp(const Interval& x, Precision p);

Interval ln2_enclosure(Precision p);

// Stored constants, validated against two independent series in the test
// suite. Requests above stored_constant_cap_bits() throw CapacityError.
int stored_constant_cap_bits();
Interval gamma_enclosure(Precision p);
Interval pi_enclosure(Precision p);

// Largest |x| accepted by iv_exp.
inline constexpr double kExpArgumentCap = 1099511627776.0;  // 2^40

}  // namespace pi01
