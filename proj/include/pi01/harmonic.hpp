#pragma once

#include <cstdint>

#include "pi01/interval.hpp"

namespace pi01 {

inline constexpr std::uint64_t kHarmonicDirectCap = 1'000'000'000ULL;

// H_m = sum_{k<=m} 1/k by direct summation in fixed point: every 1/k is
// truncated to a multiple of 2^-F (F a multiple of 64 chosen from the
// precision and m), so the result is exact to m * 2^-F. Throws
// CapacityError when m exceeds cap.
Interval harmonic_direct(const BigNat& m, Precision p, std::uint64_t cap = kHarmonicDirectCap);

// H_m from an enclosure of ln m and a lower bound on m (>= 10):
//   H_m = ln m + gamma + 1/(2m) - 1/(12m^2) + R,  0 < R < 1/(120 m^4).
// m itself is enclosed as exp(ln_m) intersected with [m_lower, inf).
Interval harmonic_asymptotic(const Interval& ln_m, const Dyadic& m_lower, Precision p);
Interval harmonic_asymptotic(const Interval& ln_m, const BigNat& m_lower, Precision p);

}  // namespace pi01
