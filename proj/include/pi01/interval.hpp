#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pi01/bignum.hpp"
#include "pi01/dyadic.hpp"

namespace pi01 {

// Target binary precision of interval endpoints.
class Precision {
 public:
  static constexpr int kMinBits = 16;
  explicit Precision(int bits);
  int bits() const { return bits_; }
  Precision plus(int extra) const { return Precision(bits_ + extra); }
  auto operator<=>(const Precision&) const = default;

 private:
  int bits_;
};

// Escalation schedule for certified comparisons: initial_bits, then
// repeated multiplication by growth (a rational > 1) up to max_bits.
struct PrecisionPolicy {
  int initial_bits = 96;
  int max_bits = 4096;
  long growth_num = 2;
  long growth_den = 1;

  void validate() const;
  std::vector<int> schedule() const;
};

// Certified enclosure [lo, hi] of a real number, lo <= hi.
class Interval {
 public:
  Interval() = default;
  Interval(Dyadic lo, Dyadic hi);
  static Interval point(const Dyadic& d) { return Interval(d, d); }
  static Interval from_int(const BigInt& v) { return point(Dyadic::from_int(v)); }
  static Interval from_long(long v) { return point(Dyadic(v)); }

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Dyadic width(int bits = 64) const;
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Dyadic& d) const { return lo_ <= d && d <= hi_; }
  bool contains(const BigRational& r) const;
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  // Certified strict comparisons: true only when every point qualifies.
  bool certainly_less(const Interval& o) const { return hi_ < o.lo_; }
  bool certainly_greater(const Interval& o) const { return lo_ > o.hi_; }
  bool certainly_positive() const { return lo_.sign() > 0; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

  double mid_double() const;
  std::string to_string() const;

  bool operator==(const Interval&) const = default;

 private:
  Dyadic lo_;
  Dyadic hi_;
};

enum class ArithOp { Add, Sub, Mul, Div, Neg, Square };

Interval add(const Interval& a, const Interval& b, Precision p);
Interval sub(const Interval& a, const Interval& b, Precision p);
Interval mul(const Interval& a, const Interval& b, Precision p);
Interval div(const Interval& a, const Interval& b, Precision p);
Interval neg(const Interval& a);
Interval square(const Interval& a, Precision p);
Interval abs(const Interval& a);
Interval sqrt(const Interval& a, Precision p);
Interval round_to(const Interval& a, Precision p);
// Dispatching form; b is required for the binary operations.
Interval iv_arith(ArithOp op, const Interval& a, const std::optional<Interval>& b, Precision p);

Interval iv_from_rational(const BigRational& r, Precision p);

// Smallest interval containing both; and the intersection (nullopt if disjoint).
Interval hull(const Interval& a, const Interval& b);
std::optional<Interval> intersect(const Interval& a, const Interval& b);
// Enclosure of max(x, y) for x in a, y in b.
Interval max(const Interval& a, const Interval& b);

}  // namespace pi01
