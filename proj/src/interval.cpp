#include "pi01/interval.hpp"

#include <algorithm>
#include <sstream>

#include "pi01/errors.hpp"

namespace pi01 {

Precision::Precision(int bits) : bits_(bits) {
  if (bits < kMinBits)
    throw DomainError("precision must be at least " + std::to_string(kMinBits) + " bits");
}

void PrecisionPolicy::validate() const {
  if (initial_bits < Precision::kMinBits) throw DomainError("initial bits below minimum");
  if (initial_bits > max_bits) throw DomainError("initial bits exceed max bits");
  if (growth_den <= 0 || growth_num <= growth_den)
    throw DomainError("growth factor must be a rational > 1");
}

std::vector<int> PrecisionPolicy::schedule() const {
  validate();
  std::vector<int> out{initial_bits};
  while (out.back() < max_bits) {
    long b = out.back();
    long next = (b * growth_num + growth_den - 1) / growth_den;
    next = std::max(next, b + 1);
    out.push_back(static_cast<int>(std::min<long>(next, max_bits)));
  }
  return out;
}

Interval::Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw DomainError("interval with lo > hi");
}

Dyadic Interval::width(int bits) const { return sub(hi_, lo_, bits, Round::Up); }

bool Interval::contains(const BigRational& r) const {
  return lo_.compare(r) <= 0 && hi_.compare(r) >= 0;
}

double Interval::mid_double() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }

std::string Interval::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "[" << lo_.to_double() << ", " << hi_.to_double() << "]";
  return os.str();
}

Interval round_to(const Interval& a, Precision p) {
  return {round_to(a.lo(), p.bits(), Round::Down), round_to(a.hi(), p.bits(), Round::Up)};
}

Interval add(const Interval& a, const Interval& b, Precision p) {
  return {add(a.lo(), b.lo(), p.bits(), Round::Down), add(a.hi(), b.hi(), p.bits(), Round::Up)};
}

Interval sub(const Interval& a, const Interval& b, Precision p) {
  return {sub(a.lo(), b.hi(), p.bits(), Round::Down), sub(a.hi(), b.lo(), p.bits(), Round::Up)};
}

Interval neg(const Interval& a) { return {-a.hi(), -a.lo()}; }

Interval mul(const Interval& a, const Interval& b, Precision p) {
  const int bits = p.bits();
  const Dyadic* xs[2] = {&a.lo(), &a.hi()};
  const Dyadic* ys[2] = {&b.lo(), &b.hi()};
  std::optional<Dyadic> lo, hi;
  for (auto* x : xs) {
    for (auto* y : ys) {
      Dyadic exact = exact_mul(*x, *y);
      Dyadic d = round_to(exact, bits, Round::Down);
      Dyadic u = round_to(exact, bits, Round::Up);
      if (!lo || d < *lo) lo = d;
      if (!hi || u > *hi) hi = u;
    }
  }
  return {*lo, *hi};
}

Interval div(const Interval& a, const Interval& b, Precision p) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
  const int bits = p.bits();
  const Dyadic* xs[2] = {&a.lo(), &a.hi()};
  const Dyadic* ys[2] = {&b.lo(), &b.hi()};
  std::optional<Dyadic> lo, hi;
  for (auto* x : xs) {
    for (auto* y : ys) {
      Dyadic d = div(*x, *y, bits, Round::Down);
      Dyadic u = div(*x, *y, bits, Round::Up);
      if (!lo || d < *lo) lo = d;
      if (!hi || u > *hi) hi = u;
    }
  }
  return {*lo, *hi};
}

Interval abs(const Interval& a) {
  if (a.lo().sign() >= 0) return a;
  if (a.hi().sign() <= 0) return neg(a);
  return {Dyadic(), std::max(a.lo().abs(), a.hi().abs())};
}

Interval square(const Interval& a, Precision p) {
  Interval m = abs(a);
  return {mul(m.lo(), m.lo(), p.bits(), Round::Down), mul(m.hi(), m.hi(), p.bits(), Round::Up)};
}

Interval sqrt(const Interval& a, Precision p) {
  if (a.lo().sign() < 0) throw DomainError("sqrt of an interval with negative part");
  return {sqrt(a.lo(), p.bits(), Round::Down), sqrt(a.hi(), p.bits(), Round::Up)};
}

Interval iv_arith(ArithOp op, const Interval& a, const std::optional<Interval>& b, Precision p) {
  auto need_b = [&]() -> const Interval& {
    if (!b) throw DomainError("binary interval operation without second operand");
    return *b;
  };
  switch (op) {
    case ArithOp::Add: return add(a, need_b(), p);
    case ArithOp::Sub: return sub(a, need_b(), p);
    case ArithOp::Mul: return mul(a, need_b(), p);
    case ArithOp::Div: return div(a, need_b(), p);
    case ArithOp::Neg: return round_to(neg(a), p);
    case ArithOp::Square: return square(a, p);
  }
  throw DomainError("unknown interval operation");
}

Interval iv_from_rational(const BigRational& r, Precision p) {
  const BigInt& den = r.get_den();
  if (mpz_popcount(den.get_mpz_t()) == 1) {
    auto k = static_cast<std::int64_t>(mpz_scan1(den.get_mpz_t(), 0));
    return Interval::point(Dyadic(r.get_num(), -k));
  }
  return {from_rational(r, p.bits(), Round::Down), from_rational(r, p.bits(), Round::Up)};
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  if (!a.overlaps(b)) return std::nullopt;
  return Interval(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval max(const Interval& a, const Interval& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

}  // namespace pi01
