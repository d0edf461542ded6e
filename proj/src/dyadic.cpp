#include "pi01/dyadic.hpp"

#include <cmath>
#include <limits>

#include "pi01/errors.hpp"

namespace pi01 {

namespace {

// floor(m / 2^k) or ceil(m / 2^k), signed.
BigInt shift_right(const BigInt& m, std::uint64_t k, Round dir) {
  BigInt r;
  if (dir == Round::Down)
    mpz_fdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), k);
  else
    mpz_cdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), k);
  return r;
}

BigInt shift_left(const BigInt& m, std::uint64_t k) {
  BigInt r;
  mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), k);
  return r;
}

}  // namespace

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent)
    : mant_(std::move(mantissa)), exp_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (sgn(mant_) == 0) {
    exp_ = 0;
    return;
  }
  auto tz = mpz_scan1(mant_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
    exp_ += static_cast<std::int64_t>(tz);
  }
}

Dyadic Dyadic::from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("dyadic from non-finite double");
  if (v == 0.0) return {};
  int e = 0;
  double f = std::frexp(v, &e);  // v = f * 2^e, 0.5 <= |f| < 1
  auto m = static_cast<long long>(std::ldexp(f, 53));
  return Dyadic(BigInt(static_cast<long>(m)), e - 53);
}

std::int64_t Dyadic::top_bit() const {
  return exp_ + static_cast<std::int64_t>(mpz_sizeinbase(mant_.get_mpz_t(), 2)) - 1;
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
  int sa = sign(), sb = o.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  std::int64_t ta = top_bit(), tb = o.top_bit();
  if (ta != tb) {
    // Same sign: larger magnitude wins for positives.
    return sa > 0 ? (ta <=> tb) : (tb <=> ta);
  }
  // Same binade: align exponents; the shift is bounded by the mantissa sizes.
  int c;
  if (exp_ >= o.exp_)
    c = cmp(shift_left(mant_, static_cast<std::uint64_t>(exp_ - o.exp_)), o.mant_);
  else
    c = cmp(mant_, shift_left(o.mant_, static_cast<std::uint64_t>(o.exp_ - exp_)));
  return c <=> 0;
}

std::strong_ordering Dyadic::compare(const BigRational& r) const {
  // sign(m*2^e - p/q) = sign(m*2^e*q - p) with q > 0.
  const BigInt& p = r.get_num();
  const BigInt& q = r.get_den();
  int sa = sign(), sb = sgn(p);
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  BigInt lhs = mant_ * q;
  BigInt rhs = p;
  if (exp_ >= 0)
    lhs = shift_left(lhs, static_cast<std::uint64_t>(exp_));
  else
    rhs = shift_left(rhs, static_cast<std::uint64_t>(-exp_));
  return cmp(lhs, rhs) <=> 0;
}

BigInt Dyadic::floor() const {
  if (exp_ >= 0) return shift_left(mant_, static_cast<std::uint64_t>(exp_));
  return shift_right(mant_, static_cast<std::uint64_t>(-exp_), Round::Down);
}

BigInt Dyadic::ceil() const {
  if (exp_ >= 0) return shift_left(mant_, static_cast<std::uint64_t>(exp_));
  return shift_right(mant_, static_cast<std::uint64_t>(-exp_), Round::Up);
}

BigRational Dyadic::to_rational() const {
  if (exp_ >= 0) return BigRational(shift_left(mant_, static_cast<std::uint64_t>(exp_)));
  BigRational r(mant_, shift_left(BigInt(1), static_cast<std::uint64_t>(-exp_)));
  r.canonicalize();
  return r;
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  long e = 0;
  double d = mpz_get_d_2exp(&e, mant_.get_mpz_t());
  std::int64_t total = exp_ + e;
  if (total > std::numeric_limits<int>::max()) return d > 0 ? HUGE_VAL : -HUGE_VAL;
  if (total < std::numeric_limits<int>::min()) return 0.0;
  return std::ldexp(d, static_cast<int>(total));
}

std::string Dyadic::to_string() const {
  return mant_.get_str(10) + "*2^" + std::to_string(exp_);
}

Dyadic Dyadic::parse(const std::string& s) {
  auto star = s.find("*2^");
  if (star == std::string::npos) throw FormatError("dyadic string lacks '*2^': " + s);
  BigInt m;
  if (m.set_str(s.substr(0, star), 10) != 0) throw FormatError("bad dyadic mantissa: " + s);
  std::size_t used = 0;
  std::int64_t e = 0;
  try {
    e = std::stoll(s.substr(star + 3), &used);
  } catch (const std::exception&) {
    throw FormatError("bad dyadic exponent: " + s);
  }
  if (used != s.size() - star - 3) throw FormatError("bad dyadic exponent: " + s);
  return Dyadic(m, e);
}

Dyadic round_to(const Dyadic& x, int bits, Round dir) {
  if (x.is_zero()) return x;
  auto len = static_cast<std::int64_t>(mpz_sizeinbase(x.mantissa().get_mpz_t(), 2));
  if (len <= bits) return x;
  auto k = static_cast<std::uint64_t>(len - bits);
  return Dyadic(shift_right(x.mantissa(), k, dir), x.exponent() + static_cast<std::int64_t>(k));
}

Dyadic exact_add(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::int64_t e = std::min(a.exponent(), b.exponent());
  BigInt ma = shift_left(a.mantissa(), static_cast<std::uint64_t>(a.exponent() - e));
  BigInt mb = shift_left(b.mantissa(), static_cast<std::uint64_t>(b.exponent() - e));
  return Dyadic(ma + mb, e);
}

Dyadic exact_mul(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa() * b.mantissa(), a.exponent() + b.exponent());
}

Dyadic add(const Dyadic& a, const Dyadic& b, int bits, Round dir) {
  if (a.is_zero()) return round_to(b, bits, dir);
  if (b.is_zero()) return round_to(a, bits, dir);
  const Dyadic& big = a.top_bit() >= b.top_bit() ? a : b;
  const Dyadic& small = a.top_bit() >= b.top_bit() ? b : a;
  // When the small operand lies far below both the rounding grid and the
  // lowest set bit of the large one, replace it by a same-signed sticky
  // value just below those; the rounded sum is unchanged.
  std::int64_t sticky = std::min(big.exponent(), big.top_bit() - bits - 1) - 2;
  if (small.top_bit() < sticky) {
    Dyadic s(BigInt(small.sign()), sticky);
    return round_to(exact_add(big, s), bits, dir);
  }
  return round_to(exact_add(a, b), bits, dir);
}

Dyadic sub(const Dyadic& a, const Dyadic& b, int bits, Round dir) {
  return add(a, -b, bits, dir);
}

Dyadic mul(const Dyadic& a, const Dyadic& b, int bits, Round dir) {
  return round_to(exact_mul(a, b), bits, dir);
}

Dyadic div(const Dyadic& a, const Dyadic& b, int bits, Round dir) {
  if (b.is_zero()) throw DomainError("dyadic division by zero");
  if (a.is_zero()) return {};
  // Scale the numerator so the integer quotient carries bits+2 bits.
  auto la = static_cast<std::int64_t>(mpz_sizeinbase(a.mantissa().get_mpz_t(), 2));
  auto lb = static_cast<std::int64_t>(mpz_sizeinbase(b.mantissa().get_mpz_t(), 2));
  std::int64_t s = std::max<std::int64_t>(0, bits + 2 + lb - la);
  BigInt num = shift_left(a.mantissa(), static_cast<std::uint64_t>(s));
  BigInt q;
  if (dir == Round::Down)
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
  else
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
  return round_to(Dyadic(q, a.exponent() - b.exponent() - s), bits, dir);
}

Dyadic sqrt(const Dyadic& a, int bits, Round dir) {
  if (a.sign() < 0) throw DomainError("sqrt of negative dyadic");
  if (a.is_zero()) return {};
  // Make the exponent even and give the mantissa 2*(bits+2) bits.
  auto la = static_cast<std::int64_t>(mpz_sizeinbase(a.mantissa().get_mpz_t(), 2));
  std::int64_t s = std::max<std::int64_t>(0, 2 * (bits + 2) - la);
  if ((a.exponent() - s) % 2 != 0) ++s;
  BigInt m = shift_left(a.mantissa(), static_cast<std::uint64_t>(s));
  BigInt r, rem;
  mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
  if (dir == Round::Up && sgn(rem) != 0) r += 1;
  return round_to(Dyadic(r, (a.exponent() - s) / 2), bits, dir);
}

Dyadic from_rational(const BigRational& r, int bits, Round dir) {
  return div(Dyadic::from_int(r.get_num()), Dyadic::from_int(r.get_den()), bits, dir);
}

BigInt to_fixed(const Dyadic& x, std::int64_t frac_bits, Round dir) {
  std::int64_t e = x.exponent() + frac_bits;
  if (e >= 0) return shift_left(x.mantissa(), static_cast<std::uint64_t>(e));
  return shift_right(x.mantissa(), static_cast<std::uint64_t>(-e), dir);
}

}  // namespace pi01
