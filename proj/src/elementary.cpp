#include "pi01/elementary.hpp"

#include <cmath>
#include <mutex>

#include "pi01/errors.hpp"

namespace pi01 {

namespace {

BigInt pow2(std::int64_t k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return r;
}

BigInt fdiv_q(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt cdiv_q(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt fshift(const BigInt& a, std::int64_t k) {
  BigInt q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return q;
}

BigInt cshift(const BigInt& a, std::int64_t k) {
  BigInt q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return q;
}

std::int64_t bits_of(std::int64_t v) {
  std::int64_t n = 0;
  for (std::uint64_t u = v < 0 ? -static_cast<std::uint64_t>(v) : v; u; u >>= 1) ++n;
  return n;
}

// sum_{k>=0} t^(2k+1)/(2k+1) for t = num/den in [0, 1/3], scaled by 2^w.
// Every truncation in the lower pass rounds down and in the upper pass up;
// the upper pass adds a bound on the omitted tail (ratio t^2 <= 1/9).
void atanh_series(const BigInt& num, const BigInt& den, std::int64_t w, BigInt& lo, BigInt& hi) {
  lo = 0;
  hi = 0;
  if (sgn(num) == 0) return;
  BigInt scaled = num << static_cast<mp_bitcnt_t>(w);

  BigInt t = fdiv_q(scaled, den);
  BigInt t2 = fshift(t * t, w);
  BigInt p = t;
  for (unsigned long k = 0; sgn(p) > 0; ++k) {
    BigInt term;
    mpz_fdiv_q_ui(term.get_mpz_t(), p.get_mpz_t(), 2 * k + 1);
    lo += term;
    p = fshift(p * t2, w);
  }

  t = cdiv_q(scaled, den);
  t2 = cshift(t * t, w);
  p = t;
  for (unsigned long k = 0;; ++k) {
    BigInt term;
    mpz_cdiv_q_ui(term.get_mpz_t(), p.get_mpz_t(), 2 * k + 1);
    hi += term;
    if (p <= 16) break;
    p = cshift(p * t2, w);
  }
  hi += p + 1;
}

struct Ln2Cache {
  std::mutex mu;
  std::int64_t bits = 0;
  BigInt lo, hi;
};

Ln2Cache& ln2_cache() {
  static Ln2Cache c;
  return c;
}

// sum_{j>=0} r^j/j! scaled by 2^w, for 0 <= r = rr/2^w < 1/2, bounded in
// direction dir.
BigInt taylor_exp(const BigInt& rr, std::int64_t w, Round dir) {
  BigInt one = pow2(w);
  BigInt sum = one;
  BigInt term = one;
  if (sgn(rr) == 0) return sum;
  for (unsigned long j = 1;; ++j) {
    BigInt num = term * rr;
    BigInt den = one * j;
    term = dir == Round::Down ? fdiv_q(num, den) : cdiv_q(num, den);
    sum += term;
    if (dir == Round::Down && sgn(term) == 0) break;
    // Omitted tail <= term * r/(j+1) / (1 - r/(j+2)) <= term.
    if (dir == Round::Up && term <= 16) {
      sum += term;
      break;
    }
  }
  return sum;
}

// e^(rr/2^w) scaled by 2^w, |rr/2^w| < 1/2.
BigInt exp_fixed(const BigInt& rr, std::int64_t w, Round dir) {
  if (sgn(rr) >= 0) return taylor_exp(rr, w, dir);
  BigInt pos = taylor_exp(-rr, w, opposite(dir));
  BigInt one2 = pow2(2 * w);
  return dir == Round::Down ? fdiv_q(one2, pos) : cdiv_q(one2, pos);
}

Interval exp_point(const Dyadic& d, int bits) {
  if (d.is_zero()) return Interval::from_long(1);
  double approx = d.to_double();
  if (!(std::fabs(approx) <= kExpArgumentCap))
    throw CapacityError("exp argument magnitude exceeds 2^40; result exponent would need more "
                        "than 2^41 bits");
  auto k = static_cast<std::int64_t>(std::llround(approx / 0.6931471805599453));
  std::int64_t w = bits + 24 + bits_of(k);
  FixedEnclosure l2 = ln2_fixed(w);
  BigInt kk = big(k);
  BigInt d_lo = to_fixed(d, w, Round::Down);
  BigInt d_hi = to_fixed(d, w, Round::Up);
  BigInt r_lo = d_lo - kk * (k >= 0 ? l2.hi : l2.lo);
  BigInt r_hi = d_hi - kk * (k >= 0 ? l2.lo : l2.hi);
  BigInt e_lo = exp_fixed(r_lo, w, Round::Down);
  BigInt e_hi = exp_fixed(r_hi, w, Round::Up);
  return round_to(Interval(Dyadic(e_lo, k - w), Dyadic(e_hi, k - w)), Precision(bits));
}

}  // namespace

FixedEnclosure ln2_fixed(std::int64_t frac_bits) {
  auto& c = ln2_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  if (c.bits < frac_bits) {
    std::int64_t w = ((frac_bits + 255) / 256) * 256 + 32;
    BigInt lo, hi;
    atanh_series(BigInt(1), BigInt(3), w, lo, hi);
    c.bits = w;
    c.lo = 2 * lo;
    c.hi = 2 * hi;
  }
  std::int64_t drop = c.bits - frac_bits;
  return {fshift(c.lo, drop), cshift(c.hi, drop), frac_bits};
}

FixedEnclosure ln_fixed(const Dyadic& x, std::int64_t frac_bits) {
  if (x.sign() <= 0) throw DomainError("ln of a nonpositive number");
  const BigInt& m = x.mantissa();
  auto len = static_cast<std::int64_t>(mpz_sizeinbase(m.get_mpz_t(), 2));
  std::int64_t e2 = x.exponent() + len - 1;  // x = y * 2^e2, y in [1, 2)
  std::int64_t w = frac_bits + 16 + bits_of(e2);

  // y' = ybig / 2^w <= y < y' + 2^-w.
  BigInt ybig;
  bool exact = true;
  std::int64_t shift = w - (len - 1);
  if (shift >= 0) {
    ybig = m << static_cast<mp_bitcnt_t>(shift);
  } else {
    ybig = fshift(m, -shift);
    exact = mpz_scan1(m.get_mpz_t(), 0) >= static_cast<mp_bitcnt_t>(-shift);
  }
  BigInt one = pow2(w);
  FixedEnclosure l2 = ln2_fixed(w);

  BigInt s_lo, s_hi, lny_lo, lny_hi;
  if (ybig * ybig <= 2 * one * one) {
    atanh_series(ybig - one, ybig + one, w, s_lo, s_hi);
    lny_lo = 2 * s_lo;
    lny_hi = 2 * s_hi;
  } else {
    // ln y' = ln 2 - ln(2/y'), with 2/y' in (1, sqrt2).
    atanh_series(2 * one - ybig, 2 * one + ybig, w, s_lo, s_hi);
    lny_lo = l2.lo - 2 * s_hi;
    lny_hi = l2.hi - 2 * s_lo;
  }
  if (!exact) lny_hi += 1;  // ln y - ln y' < (y - y')/y' <= 2^-w

  BigInt ee = big(e2);
  BigInt lo = lny_lo + ee * (e2 >= 0 ? l2.lo : l2.hi);
  BigInt hi = lny_hi + ee * (e2 >= 0 ? l2.hi : l2.lo);
  return {fshift(lo, w - frac_bits), cshift(hi, w - frac_bits), frac_bits};
}

Interval iv_ln(const Interval& x, Precision p) {
  if (x.lo().sign() <= 0) throw DomainError("ln of an interval reaching zero or below");
  std::int64_t f = p.bits() + 8;
  FixedEnclosure lo = ln_fixed(x.lo(), f);
  FixedEnclosure hi = x.is_point() ? lo : ln_fixed(x.hi(), f);
  return round_to(Interval(Dyadic(lo.lo, -f), Dyadic(hi.hi, -f)), p);
}

Interval iv_exp(const Interval& x, Precision p) {
  Interval lo = exp_point(x.lo(), p.bits());
  if (x.is_point()) return lo;
  Interval hi = exp_point(x.hi(), p.bits());
  return {lo.lo(), hi.hi()};
}

Interval ln2_enclosure(Precision p) {
  std::int64_t f = p.bits() + 8;
  return round_to(ln2_fixed(f).to_interval(), p);
}

}  // namespace pi01
