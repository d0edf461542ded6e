#pragma once

// Reference computations for the tests. Everything here is written against
// GMP floats and plain integer loops, never against the library under test.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "pi01/dyadic.hpp"
#include "pi01/interval.hpp"

namespace oracle {

inline constexpr mp_bitcnt_t kBits = 1024;

inline mpf_class F(double v) { return mpf_class(v, kBits); }
inline mpf_class F(const mpz_class& v) { return mpf_class(v, kBits); }
inline mpf_class F(const mpq_class& v) { return mpf_class(v, kBits); }

// atanh(t) for |t| <= 1/3 by its Taylor series.
inline mpf_class atanh_small(const mpf_class& t) {
  mpf_class sum(0, kBits), pw(t, kBits), t2(t * t, kBits), term(0, kBits);
  mpf_class eps(1, kBits);
  mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), kBits - 8);
  for (unsigned k = 1;; k += 2) {
    term = pw / k;
    sum += term;
    if (abs(term) < eps) break;
    pw *= t2;
  }
  return sum;
}

inline mpf_class ln2() { return 2 * atanh_small(F(1) / 3); }

// ln x for x > 0: x = 2^e r with r in [1, 2), ln r = 2 atanh((r-1)/(r+1)).
inline mpf_class ln(const mpf_class& x) {
  long e = 0;
  mpf_class r(x, kBits);
  while (r >= 2) { r /= 2; ++e; }
  while (r < 1) { r *= 2; --e; }
  return 2 * atanh_small((r - 1) / (r + 1)) + e * ln2();
}

// gamma by Brent-McMillan: with n = 2^5, A/B - ln n where
// B = sum (n^k/k!)^2 and A = sum (n^k/k!)^2 (H_k - ln n); error ~ e^(-4n).
inline mpf_class gamma_brent_mcmillan() {
  const unsigned n = 32;
  mpf_class ln_n = 5 * ln2();
  mpf_class a(0, kBits), b(0, kBits), u(1, kBits), h(0, kBits);
  for (unsigned k = 0; k < 20 * n; ++k) {
    if (k > 0) {
      u = u * n / k;
      h += F(1) / k;
    }
    mpf_class u2 = u * u;
    a += u2 * (h - ln_n);
    b += u2;
  }
  return a / b;
}

// gamma by Euler-Maclaurin at N = 2^10:
// H_N - ln N - 1/(2N) + sum_k B_2k / (2k N^2k).
inline mpf_class gamma_euler_maclaurin() {
  const unsigned N = 1024;
  mpq_class h(0);
  for (unsigned k = 1; k <= N; ++k) h += mpq_class(1, k);
  mpf_class g = F(h) - 10 * ln2() - F(mpq_class(1, 2 * N));
  const mpq_class bern[] = {mpq_class(1, 6),      mpq_class(-1, 30), mpq_class(1, 42),
                            mpq_class(-1, 30),    mpq_class(5, 66),  mpq_class(-691, 2730),
                            mpq_class(7, 6),      mpq_class(-3617, 510)};
  mpz_class npow = 1;
  for (unsigned k = 1; k <= 8; ++k) {
    npow *= mpz_class(N) * N;
    g += F(mpq_class(bern[k - 1].get_num(), bern[k - 1].get_den() * 2 * k * npow));
  }
  return g;
}

inline mpf_class atan_inv(unsigned x) {
  mpf_class sum(0, kBits), pw = F(1) / x, term(0, kBits), eps(1, kBits);
  mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), kBits - 8);
  for (unsigned k = 0;; ++k) {
    term = pw / (2 * k + 1);
    if (k % 2) sum -= term; else sum += term;
    if (term < eps) break;
    pw /= x * x;
  }
  return sum;
}

inline mpf_class pi_machin() { return 16 * atan_inv(5) - 4 * atan_inv(239); }

// li(x) = gamma + ln ln x + sqrt(x) sum_n (-1)^(n-1) (ln x)^n / (n! 2^(n-1))
//         * sum_{k <= (n-1)/2} 1/(2k+1)   (Ramanujan)
inline mpf_class li_from_zero(const mpf_class& x) {
  mpf_class lx = ln(x), term(1, kBits), sum(0, kBits), inner(0, kBits), eps(1, kBits);
  mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), 400);
  for (unsigned n = 1;; ++n) {
    term = term * lx / n;
    if (n > 1) term /= 2;
    if ((n - 1) % 2 == 0) inner += F(1) / n;
    mpf_class t = term * inner;
    if (n % 2) sum += t; else sum -= t;
    if (n > 10 && abs(t) < eps) break;
  }
  return gamma_brent_mcmillan() + ln(lx) + sqrt(x) * sum;
}

// Li(x) = int_2^x dt / ln t
inline mpf_class Li(std::uint64_t x) {
  return li_from_zero(F(static_cast<double>(x))) - li_from_zero(F(2));
}

inline mpq_class to_q(const mpf_class& v) { return mpq_class(v); }

// Does iv contain v up to slack (used where the oracle is itself a float
// accurate far beyond the slack)?
inline bool contains(const pi01::Interval& iv, const mpf_class& v, double slack_log2 = -300) {
  mpf_class s(1, kBits);
  mpf_div_2exp(s.get_mpf_t(), s.get_mpf_t(), static_cast<mp_bitcnt_t>(-slack_log2));
  return iv.lo().compare(to_q(v + s)) <= 0 && iv.hi().compare(to_q(v - s)) >= 0;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k <= n; ++k)
    if (is_prime(k)) out.push_back(k);
  return out;
}

inline mpz_class lcm_1_to(std::uint64_t n) {
  mpz_class m = 1;
  for (std::uint64_t k = 2; k <= n; ++k) mpz_lcm_ui(m.get_mpz_t(), m.get_mpz_t(), k);
  return m;
}

}  // namespace oracle
