#include "pi01/harmonic.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#include "pi01/elementary.hpp"
#include "pi01/errors.hpp"

namespace pi01 {

namespace {

// (hi:lo) / d with hi < d; returns the quotient and leaves the remainder in rem.
inline std::uint64_t div128(std::uint64_t hi, std::uint64_t lo, std::uint64_t d,
                            std::uint64_t& rem) {
#if defined(__x86_64__)
  std::uint64_t q;
  __asm__("divq %4" : "=a"(q), "=d"(rem) : "a"(lo), "d"(hi), "rm"(d));
  return q;
#else
  unsigned __int128 n = (static_cast<unsigned __int128>(hi) << 64) | lo;
  rem = static_cast<std::uint64_t>(n % d);
  return static_cast<std::uint64_t>(n / d);
#endif
}

// Fixed-point partial sum of floor(2^(64*limbs)/k) over k in [from, to],
// k >= 2. acc[0] is the most significant fractional limb.
struct Partial {
  std::uint64_t whole = 0;
  std::vector<std::uint64_t> frac;
  std::uint64_t inexact = 0;
};

Partial sum_range(std::uint64_t from, std::uint64_t to, std::size_t limbs) {
  Partial out;
  out.frac.assign(limbs, 0);
  std::vector<std::uint64_t> q(limbs);
  for (std::uint64_t k = from; k <= to; ++k) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < limbs; ++i) q[i] = div128(r, 0, k, r);
    out.inexact += (r != 0);
    unsigned carry = 0;
    for (std::size_t i = limbs; i-- > 0;) {
      std::uint64_t s = out.frac[i] + q[i];
      unsigned c1 = s < q[i];
      std::uint64_t s2 = s + carry;
      unsigned c2 = s2 < s;
      out.frac[i] = s2;
      carry = c1 | c2;
    }
    out.whole += carry;
  }
  return out;
}

void merge(Partial& into, const Partial& from) {
  into.inexact += from.inexact;
  into.whole += from.whole;
  unsigned carry = 0;
  for (std::size_t i = into.frac.size(); i-- > 0;) {
    std::uint64_t s = into.frac[i] + from.frac[i];
    unsigned c1 = s < from.frac[i];
    std::uint64_t s2 = s + carry;
    unsigned c2 = s2 < s;
    into.frac[i] = s2;
    carry = c1 | c2;
  }
  into.whole += carry;
}

}  // namespace

Interval harmonic_direct(const BigNat& m, Precision p, std::uint64_t cap) {
  if (sgn(m) <= 0) throw DomainError("harmonic_direct needs m >= 1");
  if (m > big_u(cap) || !m.fits_ulong_p())
    throw CapacityError("harmonic_direct: m = " + m.get_str() + " exceeds the direct cap " +
                        std::to_string(cap));
  const std::uint64_t mm = m.get_ui();
  if (mm == 1) return Interval::from_long(1);

  std::size_t limbs = (static_cast<std::size_t>(p.bits()) + bit_length(m) + 4 + 63) / 64;
  const std::int64_t frac_bits = static_cast<std::int64_t>(64 * limbs);

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (mm < 1'000'000) workers = 1;
  std::vector<Partial> parts(workers);
  std::vector<std::thread> threads;
  const std::uint64_t span = (mm - 1) / workers + 1;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t from = 2 + w * span;
    std::uint64_t to = std::min(mm, from + span - 1);
    if (from > to) {
      parts[w].frac.assign(limbs, 0);
      continue;
    }
    if (workers == 1) {
      parts[w] = sum_range(from, to, limbs);
    } else {
      threads.emplace_back([&, w, from, to] { parts[w] = sum_range(from, to, limbs); });
    }
  }
  for (auto& t : threads) t.join();
  Partial total = parts[0];
  for (unsigned w = 1; w < workers; ++w) merge(total, parts[w]);

  BigInt frac;
  mpz_import(frac.get_mpz_t(), limbs, 1, sizeof(std::uint64_t), 0, 0, total.frac.data());
  BigInt lo = ((big_u(total.whole) + 1) << static_cast<mp_bitcnt_t>(frac_bits)) + frac;
  BigInt hi = lo + big_u(total.inexact);
  return round_to(Interval(Dyadic(lo, -frac_bits), Dyadic(hi, -frac_bits)), p);
}

Interval harmonic_asymptotic(const Interval& ln_m, const Dyadic& m_lower, Precision p) {
  if (m_lower < Dyadic(10))
    throw DomainError("harmonic_asymptotic: m_lower must be >= 10 (remainder bound cut-off)");
  Precision w = p.plus(16);
  Interval m_enc = iv_exp(ln_m, w);
  if (m_enc.hi() < m_lower)
    throw DomainError("harmonic_asymptotic: exp(ln_m) lies below m_lower");
  Dyadic m_lo = std::max(m_enc.lo(), m_lower);
  const Dyadic& m_hi = m_enc.hi();

  // f(m) = 1/(2m) - 1/(12m^2) is decreasing for m > 1/3.
  auto f = [&](const Dyadic& mv) {
    Interval mi = Interval::point(mv);
    Interval a = div(Interval::from_long(1), mul(Interval::from_long(2), mi, w), w);
    Interval b = div(Interval::from_long(1), mul(Interval::from_long(12), square(mi, w), w), w);
    return sub(a, b, w);
  };
  Interval corr(f(m_hi).lo(), f(m_lo).hi());

  Interval m4 = square(square(Interval::point(m_lo), w), w);
  Dyadic rem_hi = div(Dyadic(1), mul(Dyadic(120), m4.lo(), w.bits(), Round::Down), w.bits(),
                      Round::Up);

  Interval h = add(ln_m, gamma_enclosure(w), w);
  h = add(h, corr, w);
  h = add(h, Interval(Dyadic(), rem_hi), w);
  return round_to(h, p);
}

Interval harmonic_asymptotic(const Interval& ln_m, const BigNat& m_lower, Precision p) {
  return harmonic_asymptotic(ln_m, Dyadic::from_int(m_lower), p);
}

}  // namespace pi01
