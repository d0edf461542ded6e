#include "pi01/eh.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "pi01/elementary.hpp"
#include "pi01/errors.hpp"

namespace pi01 {

namespace {

constexpr std::uint64_t kModulusCap = 100'000;

Interval inv_ln(const Dyadic& t, Precision w) {
  return div(Interval::from_long(1), iv_ln(Interval::point(t), w), w);
}

// Panels never wider than t * 2^-e at their left end t.
int panel_shift(Precision p) { return std::clamp(p.bits() / 12, 5, 10); }

// int_a^b dt/ln t for 2 <= a <= b. On a panel of width H, Simpson's rule S
// overestimates by H^5/2880 f''''(xi) with f'''' > 0 and decreasing, where
//   f''''(t) = (6/u^2 + 22/u^3 + 36/u^4 + 24/u^5) / t^4,  u = ln t,
// so the panel integral lies in [S - H^5 f''''(a)/2880, S].
Interval integrate(Dyadic a, const Dyadic& b, Precision w) {
  const int e = panel_shift(w);
  const int bits = w.bits();
  Interval acc = Interval::from_long(0);
  if (!(a < b)) return acc;
  Interval fa = inv_ln(a, w);
  while (a < b) {
    Dyadic nb = exact_add(a, Dyadic(BigInt(1), a.top_bit() - e));
    if (nb > b) nb = b;
    Dyadic h = exact_add(nb, -a);
    Dyadic mid = exact_add(a, h.shifted(-1));
    Interval fm = inv_ln(mid, w);
    Interval fb = inv_ln(nb, w);
    Interval s = add(add(fa, mul(Interval::from_long(4), fm, w), w), fb, w);
    s = div(mul(s, Interval::point(h), w), Interval::from_long(6), w);

    const Dyadic& v = fa.hi();  // >= 1/u
    Dyadic poly = add(Dyadic(36), mul(Dyadic(24), v, bits, Round::Up), bits, Round::Up);
    poly = add(Dyadic(22), mul(poly, v, bits, Round::Up), bits, Round::Up);
    poly = add(Dyadic(6), mul(poly, v, bits, Round::Up), bits, Round::Up);
    poly = mul(poly, mul(v, v, bits, Round::Up), bits, Round::Up);
    Dyadic a2 = mul(a, a, bits, Round::Down);
    Dyadic d4 = div(poly, mul(a2, a2, bits, Round::Down), bits, Round::Up);
    Dyadic h2 = mul(h, h, bits, Round::Up);
    Dyadic h5 = mul(mul(h2, h2, bits, Round::Up), h, bits, Round::Up);
    Dyadic rem = div(mul(h5, d4, bits, Round::Up), Dyadic(2880), bits, Round::Up);

    acc = add(acc, Interval(sub(s.lo(), rem, bits, Round::Down), s.hi()), w);
    a = nb;
    fa = fb;
  }
  return acc;
}

Precision li_working(Precision p) { return p.plus(24); }

__int128 to_i128(const BigInt& v) {
  if (bit_length(v) > 126) throw CapacityError("fixed-point value exceeds 126 bits");
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  auto r = static_cast<__int128>((static_cast<unsigned __int128>(limbs[1]) << 64) | limbs[0]);
  return sgn(v) < 0 ? -r : r;
}

BigInt from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt r = big_u(static_cast<std::uint64_t>(u >> 64));
  r <<= 64;
  r += big_u(static_cast<std::uint64_t>(u));
  return neg ? BigInt(-r) : r;
}

Interval count_minus(std::uint64_t count, const Interval& l, Precision p) {
  return sub(Interval::from_int(big_u(count)), l, p);
}

std::string decimal(const Dyadic& d, int digits, Round dir) {
  BigRational r = d.to_rational();
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigRational s = r * BigRational(scale);
  BigInt q;
  if (dir == Round::Down)
    mpz_fdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  else
    mpz_cdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  bool neg = sgn(q) < 0;
  std::string t = BigInt(abs(q)).get_str();
  if (t.size() <= static_cast<std::size_t>(digits))
    t = std::string(digits - t.size() + 1, '0') + t;
  t.insert(t.size() - digits, ".");
  return (neg ? "-" : "") + t;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// floor(v) when the enclosure pins it, else nullopt.
std::optional<BigInt> pinned_floor(const Interval& v) {
  BigInt a = v.lo().floor(), b = v.hi().floor();
  if (a == b) return a;
  return std::nullopt;
}

std::uint64_t clamp_modulus(const BigInt& q) {
  if (sgn(q) < 0) return 0;
  if (!q.fits_ulong_p()) throw CapacityError("modulus bound does not fit 64 bits");
  return q.get_ui();
}

}  // namespace

Interval li_segment(std::uint64_t a, std::uint64_t b, Precision p) {
  if (a < 2) throw DomainError("Li is integrated from t >= 2");
  if (b < a) throw DomainError("li_segment needs a <= b");
  Precision w = li_working(p);
  return round_to(integrate(Dyadic::from_int(big_u(a)), Dyadic::from_int(big_u(b)), w), p);
}

Interval li(std::uint64_t x, Precision p) {
  if (x < 2) throw DomainError("Li(x) needs x >= 2");
  return li_segment(2, x, p);
}

LiSweep::LiSweep(std::uint64_t start, Precision p)
    : prec_(li_working(p)), y_(start), value_(li(start, li_working(p))) {}

void LiSweep::advance_to(std::uint64_t y) {
  if (y < y_) throw DomainError("LiSweep moves forward only");
  if (y == y_) return;
  value_ = add(value_, integrate(Dyadic::from_int(big_u(y_)), Dyadic::from_int(big_u(y)), prec_),
               prec_);
  y_ = y;
}

std::uint64_t euler_phi(std::uint64_t q, const ChebyshevTable& table) {
  if (q < 1) throw DomainError("euler_phi needs q >= 1");
  std::uint64_t result = q, rest = q;
  for (std::uint32_t p : table.primes()) {
    if (static_cast<std::uint64_t>(p) * p > rest) break;
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    result -= result / p;
  }
  if (rest > 1) {
    std::uint64_t last = table.primes().empty() ? 2 : table.primes().back();
    if (last * last < rest) throw RangeError("sieve too small to factor modulus");
    result -= result / rest;
  }
  return result;
}

EhRecord error_term(std::uint64_t x, std::uint64_t q, std::uint64_t a, const ChebyshevTable& table,
                    Precision p) {
  if (x < 2) throw DomainError("error_term needs x >= 2");
  if (q < 1 || q > x) throw DomainError("error_term needs 1 <= q <= x");
  if (std::gcd(a, q) != 1) throw DomainError("residue must be coprime to the modulus");
  Precision w = p.plus(8);
  EhRecord r;
  r.x = x;
  r.q = q;
  r.a = a % q;
  r.pi_qa = prime_pi_progression(x, q, a, table);
  r.li_over_phi =
      round_to(div(li(x, w), Interval::from_int(big_u(euler_phi(q, table))), w), p);
  r.error = round_to(count_minus(r.pi_qa, r.li_over_phi, w), p);
  return r;
}

Interval e_max(std::uint64_t x, std::uint64_t q, const ChebyshevTable& table, Precision p) {
  if (x < 2) throw DomainError("e_max needs x >= 2");
  if (q < 1) throw DomainError("e_max needs q >= 1");
  if (x > table.limit()) throw RangeError("e_max beyond sieve limit");
  Precision w = p.plus(8);
  std::vector<std::uint64_t> counts(q, 0);
  for (std::uint32_t pr : table.primes()) {
    if (pr > x) break;
    ++counts[pr % q];
  }
  Interval lp = div(li(x, w), Interval::from_int(big_u(euler_phi(q, table))), w);
  std::optional<Interval> best;
  for (std::uint64_t a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    Interval e = abs(count_minus(counts[a], lp, w));
    best = best ? max(*best, e) : e;
  }
  return round_to(*best, p);
}

EStarEngine::EStarEngine(std::uint64_t x, const ChebyshevTable& table, Precision p)
    : table_(table), x_(x), prec_(p) {
  if (x < 2) throw DomainError("E* needs x >= 2");
  if (x > table.limit()) throw RangeError("E* beyond sieve limit");
  LiSweep sweep(2, p);
  auto push = [&](std::uint64_t y, std::size_t before) {
    sweep.advance_to(y);
    const Interval& l = sweep.value();
    points_.push_back({y, before, to_i128(to_fixed(l.lo(), 64, Round::Down)),
                       to_i128(to_fixed(l.hi(), 64, Round::Up))});
  };
  const auto& primes = table.primes();
  push(2, 1);
  std::size_t i = 1;
  for (; i < primes.size() && primes[i] <= x; ++i) {
    push(primes[i] - 1, i);
    push(primes[i], i + 1);
  }
  if (points_.back().y != x) push(x, i);
}

Interval EStarEngine::e_star(std::uint64_t q) const {
  if (q < 1) throw DomainError("E* needs q >= 1");
  const std::uint64_t phi = euler_phi(q, table_);
  const auto& primes = table_.primes();
  std::vector<std::uint32_t> counts(q, 0);
  std::vector<std::uint64_t> hist(points_.back().primes_before + 2, 0);
  hist[0] = phi;
  std::uint64_t cmin = 0, cmax = 0;
  std::size_t idx = 0;
  const __int128 phi128 = static_cast<__int128>(phi);
  __int128 best_lo = 0, best_hi = 0;
  bool first = true;
  for (const Point& pt : points_) {
    for (; idx < pt.primes_before; ++idx) {
      std::uint32_t pr = primes[idx];
      if (q % pr == 0) continue;  // the prime's residue is not coprime to q
      std::uint32_t& c = counts[pr % q];
      --hist[c];
      ++c;
      ++hist[c];
      cmax = std::max<std::uint64_t>(cmax, c);
      while (hist[cmin] == 0) ++cmin;
    }
    // phi E(y;q) = max(phi cmax - L, L - phi cmin), with L = Li(y) in [l_lo, l_hi].
    __int128 top = (phi128 * cmax) << 64;
    __int128 bot = (phi128 * cmin) << 64;
    __int128 lo = std::max(top - pt.l_hi, pt.l_lo - bot);
    __int128 hi = std::max(top - pt.l_lo, pt.l_hi - bot);
    if (first || lo > best_lo) best_lo = lo;
    if (first || hi > best_hi) best_hi = hi;
    first = false;
  }
  BigInt den = big_u(phi) << 64;
  int bits = prec_.bits();
  return {from_rational(make_rational(from_i128(best_lo), den), bits, Round::Down),
          from_rational(make_rational(from_i128(best_hi), den), bits, Round::Up)};
}

Interval e_star(std::uint64_t x, std::uint64_t q, const ChebyshevTable& table, Precision p) {
  return EStarEngine(x, table, p).e_star(q);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::BV:
      return "BV";
    case Regime::EH:
      return "EH";
    case Regime::FGHM:
      break;
  }
  return "FGHM";
}

std::uint64_t bv_modulus(std::uint64_t x, double B, Precision p) {
  if (x < 16) throw DomainError("bv_sum needs x >= 16");
  BigInt xx = big_u(x);
  if (B == 0) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), xx.get_mpz_t());
    return clamp_modulus(r);
  }
  Interval bi = Interval::point(Dyadic::from_double(B));
  for (int bits = p.bits(); bits <= 4096; bits *= 2) {
    Precision w(bits);
    Interval xi = Interval::from_int(xx);
    Interval lnln = iv_ln(iv_ln(xi, w), w);
    Interval v = mul(sqrt(xi, w), iv_exp(neg(mul(bi, lnln, w)), w), w);
    if (v.hi() < Dyadic(1)) return 0;
    if (auto f = pinned_floor(v)) return clamp_modulus(*f);
  }
  throw CapacityError("could not pin floor(sqrt(x) (ln x)^-B)");
}

std::uint64_t eh_modulus(std::uint64_t x, double eps, Precision p) {
  if (!(eps > 0 && eps < 1)) throw DomainError("eh_sum needs 0 < eps < 1");
  if (x < 2) throw DomainError("eh_sum needs x >= 2");
  BigInt xx = big_u(x);
  Dyadic t = add(Dyadic(1), Dyadic::from_double(-eps), 2200, Round::Down);  // exact for doubles
  for (int bits = p.bits(); bits <= 4096; bits *= 2) {
    Precision w(bits);
    Interval v = iv_exp(mul(Interval::point(t), iv_ln(Interval::from_int(xx), w), w), w);
    if (auto f = pinned_floor(v)) return clamp_modulus(*f);
    // x^t may be an exact integer c: c^(2^k) = x^m for t = m / 2^k.
    BigInt c = v.hi().floor();
    if (t.exponent() < 0 && -t.exponent() <= 16 && t.mantissa() <= 4096) {
      unsigned long k = 1UL << (-t.exponent());
      BigInt lhs, rhs;
      mpz_pow_ui(lhs.get_mpz_t(), c.get_mpz_t(), k);
      mpz_pow_ui(rhs.get_mpz_t(), xx.get_mpz_t(), t.mantissa().get_ui());
      if (lhs == rhs) return clamp_modulus(c);
    }
  }
  throw CapacityError("could not pin floor(x^(1-eps))");
}

Interval level_sum(std::uint64_t x, std::uint64_t Q, const ChebyshevTable& table, Precision p,
                   unsigned workers) {
  if (Q == 0) return Interval::from_long(0);
  if (Q > kModulusCap)
    throw CapacityError("modulus bound " + std::to_string(Q) + " exceeds the desk-scale cap " +
                        std::to_string(kModulusCap));
  EStarEngine engine(x, table, p.plus(8));
  std::vector<Interval> parts(Q);
  std::atomic<std::uint64_t> next{1};
  auto work = [&] {
    for (std::uint64_t q; (q = next.fetch_add(1)) <= Q;) parts[q - 1] = engine.e_star(q);
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  Precision w = p.plus(16);
  Interval sum = Interval::from_long(0);
  for (const auto& e : parts) sum = add(sum, e, w);
  return round_to(sum, p);
}

namespace {

Interval level_ratio(std::uint64_t x, double A, const Interval& sum, Precision p) {
  Precision w = p.plus(16);
  Interval xi = Interval::from_int(big_u(x));
  Interval lnx = iv_ln(xi, w);
  Interval pw = iv_exp(mul(Interval::point(Dyadic::from_double(A)), iv_ln(lnx, w), w), w);
  return round_to(div(mul(sum, pw, w), xi, w), p);
}

}  // namespace

LevelSumReport bv_sum(std::uint64_t x, double A, double B, const ChebyshevTable& table,
                      Precision p, unsigned workers) {
  LevelSumReport r;
  r.x = x;
  r.regime = Regime::BV;
  r.A = A;
  r.B = B;
  r.Q = bv_modulus(x, B, p);
  r.sum = level_sum(x, r.Q, table, p, workers);
  r.ratio = level_ratio(x, A, r.sum, p);
  return r;
}

LevelSumReport eh_sum(std::uint64_t x, double eps, const ChebyshevTable& table, Precision p,
                      unsigned workers, double A) {
  LevelSumReport r;
  r.x = x;
  r.regime = Regime::EH;
  r.A = A;
  r.eps = eps;
  r.Q = eh_modulus(x, eps, p);
  r.sum = level_sum(x, r.Q, table, p, workers);
  r.ratio = level_ratio(x, A, r.sum, p);
  return r;
}

Interval fghm_threshold(std::uint64_t x, double A, Precision p) {
  if (x < 16) throw DomainError("fghm_threshold needs x >= 16 so that ln ln ln x > 0");
  if (!(A >= 1)) throw DomainError("fghm_threshold needs A >= 1");
  Interval xi = Interval::from_int(big_u(x));
  if (A == 1) return xi;
  Precision w = p.plus(16);
  Interval l2 = iv_ln(iv_ln(xi, w), w);
  Interval l3 = iv_ln(l2, w);
  Interval c = div(Interval::point(Dyadic::from_double(A - 1)), Interval::from_long(4), w);
  Interval e = neg(div(mul(c, square(l2, w), w), l3, w));
  return round_to(mul(xi, iv_exp(e, w), w), p);
}

std::uint64_t gpy_gap_count(std::uint64_t x, std::uint64_t bound, const ChebyshevTable& table) {
  if (x < 3) throw DomainError("gpy_gap_count needs x >= 3");
  if (x > table.limit()) throw RangeError("gpy_gap_count beyond sieve limit");
  const auto& primes = table.primes();
  std::uint64_t n = 0;
  for (std::size_t i = 1; i < primes.size() && primes[i] <= x; ++i)
    if (primes[i] - primes[i - 1] <= bound) ++n;
  return n;
}

namespace {

Interval schoenfeld_bound(std::uint64_t x, Precision w) {
  Interval xi = Interval::from_int(big_u(x));
  Interval num = mul(sqrt(xi, w), iv_ln(xi, w), w);
  return div(num, mul(Interval::from_long(8), pi_enclosure(w), w), w);
}

}  // namespace

Verdict schoenfeld_check(std::uint64_t x, const ChebyshevTable& table,
                         const PrecisionPolicy& policy) {
  if (x < 2657) throw DomainError("schoenfeld_check needs x >= 2657");
  if (x > table.limit()) throw RangeError("schoenfeld_check beyond sieve limit");
  std::uint64_t pix = table.count_primes(x);
  return certify_less(policy, [&](Precision p) {
    Precision w = p.plus(16);
    Interval lhs = abs(count_minus(pix, li(x, w), w));
    return std::make_pair(lhs, schoenfeld_bound(x, w));
  });
}

SchoenfeldSweep schoenfeld_sweep(std::uint64_t x_lo, std::uint64_t x_hi,
                                 const ChebyshevTable& table, const PrecisionPolicy& policy) {
  if (x_lo < 2657) throw DomainError("schoenfeld_sweep needs x >= 2657");
  if (x_hi < x_lo) throw DomainError("schoenfeld_sweep needs x_lo <= x_hi");
  if (x_hi > table.limit()) throw RangeError("schoenfeld_sweep beyond sieve limit");
  policy.validate();
  SchoenfeldSweep out;
  out.x_lo = x_lo;
  out.x_hi = x_hi;
  std::vector<std::uint64_t> ys{x_lo};
  const auto& primes = table.primes();
  auto it = std::upper_bound(primes.begin(), primes.end(), x_lo);
  for (; it != primes.end() && *it <= x_hi; ++it) {
    if (*it - 1 > ys.back()) ys.push_back(*it - 1);
    ys.push_back(*it);
  }
  if (ys.back() != x_hi) ys.push_back(x_hi);

  Precision w = Precision(policy.initial_bits).plus(16);
  LiSweep sweep(x_lo, w);
  for (std::uint64_t y : ys) {
    sweep.advance_to(y);
    Interval lhs = abs(count_minus(table.count_primes(y), sweep.value(), w));
    Outcome o = decide_less(lhs, schoenfeld_bound(y, w), w).outcome;
    if (o != Outcome::Holds) o = schoenfeld_check(y, table, policy).outcome;
    ++out.points;
    if (o == Outcome::Holds) {
      ++out.holds;
    } else {
      (o == Outcome::Fails ? out.fails : out.undecided)++;
      out.not_holding.push_back(y);
    }
  }
  return out;
}

std::string csv_row(const EhRecord& r) {
  std::ostringstream os;
  os << r.x << ',' << r.q << ',' << r.a << ',' << r.pi_qa << ','
     << decimal(r.li_over_phi.lo(), 12, Round::Down) << ','
     << decimal(r.li_over_phi.hi(), 12, Round::Up) << ',' << decimal(r.error.lo(), 12, Round::Down)
     << ',' << decimal(r.error.hi(), 12, Round::Up);
  return os.str();
}

std::string csv_row(const LevelSumReport& r) {
  std::ostringstream os;
  os << r.x << ',' << r.Q << ',' << regime_name(r.regime) << ',' << num(r.A) << ','
     << (r.B ? num(*r.B) : "") << ',' << (r.eps ? num(*r.eps) : "") << ','
     << decimal(r.sum.lo(), 12, Round::Down) << ',' << decimal(r.sum.hi(), 12, Round::Up);
  return os.str();
}

}  // namespace pi01
