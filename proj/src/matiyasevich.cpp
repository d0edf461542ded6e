#include "pi01/matiyasevich.hpp"

#include <json.hpp>

#include "pi01/elementary.hpp"
#include "pi01/errors.hpp"

namespace pi01 {

namespace {

// Exact L_b(x) only while (x+1)^(xb) stays within this many bits.
constexpr std::size_t kExplogExactBits = 32768;
constexpr int kExplogMaxBits = 1 << 20;

std::pair<Interval, Interval> gap_sides(std::uint64_t n, const ChebyshevTable& table,
                                        Precision p) {
  Precision w = p.plus(16);
  Interval nn = Interval::from_int(big_u(n));
  Interval lhs = abs(sub(psi(n, table, w), nn, w));
  Interval ln = iv_ln(nn, w);
  Interval rhs = mul(sqrt(nn, w), square(ln, w), w);
  return {lhs, rhs};
}

BigNat lcm_1_to(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  BigNat out = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= n; q += p) composite[q] = true;
    std::uint64_t pk = p;
    while (pk <= n / p) pk *= p;
    mpz_mul_ui(out.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(pk));
  }
  return out;
}

std::uint64_t to_u64(const BigNat& v, const char* what) {
  if (sgn(v) < 0) throw DomainError(std::string(what) + " must be nonnegative");
  if (!v.fits_ulong_p()) throw RangeError(std::string(what) + " too large");
  return v.get_ui();
}

// Certifies |v - target| < 2 for an integer v.
bool within_two(const BigNat& v, const PrecisionPolicy& policy,
                const std::function<Interval(Precision)>& target) {
  Verdict r = certify_less(policy, [&](Precision p) {
    Interval d = abs(sub(Interval::from_int(v), target(p), p));
    return std::make_pair(d, Interval::from_long(2));
  });
  return r.outcome == Outcome::Holds;
}

}  // namespace

Verdict psi_gap_check(std::uint64_t n, const PrecisionPolicy& policy, const ChebyshevTable& table) {
  if (n < kPsiGapMinN) throw DomainError("psi_gap_check needs n >= 600");
  return certify_less(policy, [&](Precision p) { return gap_sides(n, table, p); });
}

PsiGapScan psi_gap_scan(std::uint64_t n_lo, std::uint64_t n_hi, const PrecisionPolicy& policy,
                        const ChebyshevTable& table) {
  if (n_lo < kPsiGapMinN) throw DomainError("psi_gap_scan needs n >= 600");
  if (n_lo > n_hi) throw DomainError("psi_gap_scan needs n_lo <= n_hi");
  if (n_hi > table.limit()) throw RangeError("psi_gap_scan beyond sieve limit");
  policy.validate();
  PsiGapScan out;
  out.n_lo = n_lo;
  out.n_hi = n_hi;
  Precision p(policy.initial_bits);
  Precision w = p.plus(16);
  PsiSweep sweep(table, n_lo, w);
  for (std::uint64_t n = n_lo;; ++n) {
    Interval nn = Interval::from_int(big_u(n));
    Interval lhs = abs(sub(sweep.value(), nn, w));
    Interval ln = table.log_of(n, sweep.logs()).to_interval();
    Interval rhs = mul(sqrt(nn, w), square(ln, w), w);
    Outcome o = decide_less(lhs, rhs, w).outcome;
    if (o != Outcome::Holds) o = psi_gap_check(n, policy, table).outcome;
    switch (o) {
      case Outcome::Holds:
        ++out.holds;
        break;
      case Outcome::Fails:
        ++out.fails;
        out.not_holding.push_back(n);
        break;
      case Outcome::Undecided:
        ++out.undecided;
        out.not_holding.push_back(n);
        break;
    }
    if (n == n_hi) break;
    sweep.advance();
  }
  return out;
}

std::string refutation_name(ExplogRefutation r) {
  return r == ExplogRefutation::MinTooLarge ? "min_too_large" : "limit_too_small";
}

BigRational explog_L(const BigNat& b, const BigNat& x) {
  if (sgn(x) <= 0) throw DomainError("explog_L needs x >= 1");
  BigNat e = x * b;
  if (!e.fits_ulong_p()) throw CapacityError("explog_L exponent too large for exact evaluation");
  BigInt num, den;
  BigNat x1 = x + 1;
  mpz_pow_ui(num.get_mpz_t(), x1.get_mpz_t(), e.get_ui());
  mpz_pow_ui(den.get_mpz_t(), x.get_mpz_t(), e.get_ui());
  return make_rational(num, den);
}

int explog_compare(const BigNat& b, const BigNat& x, unsigned k, const BigNat& c) {
  if (sgn(b) == 0) {
    int s = cmp(BigInt(k), c);
    return s < 0 ? -1 : (s > 0 ? 1 : 0);
  }
  BigNat e = x * b;
  if (e.fits_ulong_p() && e.get_ui() <= kExplogExactBits &&
      e.get_ui() * bit_length(x + 1) <= kExplogExactBits) {
    BigRational l = explog_L(b, x) * k;
    int s = cmp(l, BigRational(c));
    return s < 0 ? -1 : (s > 0 ? 1 : 0);
  }
  // k L_b(x) = c would force x^(xb) | k, impossible for x >= 3; so the log
  // comparison below always separates eventually.
  Interval xi = Interval::from_int(x);
  Interval x1 = Interval::from_int(x + 1);
  Interval ei = Interval::from_int(e);
  Interval ci = Interval::from_int(c);
  for (int bits = 128 + static_cast<int>(bit_length(e)); bits <= kExplogMaxBits; bits *= 2) {
    Precision p(bits);
    Interval ln_l = mul(ei, sub(iv_ln(x1, p), iv_ln(xi, p), p), p);
    if (k != 1) ln_l = add(ln_l, iv_ln(Interval::from_long(k), p), p);
    Interval ln_c = iv_ln(ci, p);
    if (ln_l.certainly_less(ln_c)) return -1;
    if (ln_l.certainly_greater(ln_c)) return 1;
  }
  throw CapacityError("explog comparison not separated within precision cap");
}

ExplogResult explog_holds(const BigNat& a, const BigNat& b) {
  if (sgn(a) < 0 || sgn(b) < 0) throw DomainError("explog arguments must be nonnegative");
  ExplogResult r;
  const BigNat c = a + 1;
  const BigNat x0 = b + 2;
  if (explog_compare(b, x0, 1, c) > 0) {
    r.refutation = ExplogRefutation::MinTooLarge;
    return r;
  }
  // a + 1 < 4 e^b; never an equality since e^b is irrational for b >= 1.
  bool below_limit;
  if (sgn(b) == 0) {
    below_limit = c < 4;
  } else {
    below_limit = false;
    Interval bi = Interval::from_int(b);
    Interval ci = Interval::from_int(c);
    for (int bits = 96 + static_cast<int>(bit_length(b)); bits <= kExplogMaxBits; bits *= 2) {
      Precision p(bits);
      Interval lim = add(bi, iv_ln(Interval::from_long(4), p), p);
      Interval ln_c = iv_ln(ci, p);
      if (ln_c.certainly_less(lim)) {
        below_limit = true;
        break;
      }
      if (ln_c.certainly_greater(lim)) break;
    }
  }
  if (!below_limit) {
    r.refutation = ExplogRefutation::LimitTooSmall;
    return r;
  }
  // First x >= b+2 with 4 L_b(x) > a+1. L_b is nondecreasing with step
  // ratio below 4, so that x also keeps L_b(x) <= a+1.
  auto beyond = [&](const BigNat& x) { return explog_compare(b, x, 4, c) > 0; };
  BigNat lo = x0, hi = x0;
  if (!beyond(x0)) {
    BigNat step = 1;
    while (true) {
      lo = hi;
      hi = x0 + step;
      if (beyond(hi)) break;
      step *= 2;
    }
    // beyond(lo) false, beyond(hi) true
    while (hi - lo > 1) {
      BigNat mid = (lo + hi) / 2;
      if (beyond(mid))
        hi = mid;
      else
        lo = mid;
    }
  }
  r.holds = true;
  r.witness_x = hi;
  return r;
}

BigNat explog_find_b(const BigNat& a) {
  if (sgn(a) < 0) throw DomainError("explog argument must be nonnegative");
  // Every b < ln((a+1)/4) is refuted by the limit test, so start just at or
  // below that value rather than at 0.
  Precision p(64 + static_cast<int>(bit_length(big_u(bit_length(a)))));
  Interval l = sub(iv_ln(Interval::from_int(a + 1), p), iv_ln(Interval::from_long(4), p), p);
  BigNat b = l.lo().sign() > 0 ? l.lo().ceil() : BigNat(0);
  while (!explog_holds(a, b).holds) ++b;
  return b;
}

CommonMultiple common_multiple_check(const BigNat& m, std::uint64_t n) {
  if (n < 1) throw DomainError("common_multiple_check needs n >= 1");
  if (sgn(m) < 0) throw DomainError("m must be nonnegative");
  CommonMultiple r;
  r.is_common = true;
  for (std::uint64_t y = 0; y < n && r.is_common; ++y)
    r.is_common = mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(y + 1)) != 0;
  r.is_least = r.is_common && sgn(m) > 0 && m == lcm_1_to(n);
  return r;
}

std::string MatReport::conditions_json() const {
  nlohmann::ordered_json j;
  j["m1"] = m1;
  j["m2_neg"] = outcome_name(m2_neg);
  j["m3"] = m3;
  j["m4_bounded"] = m4_bounded;
  j["m4_explog"] = m4_explog;
  j["m5"] = m5;
  j["m6"] = m6;
  j["all"] = all();
  return j.dump();
}

MatReport mat_conditions_check(const MatSystem& sys, const PrecisionPolicy& policy,
                               const ChebyshevTable& table, M6Form m6) {
  if (sgn(sys.m) == 0) throw DomainError("mat_conditions_check needs m > 0");
  if (sgn(sys.k) < 0 || sgn(sys.l) < 0 || sgn(sys.m) < 0 || sgn(sys.n) < 0)
    throw DomainError("system entries must be nonnegative");
  const std::uint64_t n = to_u64(sys.n, "n");
  MatReport r;
  r.m1 = n >= kPsiGapMinN;
  if (n >= 1) {
    Outcome o = certify_less(policy, [&](Precision p) { return gap_sides(n, table, p); }).outcome;
    r.m2_neg = o == Outcome::Holds ? Outcome::Fails
                                   : (o == Outcome::Fails ? Outcome::Holds : Outcome::Undecided);
  }
  if (n == 0) {
    r.m3 = true;
    r.m4_bounded = sys.m == 1;
  } else {
    CommonMultiple cm = common_multiple_check(sys.m, n);
    r.m3 = cm.is_common;
    r.m4_bounded = cm.is_least;
  }
  r.m4_explog = explog_holds(sys.m - 1, sys.l).holds;
  r.m5 = n >= 1 && explog_holds(sys.n - 1, sys.k).holds;
  BigInt d = sys.l - sys.n;
  BigInt k4 = sys.k * sys.k * sys.k * sys.k;
  BigInt rhs = 4 * sys.n * k4;
  if (m6 == M6Form::Printed) rhs *= sys.n;
  r.m6 = d * d > rhs;
  return r;
}

std::string certificate_json(const MatSystem& sys, const MatReport& rep) {
  auto num = [](const BigNat& v) -> nlohmann::ordered_json {
    if (v.fits_ulong_p()) return v.get_ui();
    return v.get_str();
  };
  nlohmann::ordered_json j;
  j["k"] = num(sys.k);
  j["l"] = num(sys.l);
  j["m"] = sys.m.get_str();
  j["n"] = num(sys.n);
  j["conditions"] = nlohmann::ordered_json::parse(rep.conditions_json());
  return j.dump();
}

CounterexampleReport counterexample_search(std::uint64_t n_lo, std::uint64_t n_hi,
                                           const PrecisionPolicy& policy,
                                           const ChebyshevTable& table, M6Form m6) {
  if (n_lo < kPsiGapMinN) throw DomainError("counterexample_search needs n_lo >= 600");
  if (n_lo > n_hi) throw DomainError("counterexample_search needs n_lo <= n_hi");
  if (n_hi > table.limit()) throw RangeError("counterexample_search beyond sieve limit");
  policy.validate();
  CounterexampleReport out;
  BigNat m = lcm_upto(n_lo, table);
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    if (n > n_lo && table.prime_power_exponent(n) > 0)
      mpz_mul_ui(m.get_mpz_t(), m.get_mpz_t(), table.eta(n));
    MatSystem sys{explog_find_b(big_u(n - 1)), explog_find_b(m - 1), m, big_u(n)};
    ++out.scanned;
    if (!within_two(sys.l, policy, [&](Precision p) { return psi(n, table, p.plus(8)); }))
      out.s2_violations.push_back(n);
    if (!within_two(sys.k, policy,
                    [&](Precision p) { return iv_ln(Interval::from_int(big_u(n)), p.plus(8)); }))
      out.s3_violations.push_back(n);
    MatReport rep = mat_conditions_check(sys, policy, table, m6);
    if (rep.all()) {
      out.found = sys;
      out.found_report = rep;
      break;
    }
  }
  return out;
}

}  // namespace pi01
