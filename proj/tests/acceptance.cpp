// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pi01/checkpoint.hpp"
#include "pi01/dioph.hpp"
#include "pi01/dmr.hpp"
#include "pi01/eh.hpp"
#include "pi01/harmonic.hpp"
#include "pi01/matiyasevich.hpp"

using namespace pi01;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const ChebyshevTable& table() {
  static ChebyshevTable t = ChebyshevTable::build(1000000);
  return t;
}

struct Result {
  bool pass = false;
  std::string detail;
};

Result c1_oracle_equivalence() {
  auto t0 = Clock::now();
  PrecisionPolicy pol;
  int agree = 0, total = 0;
  std::ostringstream bad;
  for (std::uint64_t n = 1; n <= 8; ++n)
    for (BoundVariant v : kAllVariants) {
      ++total;
      Outcome a = check_dmr(n, v, pol, table()).outcome;
      Outcome b = dmr_oracle(n, v, pol, table()).outcome;
      if (a == b) ++agree;
      else bad << " n=" << n << "/" << variant_name(v);
    }
  double secs = since(t0);
  std::ostringstream os;
  os << agree << "/" << total << " verdicts agree" << bad.str() << ", " << secs << " s (limit 120)";
  return {agree == total && secs <= 120, os.str()};
}

Result c2_scan() {
  ScanOptions opt;
  opt.n_lo = 1;
  opt.n_hi = 5000;
  opt.policy.max_bits = 4096;
  opt.workers = 1;
  auto t0 = Clock::now();
  ScanReport r = scan_dmr(opt, table());
  double secs = since(t0);
  std::ostringstream os;
  os << r.holds << " holds, " << r.fails << " fails, " << r.undecided << " undecided, " << secs
     << " s (limit 600)";
  return {r.holds == 5000 && r.fails == 0 && r.undecided == 0 && secs <= 600, os.str()};
}

Result c3_ordering() {
  Precision p(96);
  std::uint64_t violations = 0;
  for (std::uint64_t n = 2; n <= 5000; ++n) {
    Interval g = dmr_rhs(n, BoundVariant::ImprovedGamma, p);
    Interval r = dmr_rhs(n, BoundVariant::Rational25, p);
    Interval c = dmr_rhs(n, BoundVariant::Classic36, p);
    if (!g.certainly_less(r) || !r.certainly_less(c)) ++violations;
  }
  return {violations == 0, std::to_string(violations) + " violations over n = 2..5000"};
}

Result c4_psi_gap() {
  auto t0 = Clock::now();
  PsiGapScan s = psi_gap_scan(600, 1000000, PrecisionPolicy{}, table());
  double secs = since(t0);
  std::ostringstream os;
  os << s.holds << " holds, " << s.fails << " fails, " << s.undecided << " undecided, " << secs
     << " s (limit 300)";
  return {s.holds == 1000000 - 600 + 1 && secs <= 300, os.str()};
}

Result c5_explog() {
  std::mt19937_64 rng(0xD10F);
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    unsigned long a = rng() % 1000001;
    BigNat b = explog_find_b(a);
    Interval l = iv_ln(Interval::from_long(static_cast<long>(a) + 1), Precision(96));
    bool within = l.lo().compare(BigRational(b - 2)) > 0 && l.hi().compare(BigRational(b + 2)) < 0;
    if (within && explog_holds(a, b).holds) ++ok;
  }
  // L_b(x) = (1 + 1/x)^(xb) is increasing in x and L(x+1)/L(x) < 4
  std::uint64_t mono_bad = 0, ratio_bad = 0, pairs = 0;
  for (unsigned long b = 0; b <= 30; ++b) {
    BigRational prev = explog_L(b, b + 2);
    for (unsigned long x = b + 3; x <= b + 50; ++x) {
      BigRational cur = explog_L(b, x);
      mpz_class num, den;
      mpz_ui_pow_ui(num.get_mpz_t(), x + 1, x * b);
      mpz_ui_pow_ui(den.get_mpz_t(), x, x * b);
      mpq_class direct(num, den);
      direct.canonicalize();
      if (cur != direct) ++mono_bad;
      if (b == 0 ? cur != prev : !(cur > prev)) ++mono_bad;
      if (!(cur < 4 * prev)) ++ratio_bad;
      prev = cur;
      ++pairs;
    }
  }
  std::ostringstream os;
  os << ok << "/1000 a with |b - ln(a+1)| < 2 certified; " << pairs << " steps, " << mono_bad
     << " monotonicity and " << ratio_bad << " ratio failures";
  return {ok == 1000 && mono_bad == 0 && ratio_bad == 0, os.str()};
}

Result c6_counterexample() {
  auto r = counterexample_search(600, 5000, PrecisionPolicy{}, table());
  std::ostringstream os;
  os << (r.found ? "counterexample returned" : "none found") << ", " << r.scanned << " scanned, "
     << r.s2_violations.size() << " n without certified |l - psi(n)| < 2";
  return {!r.found && r.scanned == 4401 && r.s2_violations.empty(), os.str()};
}

Result c7_pell_theta() {
  std::uint64_t checked = 0, mismatches = 0;
  for (std::int64_t a = 2; a <= 10; ++a) {
    std::uint64_t d = static_cast<std::uint64_t>(a * a - 1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> brute;
    for (std::uint64_t y = 0; y <= 1000000; ++y) {
      std::uint64_t v = d * y * y + 1;
      auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
      while (r * r > v) --r;
      while ((r + 1) * (r + 1) <= v) ++r;
      if (r * r == v) brute.emplace_back(r, y);
    }
    auto seq = pell_prefix(a, brute.size() + 1);
    for (std::size_t i = 0; i < brute.size(); ++i) {
      ++checked;
      if (seq[i].chi != brute[i].first || seq[i].psi != brute[i].second) ++mismatches;
    }
    if (seq[brute.size()].psi <= 1000000) ++mismatches;  // nothing skipped
  }
  std::string theta = decimal_string(theta1_partial(4, table()));
  bool theta_ok = theta1_partial(4, table()) == BigRational(203000500000007, mpz_class("10000000000000000"));
  int primes_ok = 0;
  for (int n = 1; n <= 5; ++n)
    if (prime_from_theta1(n, 6, table()) == table().primes()[n - 1]) ++primes_ok;
  std::ostringstream os;
  os << checked << " Pell solutions, " << mismatches << " mismatches; theta1(4) = " << theta
     << "; p1..p5 recovered " << primes_ok << "/5";
  return {mismatches == 0 && theta_ok && primes_ok == 5, os.str()};
}

Result c8_harmonic() {
  Precision p(96);
  int overlaps = 0;
  Dyadic widest;
  for (long m = 10; m <= 1000000; m *= 10) {
    Interval d = harmonic_direct(BigNat(m), p);
    Interval a = harmonic_asymptotic(iv_ln(Interval::from_long(m), p), BigNat(m), p);
    auto ov = intersect(d, a);
    if (!ov) continue;
    if (ov->width() > widest) widest = ov->width();
    if (ov->width() <= Dyadic(BigInt(1), -40)) ++overlaps;
  }
  // H_n - 1 < ln n < H_n, accumulating H_n by interval additions
  Precision w(128);
  Interval h = Interval::from_long(1);
  std::uint64_t lemma_bad = 0;
  for (long n = 2; n <= 10000; ++n) {
    h = add(h, div(Interval::from_long(1), Interval::from_long(n), w), w);
    Interval l = iv_ln(Interval::from_long(n), w);
    if (!sub(h, Interval::from_long(1), w).certainly_less(l) || !l.certainly_less(h)) ++lemma_bad;
  }
  bool const_ok =
      add(gamma_enclosure(Precision(64)), Interval::from_long(4), Precision(64)).certainly_less(Interval::from_long(5));
  std::ostringstream os;
  os << overlaps << "/6 overlaps within 2^-40 (widest " << widest.to_double() << "); "
     << lemma_bad << " harmonic-bound failures for n = 2..10^4; 4 + gamma < 5 "
     << (const_ok ? "certified" : "not certified");
  return {overlaps == 6 && lemma_bad == 0 && const_ok, os.str()};
}

Result c9_eh() {
  const auto& T = table();
  PrecisionPolicy pol;
  SchoenfeldSweep s = schoenfeld_sweep(2657, 1000000, T, pol);
  Precision p(96);
  int partition_ok = 0;
  for (std::uint64_t x : {1000, 10000})
    for (std::uint64_t q : {3, 4, 5, 12}) {
      std::uint64_t total = 0, ramified = 0;
      for (std::uint64_t a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1) total += error_term(x, q, a % q, T, p).pi_qa;
      for (auto pr : T.primes()) {
        if (pr > q) break;
        if (q % pr == 0) ++ramified;
      }
      if (total + ramified == oracle::primes_upto(x).size()) ++partition_ok;
    }
  std::uint64_t gaps = gpy_gap_count(100, 16, T);
  // B = 0 and eps = 1/2 both give Q = floor(sqrt x)
  LevelSumReport bv = bv_sum(100000, 1, 0, T, p, 2);
  LevelSumReport eh = eh_sum(100000, 0.5, T, p, 2);
  bool same = bv.Q == eh.Q && bv.sum == eh.sum && bv.Q > 0;
  std::ostringstream os;
  os << "Schoenfeld " << s.holds << "/" << s.points << " points hold; partition " << partition_ok
     << "/8; gaps(100, 16) = " << gaps << "; bv/eh at Q = " << bv.Q << (same ? " coincide" : " differ");
  return {s.points > 0 && s.holds == s.points && partition_ok == 8 && gaps == 24 && same, os.str()};
}

Result c10_determinism() {
  ScanOptions opt;
  opt.n_lo = 1;
  opt.n_hi = 2000;
  opt.workers = 1;
  ScanReport serial = scan_dmr(opt, table());
  opt.workers = 8;
  ScanReport parallel = scan_dmr(opt, table());
  bool same_records = serial.records == parallel.records;

  auto path = std::filesystem::temp_directory_path() / "pi01_acceptance_resume.jsonl";
  std::filesystem::remove(path);
  opt.checkpoint = path;
  opt.stop_after = 1000;
  ScanReport half = scan_dmr(opt, table());
  opt.stop_after.reset();
  ScanReport resumed = scan_dmr(opt, table());
  std::filesystem::remove(path);
  bool same_report = resumed.to_json() == serial.to_json();
  std::ostringstream os;
  os << "serial vs 8 workers " << (same_records ? "identical" : "different") << "; killed at "
     << half.records.size() << "/2000, resumed " << resumed.resumed << ", final report "
     << (same_report ? "byte-identical" : "different");
  return {same_records && same_report && half.records.size() == 1000, os.str()};
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"1 dmr oracle equivalence n=1..8", c1_oracle_equivalence},
      {"2 dmr scan 1..5000 classic36", c2_scan},
      {"3 bound-variant ordering n=2..5000", c3_ordering},
      {"4 psi gap 600..10^6", c4_psi_gap},
      {"5 explog suite", c5_explog},
      {"6 counterexample search 600..5000", c6_counterexample},
      {"7 pell and theta1", c7_pell_theta},
      {"8 harmonic kernel", c8_harmonic},
      {"9 eh lab", c9_eh},
      {"10 determinism and resume", c10_determinism},
  };
  int failures = 0;
  for (auto& [name, fn] : criteria) {
    Result r;
    auto t0 = Clock::now();
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << r.detail << " ["
              << since(t0) << " s]" << std::endl;
    failures += !r.pass;
  }
  return failures;
}
