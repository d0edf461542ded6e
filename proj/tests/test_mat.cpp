#include <doctest.h>

#include <json.hpp>
#include <random>

#include "oracles.hpp"
#include "pi01/errors.hpp"
#include "pi01/matiyasevich.hpp"

using namespace pi01;

namespace {
const ChebyshevTable& table() {
  static ChebyshevTable t = ChebyshevTable::build(12000);
  return t;
}
// (1 + 1/x)^(x b) computed directly
mpq_class L(unsigned long b, unsigned long x) {
  mpz_class num, den;
  mpz_ui_pow_ui(num.get_mpz_t(), x + 1, x * b);
  mpz_ui_pow_ui(den.get_mpz_t(), x, x * b);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}
// explog(a, b) by brute force over x in (b+1, x_max]
bool explog_brute(unsigned long a, unsigned long b, unsigned long x_max) {
  for (unsigned long x = b + 2; x <= x_max; ++x) {
    mpq_class l = L(b, x);
    if (l <= a + 1 && a + 1 < 4 * l) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("psi gap") {
  const auto& T = table();
  PrecisionPolicy pol;
  CHECK(psi_gap_check(600, pol, T).outcome == Outcome::Holds);
  CHECK(psi_gap_check(1000, pol, T).outcome == Outcome::Holds);
  CHECK_THROWS_AS(psi_gap_check(599, pol, T), DomainError);
  PsiGapScan s = psi_gap_scan(600, 12000, pol, T);
  CHECK(s.holds == 11401);
  CHECK(s.not_holding.empty());

  // the unsettled path: re-run at tiny precision so the incremental sweep is
  // too coarse near the start and the fallback has to decide
  PrecisionPolicy tight;
  tight.initial_bits = 16;
  CHECK(psi_gap_scan(600, 700, tight, T).holds == 101);
}

TEST_CASE("explog worked cases") {
  auto r = explog_holds(0, 0);
  CHECK(r.holds);
  CHECK(*r.witness_x == 2);
  r = explog_holds(3, 0);
  CHECK_FALSE(r.holds);
  CHECK(*r.refutation == ExplogRefutation::LimitTooSmall);
  r = explog_holds(1, 1);
  CHECK_FALSE(r.holds);
  CHECK(*r.refutation == ExplogRefutation::MinTooLarge);
  r = explog_holds(7, 2);
  CHECK(r.holds);
  CHECK(*r.witness_x == 4);
  CHECK(explog_find_b(0) == 0);
  CHECK(explog_find_b(1) == 0);
  CHECK(explog_L(1, 3) == BigRational(64, 27));
}

TEST_CASE("explog against brute force over small a, b") {
  // For these sizes a witness, if any, lies well inside x <= 200: L_b(x)
  // tends to e^b from below, and the brute force only has to find a single
  // x with L <= a+1 < 4L.
  for (unsigned long a = 0; a <= 60; ++a)
    for (unsigned long b = 0; b <= 4; ++b) {
      INFO("a=" << a << " b=" << b);
      auto r = explog_holds(a, b);
      REQUIRE(r.holds == explog_brute(a, b, 200));
      if (r.holds) {
        mpq_class l = L(b, r.witness_x->get_ui());
        REQUIRE(l <= a + 1);
        REQUIRE(a + 1 < 4 * l);
        // the witness is the first one
        for (unsigned long x = b + 2; x < r.witness_x->get_ui(); ++x) REQUIRE_FALSE(4 * L(b, x) > a + 1);
      }
    }
}

TEST_CASE("explog_find_b is the least b, and within 2 of ln(a+1)") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    unsigned long a = rng() % 100000;
    BigNat b = explog_find_b(a);
    REQUIRE(explog_holds(a, b).holds);
    for (unsigned long c = 0; c < b.get_ui(); ++c) REQUIRE_FALSE(explog_holds(a, c).holds);
    Interval l = iv_ln(Interval::from_long(static_cast<long>(a) + 1), Precision(64));
    REQUIRE(l.lo().compare(BigRational(b - 2)) > 0);
    REQUIRE(l.hi().compare(BigRational(b + 2)) < 0);
  }
  // large a goes through the log comparison path
  BigNat big = oracle::lcm_1_to(3000) - 1;
  BigNat b = explog_find_b(big);
  Interval l = iv_ln(Interval::from_int(big + 1), Precision(128));
  CHECK(l.lo().compare(BigRational(b - 2)) > 0);
  CHECK(l.hi().compare(BigRational(b + 2)) < 0);
  CHECK(explog_holds(big, b).holds);
}

TEST_CASE("explog_compare") {
  CHECK(explog_compare(2, 4, 1, 8) < 0);   // 390625/65536 < 8
  CHECK(explog_compare(2, 4, 4, 8) > 0);
  CHECK(explog_compare(1, 3, 27, 64) == 0);
  // exactness boundary against direct rationals
  for (unsigned long b : {1, 5, 17})
    for (unsigned long x : {b + 2, b + 9, b + 40}) {
      mpq_class l = L(b, x);
      mpz_class c = l.get_num() / l.get_den();
      REQUIRE(explog_compare(b, x, 1, c) > 0);
      REQUIRE(explog_compare(b, x, 1, c + 1) < 0);
    }
}

TEST_CASE("common multiples") {
  auto r = common_multiple_check(60, 6);
  CHECK(r.is_common);
  CHECK(r.is_least);
  r = common_multiple_check(120, 6);
  CHECK(r.is_common);
  CHECK_FALSE(r.is_least);
  r = common_multiple_check(0, 3);
  CHECK(r.is_common);
  CHECK_FALSE(r.is_least);
  r = common_multiple_check(61, 6);
  CHECK_FALSE(r.is_common);
  CHECK_THROWS_AS(common_multiple_check(60, 0), DomainError);
}

TEST_CASE("conditions at n = 600") {
  const auto& T = table();
  PrecisionPolicy pol;
  MatSystem s;
  s.n = 600;
  s.m = oracle::lcm_1_to(600);
  s.k = explog_find_b(599);
  s.l = explog_find_b(s.m - 1);
  MatReport r = mat_conditions_check(s, pol, T);
  CHECK(r.m1);
  CHECK(r.m3);
  CHECK(r.m4_bounded);
  CHECK(r.m4_explog);
  CHECK(r.m5);
  CHECK(r.m2_neg == Outcome::Fails);
  CHECK_FALSE(r.all());
  auto j = nlohmann::json::parse(certificate_json(s, r));
  CHECK(j["n"] == 600);
  CHECK(j["m"].is_string());
  CHECK(j["conditions"]["m1"] == true);

  s.n = 599;
  s.m = oracle::lcm_1_to(599);
  CHECK_FALSE(mat_conditions_check(s, pol, T).m1);

  s.n = 600;
  s.l = 600;
  CHECK_FALSE(mat_conditions_check(s, pol, T).m6);
  s.m = 0;
  CHECK_THROWS_AS(mat_conditions_check(s, pol, T), DomainError);
}

TEST_CASE("counterexample search over a short range") {
  const auto& T = table();
  auto r = counterexample_search(600, 1200, PrecisionPolicy{}, T);
  CHECK_FALSE(r.found);
  CHECK(r.scanned == 601);
  CHECK(r.s2_violations.empty());
  CHECK(r.s3_violations.empty());
}
