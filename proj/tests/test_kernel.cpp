#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pi01/elementary.hpp"
#include "pi01/errors.hpp"
#include "pi01/harmonic.hpp"
#include "pi01/verdict.hpp"

using namespace pi01;

namespace {
Interval I(long a, long b) { return Interval(Dyadic(a), Dyadic(b)); }
Interval pt(long a) { return Interval::from_long(a); }
Dyadic pow2(int e) { return Dyadic(BigInt(1), e); }
}  // namespace

TEST_CASE("interval arithmetic on small cases") {
  Precision p(64);
  CHECK(add(pt(1), pt(2), p) == pt(3));
  CHECK(square(I(-2, 3), p) == I(0, 9));
  CHECK(square(I(-3, -2), p) == I(4, 9));
  CHECK(mul(I(-2, 3), I(-5, 1), p) == I(-15, 10));
  CHECK(sub(I(1, 2), I(0, 5), p) == I(-4, 2));
  CHECK(abs(I(-4, 1)) == I(0, 4));
  CHECK_THROWS_AS(div(pt(1), I(-1, 1), p), DomainError);
  CHECK_THROWS_AS(Precision(15), DomainError);

  Interval third = div(pt(1), pt(3), Precision(16));
  CHECK(third.contains(BigRational(1, 3)));
  CHECK(third.width() <= pow2(-14));
}

TEST_CASE("rational conversion") {
  CHECK(iv_from_rational(BigRational(1, 2), Precision(16)) == Interval::point(Dyadic(BigInt(1), -1)));
  CHECK(iv_from_rational(BigRational(0), Precision(16)) == pt(0));
  Interval t = iv_from_rational(BigRational(1, 3), Precision(32));
  CHECK(t.contains(BigRational(1, 3)));
  CHECK(t.width() <= pow2(-30));
}

TEST_CASE("directed rounding brackets exact results (seeded)") {
  std::mt19937_64 rng(0x5EED);
  for (int i = 0; i < 2000; ++i) {
    long an = static_cast<long>(rng() % 2000001) - 1000000, ad = static_cast<long>(rng() % 999) + 1;
    long bn = static_cast<long>(rng() % 2000001) - 1000000, bd = static_cast<long>(rng() % 999) + 1;
    int bits = 16 + static_cast<int>(rng() % 100);
    BigRational a(an, ad), b(bn, bd);
    a.canonicalize();
    b.canonicalize();
    Precision p(bits);
    Interval ia = iv_from_rational(a, p), ib = iv_from_rational(b, p);
    REQUIRE(add(ia, ib, p).contains(BigRational(a + b)));
    REQUIRE(sub(ia, ib, p).contains(BigRational(a - b)));
    REQUIRE(mul(ia, ib, p).contains(BigRational(a * b)));
    REQUIRE(square(ia, p).contains(BigRational(a * a)));
    if (sgn(b) != 0 && !ib.contains_zero()) REQUIRE(div(ia, ib, p).contains(BigRational(a / b)));
    Dyadic d = from_rational(a, bits, Round::Down), u = from_rational(a, bits, Round::Up);
    REQUIRE(d.compare(a) <= 0);
    REQUIRE(u.compare(a) >= 0);
  }
}

TEST_CASE("ln and exp") {
  CHECK(iv_ln(pt(1), Precision(64)).contains(Dyadic(0)));
  CHECK(oracle::contains(iv_ln(pt(2), Precision(64)), oracle::ln2(), -200));
  CHECK(iv_ln(pt(2), Precision(64)).width() <= pow2(-60));
  CHECK_THROWS_AS(iv_ln(I(0, 1), Precision(64)), DomainError);
  CHECK(iv_exp(pt(0), Precision(64)).contains(Dyadic(1)));

  mpf_class e = oracle::F(1), term = oracle::F(1);
  for (int k = 1; k < 300; ++k) {
    term /= k;
    e += term;
  }
  CHECK(oracle::contains(iv_exp(pt(1), Precision(128)), e, -200));
  CHECK_THROWS_AS(iv_exp(pt(1L << 50), Precision(64)), CapacityError);

  // ln(exp(x)) encloses x, across scales (seeded)
  std::mt19937_64 rng(0xE1);
  for (int i = 0; i < 200; ++i) {
    long v = static_cast<long>(rng() % 200001) - 100000;
    Interval x = Interval::point(Dyadic(BigInt(v), -10));
    REQUIRE(iv_ln(iv_exp(x, Precision(96)), Precision(96)).contains(x));
  }
  for (long n = 2; n < 3000; n += 37) {
    Interval l = iv_ln(pt(n), Precision(128));
    REQUIRE(oracle::contains(l, oracle::ln(oracle::F(static_cast<double>(n))), -200));
  }
}

TEST_CASE("stored constants against two independent series each") {
  mpf_class g1 = oracle::gamma_brent_mcmillan(), g2 = oracle::gamma_euler_maclaurin();
  mpf_class diff = abs(g1 - g2);
  mpf_class tol(1, oracle::kBits);
  mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), 170);
  REQUIRE(diff < tol);

  CHECK(gamma_enclosure(Precision(16)).contains(BigRational(577, 1000)) == false);
  CHECK(gamma_enclosure(Precision(16)).lo().compare(BigRational(577, 1000)) > 0);
  CHECK(gamma_enclosure(Precision(16)).hi().compare(BigRational(578, 1000)) < 0);
  Interval g64 = gamma_enclosure(Precision(64));
  CHECK(g64.lo().compare(BigRational(5772156, 10000000)) >= 0);
  CHECK(g64.hi().compare(BigRational(5772157, 10000000)) <= 0);
  for (int bits : {64, 96, 160, 1024, 4096}) {
    INFO("bits " << bits);
    CHECK(oracle::contains(gamma_enclosure(Precision(bits)), g1, -165));
    CHECK(oracle::contains(pi_enclosure(Precision(bits)), oracle::pi_machin(), -165));
  }
  CHECK(gamma_enclosure(Precision(160)).width() <= pow2(-155));
  CHECK_THROWS_AS(gamma_enclosure(Precision(stored_constant_cap_bits() + 1)), CapacityError);
}

TEST_CASE("harmonic direct") {
  CHECK(harmonic_direct(BigNat(1), Precision(64)).contains(Dyadic(1)));
  CHECK(harmonic_direct(BigNat(4), Precision(64)).contains(BigRational(25, 12)));
  BigRational h = 0;
  for (int k = 1; k <= 500; ++k) {
    h += BigRational(1, k);
    h.canonicalize();
    if (k % 50 == 0) REQUIRE(harmonic_direct(BigNat(k), Precision(96)).contains(h));
  }
  CHECK_THROWS_AS(harmonic_direct(BigNat(1000), Precision(64), 999), CapacityError);
}

TEST_CASE("harmonic asymptotic") {
  Precision p(96);
  auto asym = [&](long m) { return harmonic_asymptotic(iv_ln(pt(m), p), BigNat(m), p); };
  CHECK(asym(100).overlaps(harmonic_direct(BigNat(100), p)));
  BigRational h100 = 0;
  for (int k = 1; k <= 100; ++k) h100 += BigRational(1, k);
  h100.canonicalize();
  CHECK(asym(100).contains(h100));
  CHECK(asym(518400).overlaps(harmonic_direct(BigNat(518400), p)));
  auto ov = intersect(asym(1000000), harmonic_direct(BigNat(1000000), p));
  REQUIRE(ov);
  CHECK(ov->width() <= pow2(-40));
  CHECK_THROWS_AS(harmonic_asymptotic(iv_ln(pt(9), p), BigNat(9), p), DomainError);
}

TEST_CASE("verdicts") {
  Precision p(64);
  CHECK(decide_less(pt(1), pt(2), p).outcome == Outcome::Holds);
  CHECK(decide_less(pt(3), pt(2), p).outcome == Outcome::Fails);
  CHECK(decide_less(pt(2), pt(2), p).outcome == Outcome::Undecided);
  CHECK(decide_less(I(1, 3), pt(2), p).outcome == Outcome::Undecided);
  // escalation: sides only separate once precision reaches 200 bits
  PrecisionPolicy pol;
  int calls = 0;
  auto v = certify_less(pol, [&](Precision q) {
    ++calls;
    Interval blur(Dyadic(-1), Dyadic(1));
    if (q.bits() >= 200) blur = pt(0);
    return std::pair{add(pt(0), blur, q), add(pt(1), blur, q)};
  });
  CHECK(v.outcome == Outcome::Holds);
  CHECK(v.precision_used == 384);
  CHECK(calls == 3);
  pol.max_bits = 128;
  CHECK(certify_less(pol, [](Precision) { return std::pair{I(0, 2), I(1, 3)}; }).outcome ==
        Outcome::Undecided);
  CHECK(parse_outcome(outcome_name(Outcome::Fails)) == Outcome::Fails);
}

TEST_CASE("precision policy") {
  PrecisionPolicy pol;
  CHECK(pol.schedule() == std::vector<int>{96, 192, 384, 768, 1536, 3072, 4096});
  pol.growth_num = 1;
  CHECK_THROWS_AS(pol.validate(), DomainError);
}
