#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "pi01/errors.hpp"
#include "pi01/sieve.hpp"

using namespace pi01;

namespace {
const ChebyshevTable& table() {
  static ChebyshevTable t = ChebyshevTable::build(20000);
  return t;
}
Interval ln_of(const mpz_class& v) {
  return iv_ln(Interval::from_int(v), Precision(static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 2)) + 128));
}
}  // namespace

TEST_CASE("eta and prime powers against trial division") {
  const auto& T = table();
  for (std::uint64_t j = 1; j <= 5000; ++j) {
    std::uint64_t base = 0, m = j;
    unsigned k = 0;
    for (std::uint64_t d = 2; d <= m; ++d)
      if (m % d == 0) {
        base = d;
        while (m % d == 0) m /= d, ++k;
        break;
      }
    bool pp = base && m == 1;
    REQUIRE(T.eta(j) == (pp ? base : 1));
    REQUIRE(T.prime_power_exponent(j) == (pp ? k : 0));
    REQUIRE(T.is_prime(j) == oracle::is_prime(j));
  }
  CHECK(T.count_primes(100) == 25);
  CHECK(T.primes().size() == oracle::primes_upto(20000).size());
  CHECK_THROWS_AS(T.eta(20001), RangeError);
  CHECK_THROWS_AS(ChebyshevTable::build(1000, 999), CapacityError);
}

TEST_CASE("psi, psi1 and delta against exact lcm products") {
  const auto& T = table();
  Precision p(96);
  CHECK(psi(1, T, p).contains(Dyadic(0)));
  CHECK(psi(10, T, p).contains(ln_of(2520)));
  CHECK(psi(6, T, p).contains(ln_of(60)));
  CHECK(psi1(1, T, p).contains(Dyadic(0)));
  CHECK(psi1(3, T, p).contains(ln_of(2)));
  CHECK(psi1(7, T, p).contains(ln_of(518400)));
  CHECK(delta_log(2, T, p).contains(Dyadic(0)));
  CHECK(delta_log(7, T, p).contains(ln_of(518400)));

  CHECK(lcm_upto(1, T) == 1);
  CHECK(lcm_upto(6, T) == 60);
  CHECK(lcm_upto(10, T) == 2520);
  mpz_class delta = 1;
  for (std::uint64_t n = 1; n <= 12; ++n) {
    REQUIRE(delta_exact(n, T) == delta);
    REQUIRE(psi1(n, T, p).contains(ln_of(delta)));
    delta *= oracle::lcm_1_to(n);
  }
  CHECK_THROWS_AS(delta_exact(13, T), CapacityError);

  for (std::uint64_t n : {50, 97, 500, 1000, 4096}) {
    mpz_class l = oracle::lcm_1_to(n);
    REQUIRE(lcm_upto(n, T) == l);
    Interval s = psi(n, T, p);
    REQUIRE(s.contains(ln_of(l)));
    REQUIRE(s.width() <= Dyadic(BigInt(1), -80));
  }
  CHECK_THROWS_AS(psi(20001, T, p), RangeError);
}

TEST_CASE("incremental psi agrees with direct psi") {
  const auto& T = table();
  Precision p(96);
  PsiSweep sweep(T, 600, p);
  for (std::uint64_t n = 600; n <= 2000; ++n) {
    REQUIRE(sweep.n() == n);
    REQUIRE(sweep.value().overlaps(psi(n, T, p)));
    sweep.advance();
  }
}

TEST_CASE("prime counts in progressions") {
  const auto& T = table();
  CHECK(prime_pi(100, T) == 25);
  CHECK(prime_pi_progression(100, 4, 1, T) == 11);
  CHECK(prime_pi_progression(100, 4, 3, T) == 13);
  CHECK_THROWS_AS(prime_pi_progression(100, 4, 2, T), DomainError);
  CHECK_THROWS_AS(prime_pi_progression(30000, 4, 1, T), RangeError);
  for (std::uint64_t q : {3, 7, 10}) {
    for (std::uint64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      std::uint64_t c = 0;
      for (auto pr : oracle::primes_upto(3000)) c += pr % q == a;
      REQUIRE(prime_pi_progression(3000, q, a, T) == c);
    }
  }
}

TEST_CASE("sieve cache roundtrip and corruption") {
  auto path = std::filesystem::temp_directory_path() / "pi01_sieve_test.bin";
  ChebyshevTable t = ChebyshevTable::build(5000);
  t.save(path);
  ChebyshevTable u = ChebyshevTable::load(path);
  CHECK(u.limit() == 5000);
  CHECK(u.primes() == t.primes());
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(100);
    f.put('\x07');
  }
  CHECK_THROWS_AS(ChebyshevTable::load(path), FormatError);
  std::filesystem::resize_file(path, 10);
  CHECK_THROWS_AS(ChebyshevTable::load(path), FormatError);
  std::filesystem::remove(path);
}
