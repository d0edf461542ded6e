#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "pi01/elementary.hpp"
#include "pi01/interval.hpp"

namespace pi01 {

inline constexpr std::uint64_t kSieveDefaultCap = 100'000'000ULL;
inline constexpr unsigned kDeltaExactCap = 12;

// Fixed-point enclosures of ln p for every prime p in a table, index-aligned
// with ChebyshevTable::primes().
struct PrimeLogs {
  std::int64_t frac_bits = 0;
  std::vector<BigInt> lo;
  std::vector<BigInt> hi;
};

// Sieve-derived eta table: for each j <= N the byte exp(j) is k when
// j = p^k for a prime p and 0 otherwise, so eta(j) = j^(1/k) or 1.
// Immutable after build; prime-log caches are filled lazily under a lock.
class ChebyshevTable {
 public:
  static ChebyshevTable build(std::uint64_t limit, std::uint64_t cap = kSieveDefaultCap);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t eta(std::uint64_t j) const;
  unsigned prime_power_exponent(std::uint64_t j) const;
  bool is_prime(std::uint64_t j) const;
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  // Number of primes <= x; x must be within the table.
  std::uint64_t count_primes(std::uint64_t x) const;

  // ln p enclosures for all primes, at a fractional precision rounded up to
  // a multiple of 64 bits (so nearby requests share a cache entry).
  std::shared_ptr<const PrimeLogs> prime_logs(std::int64_t frac_bits) const;
  // ln n for 1 <= n <= limit as a fixed-point sum over its factorization.
  FixedEnclosure log_of(std::uint64_t n, const PrimeLogs& logs) const;

  // Binary cache: "P01SIEVE", u32 version, u64 N, N exponent bytes for
  // j = 1..N, then the FNV-1a 64 checksum of everything before it.
  void save(const std::filesystem::path& path) const;
  static ChebyshevTable load(const std::filesystem::path& path);

  ChebyshevTable(ChebyshevTable&&) noexcept = default;
  ChebyshevTable& operator=(ChebyshevTable&&) noexcept = default;

 private:
  ChebyshevTable() : cache_(std::make_unique<Cache>()) {}
  void check_range(std::uint64_t j) const;
  void rebuild_primes();

  struct Cache {
    std::mutex mu;
    std::map<std::int64_t, std::shared_ptr<const PrimeLogs>> logs;
  };

  std::uint64_t limit_ = 0;
  std::vector<std::uint8_t> exps_;  // exps_[j], j = 0..limit
  std::vector<std::uint32_t> primes_;
  std::unique_ptr<Cache> cache_;
};

// psi(n) = sum_{j<=n} ln eta(j) = ln lcm(1..n); 1 <= n <= N.
Interval psi(std::uint64_t n, const ChebyshevTable& table, Precision p);
// psi_1(n) = sum_{j<n} (n - j) ln eta(j) = ln delta(n); 1 <= n <= N + 1.
Interval psi1(std::uint64_t n, const ChebyshevTable& table, Precision p);
// Alias of psi1 (ln delta(n)).
Interval delta_log(std::uint64_t n, const ChebyshevTable& table, Precision p);

BigNat lcm_upto(std::uint64_t n, const ChebyshevTable& table);
// delta(n) = prod_{m<n} lcm(1..m), exact for n <= cap.
BigNat delta_exact(std::uint64_t n, const ChebyshevTable& table, unsigned cap = kDeltaExactCap);

std::uint64_t prime_pi(std::uint64_t x, const ChebyshevTable& table);
std::uint64_t prime_pi_progression(std::uint64_t x, std::uint64_t q, std::uint64_t a,
                                   const ChebyshevTable& table);

// Walks n = start, start+1, ... keeping psi(n) as an exact fixed-point sum
// of the table's prime logs.
class PsiSweep {
 public:
  PsiSweep(const ChebyshevTable& table, std::uint64_t start, Precision p);
  std::uint64_t n() const { return n_; }
  Interval value() const;
  void advance();
  const PrimeLogs& logs() const { return *logs_; }

 private:
  const ChebyshevTable& table_;
  std::shared_ptr<const PrimeLogs> logs_;
  Precision prec_;
  std::uint64_t n_;
  BigInt lo_, hi_;
};

}  // namespace pi01
