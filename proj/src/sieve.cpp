#include "pi01/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "pi01/errors.hpp"

namespace pi01 {

namespace {

constexpr char kMagic[8] = {'P', '0', '1', 'S', 'I', 'E', 'V', 'E'};
constexpr std::uint32_t kVersion = 1;

std::int64_t round_up64(std::int64_t bits) { return ((bits + 63) / 64) * 64; }

std::int64_t bitlen(std::uint64_t v) {
  std::int64_t n = 0;
  for (; v; v >>= 1) ++n;
  return n;
}

void put_le(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

Interval from_fixed(const BigInt& lo, const BigInt& hi, std::int64_t f, Precision p) {
  return round_to(Interval(Dyadic(lo, -f), Dyadic(hi, -f)), p);
}

}  // namespace

ChebyshevTable ChebyshevTable::build(std::uint64_t limit, std::uint64_t cap) {
  if (limit < 1) throw DomainError("sieve limit must be >= 1");
  if (limit > cap)
    throw CapacityError("sieve limit " + std::to_string(limit) + " exceeds the memory cap " +
                        std::to_string(cap));
  if (limit >= (1ULL << 32)) throw CapacityError("sieve limit must stay below 2^32");
  ChebyshevTable t;
  t.limit_ = limit;
  t.exps_.assign(limit + 1, 0);
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
    std::uint8_t k = 1;
    for (std::uint64_t pk = p;; ++k) {
      t.exps_[pk] = k;
      if (pk > limit / p) break;
      pk *= p;
    }
  }
  t.rebuild_primes();
  return t;
}

void ChebyshevTable::rebuild_primes() {
  primes_.clear();
  for (std::uint64_t j = 2; j <= limit_; ++j)
    if (exps_[j] == 1) primes_.push_back(static_cast<std::uint32_t>(j));
}

void ChebyshevTable::check_range(std::uint64_t j) const {
  if (j < 1 || j > limit_)
    throw RangeError("index " + std::to_string(j) + " outside sieve range [1, " +
                     std::to_string(limit_) + "]");
}

unsigned ChebyshevTable::prime_power_exponent(std::uint64_t j) const {
  check_range(j);
  return exps_[j];
}

bool ChebyshevTable::is_prime(std::uint64_t j) const { return prime_power_exponent(j) == 1; }

std::uint32_t ChebyshevTable::eta(std::uint64_t j) const {
  unsigned k = prime_power_exponent(j);
  if (k == 0) return 1;
  if (k == 1) return static_cast<std::uint32_t>(j);
  auto r = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(j), 1.0 / k)));
  auto pw = [k](std::uint64_t b) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < k; ++i) v *= b;
    return v;
  };
  while (pw(r) > j) --r;
  while (pw(r + 1) <= j) ++r;
  return static_cast<std::uint32_t>(r);
}

std::uint64_t ChebyshevTable::count_primes(std::uint64_t x) const {
  if (x > limit_) throw RangeError("prime count beyond sieve limit");
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                    primes_.begin());
}

std::shared_ptr<const PrimeLogs> ChebyshevTable::prime_logs(std::int64_t frac_bits) const {
  std::int64_t f = round_up64(std::max<std::int64_t>(frac_bits, 64));
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->logs.find(f);
  if (it != cache_->logs.end()) return it->second;
  auto logs = std::make_shared<PrimeLogs>();
  logs->frac_bits = f;
  logs->lo.reserve(primes_.size());
  logs->hi.reserve(primes_.size());
  for (std::uint32_t p : primes_) {
    FixedEnclosure e = ln_fixed(Dyadic(static_cast<long>(p)), f);
    logs->lo.push_back(std::move(e.lo));
    logs->hi.push_back(std::move(e.hi));
  }
  cache_->logs.emplace(f, logs);
  return logs;
}

FixedEnclosure ChebyshevTable::log_of(std::uint64_t n, const PrimeLogs& logs) const {
  check_range(n);
  FixedEnclosure out{BigInt(0), BigInt(0), logs.frac_bits};
  std::uint64_t rest = n;
  for (std::size_t i = 0; i < primes_.size() && rest > 1; ++i) {
    std::uint64_t p = primes_[i];
    if (p * p > rest) break;
    unsigned long k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    if (k) {
      mpz_addmul_ui(out.lo.get_mpz_t(), logs.lo[i].get_mpz_t(), k);
      mpz_addmul_ui(out.hi.get_mpz_t(), logs.hi[i].get_mpz_t(), k);
    }
  }
  if (rest > 1) {
    auto i = static_cast<std::size_t>(
        std::lower_bound(primes_.begin(), primes_.end(), rest) - primes_.begin());
    out.lo += logs.lo[i];
    out.hi += logs.hi[i];
  }
  return out;
}

void ChebyshevTable::save(const std::filesystem::path& path) const {
  std::vector<unsigned char> buf;
  buf.reserve(24 + limit_);
  buf.insert(buf.end(), kMagic, kMagic + 8);
  put_le(buf, kVersion, 4);
  put_le(buf, limit_, 8);
  buf.insert(buf.end(), exps_.begin() + 1, exps_.end());
  put_le(buf, fnv1a64(buf.data(), buf.size()), 8);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("cannot open sieve cache for writing: " + path.string());
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!os) throw FormatError("failed writing sieve cache: " + path.string());
}

ChebyshevTable ChebyshevTable::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open sieve cache: " + path.string());
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)),
                                 std::istreambuf_iterator<char>());
  if (buf.size() < 28 || std::memcmp(buf.data(), kMagic, 8) != 0)
    throw FormatError("not a sieve cache (bad magic): " + path.string());
  if (get_le(buf.data() + 8, 4) != kVersion) throw FormatError("unsupported sieve cache version");
  std::uint64_t n = get_le(buf.data() + 12, 8);
  if (n < 1 || buf.size() != 20 + n + 8) throw FormatError("sieve cache size mismatch");
  std::uint64_t stored = get_le(buf.data() + 20 + n, 8);
  if (fnv1a64(buf.data(), 20 + n) != stored) throw FormatError("sieve cache checksum mismatch");
  ChebyshevTable t;
  t.limit_ = n;
  t.exps_.assign(n + 1, 0);
  std::copy(buf.begin() + 20, buf.begin() + 20 + static_cast<std::ptrdiff_t>(n),
            t.exps_.begin() + 1);
  t.rebuild_primes();
  return t;
}

Interval psi(std::uint64_t n, const ChebyshevTable& table, Precision p) {
  if (n < 1 || n > table.limit())
    throw RangeError("psi(" + std::to_string(n) + ") outside sieve range");
  auto logs = table.prime_logs(p.bits() + 8 + bitlen(n));
  BigInt lo, hi;
  const auto& primes = table.primes();
  for (std::size_t i = 0; i < primes.size() && primes[i] <= n; ++i) {
    std::uint64_t pr = primes[i];
    unsigned long k = 0;
    for (std::uint64_t pk = pr; pk <= n; pk *= pr) {
      ++k;
      if (pk > n / pr) break;
    }
    mpz_addmul_ui(lo.get_mpz_t(), logs->lo[i].get_mpz_t(), k);
    mpz_addmul_ui(hi.get_mpz_t(), logs->hi[i].get_mpz_t(), k);
  }
  return from_fixed(lo, hi, logs->frac_bits, p);
}

Interval psi1(std::uint64_t n, const ChebyshevTable& table, Precision p) {
  if (n < 1 || n > table.limit() + 1)
    throw RangeError("psi1(" + std::to_string(n) + ") outside sieve range");
  auto logs = table.prime_logs(p.bits() + 8 + 2 * bitlen(n));
  BigInt lo, hi;
  const auto& primes = table.primes();
  for (std::size_t i = 0; i < primes.size() && primes[i] < n; ++i) {
    std::uint64_t pr = primes[i];
    std::uint64_t c = 0;
    for (std::uint64_t pk = pr; pk < n; pk *= pr) {
      c += n - pk;
      if (pk > n / pr) break;
    }
    mpz_addmul_ui(lo.get_mpz_t(), logs->lo[i].get_mpz_t(), c);
    mpz_addmul_ui(hi.get_mpz_t(), logs->hi[i].get_mpz_t(), c);
  }
  return from_fixed(lo, hi, logs->frac_bits, p);
}

Interval delta_log(std::uint64_t n, const ChebyshevTable& table, Precision p) {
  return psi1(n, table, p);
}

BigNat lcm_upto(std::uint64_t n, const ChebyshevTable& table) {
  if (n < 1 || n > table.limit())
    throw RangeError("lcm_upto(" + std::to_string(n) + ") outside sieve range");
  BigNat out = 1;
  for (std::uint32_t pr : table.primes()) {
    if (pr > n) break;
    std::uint64_t pk = pr;
    while (pk <= n / pr) pk *= pr;
    mpz_mul_ui(out.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(pk));
  }
  return out;
}

BigNat delta_exact(std::uint64_t n, const ChebyshevTable& table, unsigned cap) {
  if (n < 1) throw DomainError("delta_exact needs n >= 1");
  if (n > cap)
    throw CapacityError("delta_exact(" + std::to_string(n) + ") exceeds the exact cap " +
                        std::to_string(cap) + "; use delta_log");
  BigNat out = 1;
  for (std::uint64_t m = 1; m < n; ++m) out *= lcm_upto(m, table);
  return out;
}

std::uint64_t prime_pi(std::uint64_t x, const ChebyshevTable& table) {
  return table.count_primes(x);
}

std::uint64_t prime_pi_progression(std::uint64_t x, std::uint64_t q, std::uint64_t a,
                                   const ChebyshevTable& table) {
  if (q < 1) throw DomainError("modulus must be >= 1");
  if (std::gcd(a, q) != 1) throw DomainError("progression residue must be coprime to modulus");
  if (x > table.limit()) throw RangeError("prime count beyond sieve limit");
  std::uint64_t r = a % q;
  std::uint64_t count = 0;
  for (std::uint32_t pr : table.primes()) {
    if (pr > x) break;
    if (pr % q == r) ++count;
  }
  return count;
}

PsiSweep::PsiSweep(const ChebyshevTable& table, std::uint64_t start, Precision p)
    : table_(table),
      logs_(table.prime_logs(p.bits() + 8 + bitlen(table.limit()))),
      prec_(p),
      n_(start) {
  if (start < 1 || start > table.limit()) throw RangeError("psi sweep start outside sieve range");
  const auto& primes = table.primes();
  for (std::size_t i = 0; i < primes.size() && primes[i] <= start; ++i) {
    std::uint64_t pr = primes[i];
    unsigned long k = 0;
    for (std::uint64_t pk = pr; pk <= start; pk *= pr) {
      ++k;
      if (pk > start / pr) break;
    }
    mpz_addmul_ui(lo_.get_mpz_t(), logs_->lo[i].get_mpz_t(), k);
    mpz_addmul_ui(hi_.get_mpz_t(), logs_->hi[i].get_mpz_t(), k);
  }
}

Interval PsiSweep::value() const { return from_fixed(lo_, hi_, logs_->frac_bits, prec_); }

void PsiSweep::advance() {
  ++n_;
  if (n_ > table_.limit()) throw RangeError("psi sweep ran past sieve limit");
  if (table_.prime_power_exponent(n_) == 0) return;
  std::uint32_t pr = table_.eta(n_);
  const auto& primes = table_.primes();
  auto i = static_cast<std::size_t>(std::lower_bound(primes.begin(), primes.end(), pr) -
                                    primes.begin());
  lo_ += logs_->lo[i];
  hi_ += logs_->hi[i];
}

}  // namespace pi01
