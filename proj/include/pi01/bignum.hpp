#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pi01 {

// Exact integers and rationals are GMP values. BigNat is a BigInt that
// callers keep nonnegative; functions taking one validate at the boundary.
using BigInt = mpz_class;
using BigNat = mpz_class;
using BigRational = mpq_class;

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }
inline BigInt big_u(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

inline std::size_t bit_length(const BigInt& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

// 64-bit FNV-1a; used for checksums and config hashes.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  return fnv1a64(s.data(), s.size());
}

}  // namespace pi01
