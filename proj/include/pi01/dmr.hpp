#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pi01/sieve.hpp"
#include "pi01/verdict.hpp"

namespace pi01 {

enum class BoundVariant { Classic36, ImprovedGamma, Rational25 };

std::string variant_name(BoundVariant v);  // classic36 | improved_gamma | rational25
BoundVariant parse_variant(const std::string& s);
inline constexpr BoundVariant kAllVariants[] = {BoundVariant::Classic36,
                                                BoundVariant::ImprovedGamma,
                                                BoundVariant::Rational25};

inline constexpr unsigned kDmrOracleCap = 8;

// How H_{delta(n)} is enclosed. Auto sums directly for n <= 3 (delta(n) < 10)
// and uses the asymptotic expansion on ln delta(n) = psi_1(n) otherwise.
enum class HarmonicPath { Auto, Asymptotic, Direct };

// (H_{delta(n)} - n^2/2)^2.
Interval dmr_lhs(std::uint64_t n, const ChebyshevTable& table, Precision p,
                 HarmonicPath path = HarmonicPath::Auto);
Interval dmr_rhs(std::uint64_t n, BoundVariant v, Precision p);

Verdict check_dmr(std::uint64_t n, BoundVariant v, const PrecisionPolicy& policy,
                  const ChebyshevTable& table);
// Direct summation over the exact delta(n); n > cap throws CapacityError.
Verdict dmr_oracle(std::uint64_t n, BoundVariant v, const PrecisionPolicy& policy,
                   const ChebyshevTable& table, unsigned cap = kDmrOracleCap);

struct ScanRecord {
  std::uint64_t n = 0;
  BoundVariant variant = BoundVariant::Classic36;
  Outcome outcome = Outcome::Undecided;
  Interval lhs;
  Interval rhs;
  int bits = 0;
  bool operator==(const ScanRecord&) const = default;
};

struct ScanOptions {
  std::uint64_t n_lo = 1;
  std::uint64_t n_hi = 1;
  BoundVariant variant = BoundVariant::Classic36;
  PrecisionPolicy policy;
  unsigned workers = 1;
  std::optional<std::filesystem::path> checkpoint;
  // Stop once this many new records were written (simulates an interrupted
  // run; the report comes back incomplete).
  std::optional<std::uint64_t> stop_after;
};

struct ScanReport {
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  BoundVariant variant = BoundVariant::Classic36;
  std::vector<ScanRecord> records;  // sorted by n
  std::uint64_t holds = 0, fails = 0, undecided = 0;
  std::uint64_t resumed = 0;  // records taken from the checkpoint
  Dyadic max_undecided_width;
  double wall_seconds = 0;
  bool complete() const { return records.size() == n_hi - n_lo + 1; }
  // Deterministic JSON (no timing, no resume count).
  std::string to_json() const;
};

ScanReport scan_dmr(const ScanOptions& opt, const ChebyshevTable& table);

}  // namespace pi01
