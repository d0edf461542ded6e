#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pi01/sieve.hpp"
#include "pi01/verdict.hpp"

namespace pi01 {

inline constexpr std::uint64_t kPsiGapMinN = 600;

// |psi(n) - n| < sqrt(n) ln^2 n, certified; n >= 600.
Verdict psi_gap_check(std::uint64_t n, const PrecisionPolicy& policy, const ChebyshevTable& table);

struct PsiGapScan {
  std::uint64_t n_lo = 0, n_hi = 0;
  std::uint64_t holds = 0, fails = 0, undecided = 0;
  std::vector<std::uint64_t> not_holding;  // n whose verdict was not Holds
};
// Sweeps n_lo..n_hi with an incremental psi; anything not settled at the
// initial precision is re-run through psi_gap_check.
PsiGapScan psi_gap_scan(std::uint64_t n_lo, std::uint64_t n_hi, const PrecisionPolicy& policy,
                        const ChebyshevTable& table);

// explog(a, b): some x > b + 1 has L_b(x) <= a + 1 < 4 L_b(x), where
// L_b(x) = (1 + 1/x)^(x b).
enum class ExplogRefutation { MinTooLarge, LimitTooSmall };
std::string refutation_name(ExplogRefutation r);

struct ExplogResult {
  bool holds = false;
  std::optional<BigNat> witness_x;
  std::optional<ExplogRefutation> refutation;
};

ExplogResult explog_holds(const BigNat& a, const BigNat& b);
BigNat explog_find_b(const BigNat& a);
// Exact L_b(x); the caller keeps x*b small.
BigRational explog_L(const BigNat& b, const BigNat& x);
// Sign of k * L_b(x) - c, exact for small sizes and by certified logs otherwise.
int explog_compare(const BigNat& b, const BigNat& x, unsigned k, const BigNat& c);

struct CommonMultiple {
  bool is_common = false;
  bool is_least = false;
};
CommonMultiple common_multiple_check(const BigNat& m, std::uint64_t n);

struct MatSystem {
  BigNat k, l, m, n;
};

// The converse derivation yields |l - n| > 2 sqrt(n) k^2, i.e. 4 n k^4; the
// printed condition has 4 n^2 k^4.
enum class M6Form { Printed, Derived };

struct MatReport {
  bool m1 = false;             // n >= 600
  Outcome m2_neg = Outcome::Undecided;  // |psi(n) - n| >= sqrt(n) ln^2 n
  bool m3 = false;             // (y+1) | m for all y < n
  bool m4_bounded = false;     // m is the least such
  bool m4_explog = false;      // explog(m-1, l)
  bool m5 = false;             // explog(n-1, k)
  bool m6 = false;             // (l-n)^2 > 4 n^2 k^4 (or 4 n k^4)
  bool all() const {
    return m1 && m2_neg == Outcome::Holds && m3 && m4_bounded && m4_explog && m5 && m6;
  }
  std::string conditions_json() const;
};

MatReport mat_conditions_check(const MatSystem& sys, const PrecisionPolicy& policy,
                               const ChebyshevTable& table, M6Form m6 = M6Form::Printed);

// {"k":…,"l":…,"m":"decimal","n":…,"conditions":{…}}
std::string certificate_json(const MatSystem& sys, const MatReport& rep);

struct CounterexampleReport {
  std::optional<MatSystem> found;
  std::optional<MatReport> found_report;
  std::uint64_t scanned = 0;
  std::vector<std::uint64_t> s2_violations;  // n where |l - psi(n)| < 2 was not certified
  std::vector<std::uint64_t> s3_violations;  // n where |k - ln n| < 2 was not certified
};

// For each n: m = lcm(1..n), k = explog_find_b(n-1), l = explog_find_b(m-1),
// then mat_conditions_check; stops at the first system passing everything.
CounterexampleReport counterexample_search(std::uint64_t n_lo, std::uint64_t n_hi,
                                           const PrecisionPolicy& policy,
                                           const ChebyshevTable& table,
                                           M6Form m6 = M6Form::Printed);

}  // namespace pi01
