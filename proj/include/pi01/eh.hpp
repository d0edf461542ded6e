#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pi01/sieve.hpp"
#include "pi01/verdict.hpp"

namespace pi01 {

// Li(x) = int_2^x dt / ln t by composite Simpson with the fourth-derivative
// remainder bound on every panel.
Interval li(std::uint64_t x, Precision p);
Interval li_segment(std::uint64_t a, std::uint64_t b, Precision p);

// Li at increasing integer heights, adding one segment per step.
class LiSweep {
 public:
  LiSweep(std::uint64_t start, Precision p);
  std::uint64_t at() const { return y_; }
  const Interval& value() const { return value_; }
  void advance_to(std::uint64_t y);

 private:
  Precision prec_;
  std::uint64_t y_;
  Interval value_;
};

std::uint64_t euler_phi(std::uint64_t q, const ChebyshevTable& table);

struct EhRecord {
  std::uint64_t x = 0, q = 0, a = 0;
  std::uint64_t pi_qa = 0;
  Interval li_over_phi;
  Interval error;  // pi_qa - Li(x)/phi(q)
};

EhRecord error_term(std::uint64_t x, std::uint64_t q, std::uint64_t a, const ChebyshevTable& table,
                    Precision p);
// max over a coprime to q of |E(x;q,a)|
Interval e_max(std::uint64_t x, std::uint64_t q, const ChebyshevTable& table, Precision p);
// max over integer 2 <= y <= x of E(y;q)
Interval e_star(std::uint64_t x, std::uint64_t q, const ChebyshevTable& table, Precision p);

// Shared evaluation grid for E*(x; q) over many q: the heights where some
// prime count changes (p - 1 and p for each prime p <= x) plus 2 and x,
// with Li at each height held in 64-bit fixed point.
class EStarEngine {
 public:
  EStarEngine(std::uint64_t x, const ChebyshevTable& table, Precision p);
  std::uint64_t x() const { return x_; }
  Interval e_star(std::uint64_t q) const;

 private:
  struct Point {
    std::uint64_t y;
    std::size_t primes_before;  // primes <= y
    __int128 l_lo, l_hi;       // Li(y) * 2^64, floor / ceil
  };
  const ChebyshevTable& table_;
  std::uint64_t x_;
  Precision prec_;
  std::vector<Point> points_;
};

enum class Regime { BV, EH, FGHM };
std::string regime_name(Regime r);

struct LevelSumReport {
  std::uint64_t x = 0;
  std::uint64_t Q = 0;
  Regime regime = Regime::BV;
  double A = 0;
  std::optional<double> B;
  std::optional<double> eps;
  Interval sum;    // sum_{q<=Q} E*(x;q)
  Interval ratio;  // sum * (ln x)^A / x
};

inline double bv_default_B(double A) { return 3 * A + 23; }
inline double bv_alternative_B(double A) { return 24 * A + 46; }

// Q = floor(sqrt(x) (ln x)^-B), x >= 16.
std::uint64_t bv_modulus(std::uint64_t x, double B, Precision p);
// Q = floor(x^(1-eps)), 0 < eps < 1.
std::uint64_t eh_modulus(std::uint64_t x, double eps, Precision p);

LevelSumReport bv_sum(std::uint64_t x, double A, double B, const ChebyshevTable& table,
                      Precision p, unsigned workers = 1);
LevelSumReport eh_sum(std::uint64_t x, double eps, const ChebyshevTable& table, Precision p,
                      unsigned workers = 1, double A = 1);
// Sum at an explicit modulus bound (the common core of the two above).
Interval level_sum(std::uint64_t x, std::uint64_t Q, const ChebyshevTable& table, Precision p,
                   unsigned workers = 1);

// Q = x exp(-(A-1)/4 (ln ln x)^2 / ln ln ln x); x >= 16, A >= 1.
Interval fghm_threshold(std::uint64_t x, double A, Precision p);

// Consecutive primes p < p' <= x with p' - p <= bound.
std::uint64_t gpy_gap_count(std::uint64_t x, std::uint64_t bound, const ChebyshevTable& table);

// |pi(x) - Li(x)| < sqrt(x) ln x / (8 pi), x >= 2657.
Verdict schoenfeld_check(std::uint64_t x, const ChebyshevTable& table,
                         const PrecisionPolicy& policy);

struct SchoenfeldSweep {
  std::uint64_t x_lo = 0, x_hi = 0;
  std::uint64_t points = 0;
  std::uint64_t holds = 0, fails = 0, undecided = 0;
  std::vector<std::uint64_t> not_holding;
};
// Checks x_lo, x_hi and p - 1, p for every prime p in between.
SchoenfeldSweep schoenfeld_sweep(std::uint64_t x_lo, std::uint64_t x_hi,
                                 const ChebyshevTable& table, const PrecisionPolicy& policy);

// CSV rows with the exact headers used by the command-line tool.
inline constexpr const char* kRecordCsvHeader = "x,q,a,pi_qa,li_over_phi_lo,li_over_phi_hi,e_lo,e_hi";
inline constexpr const char* kLevelSumCsvHeader = "x,Q,regime,A,B,eps,sum_lo,sum_hi";
std::string csv_row(const EhRecord& r);
std::string csv_row(const LevelSumReport& r);

}  // namespace pi01
