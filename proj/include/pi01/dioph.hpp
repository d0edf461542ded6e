#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pi01/bignum.hpp"
#include "pi01/sieve.hpp"

namespace pi01 {

// variable name -> positive exponent
using Monomial = std::map<std::string, unsigned>;

// Graded lexicographic: higher total degree first, then the larger exponent
// at the first variable (by name) where the two differ.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Multivariate integer polynomial kept canonical: no zero coefficients,
// monomials in graded-lex order.
class Polynomial {
 public:
  using Terms = std::map<Monomial, BigInt, GradedLex>;

  Polynomial() = default;
  static Polynomial constant(const BigInt& c);
  static Polynomial variable(const std::string& name);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::set<std::string> variables() const;
  unsigned degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial pow(unsigned e) const;
  bool operator==(const Polynomial&) const = default;

  // (+ (* c (^ v e) ...) ...); the zero polynomial is "(+)".
  std::string to_sexpr() const;
  // Accepts the emitted form and, more generally, nested (+ …), (* …),
  // (- …), (^ expr e), integer literals and identifiers.
  static Polynomial parse(const std::string& text);

 private:
  void add_term(const Monomial& m, const BigInt& c);
  Terms terms_;
};

// Equations P = 0 over a variable universe.
struct DiophSystem {
  std::vector<Polynomial> equations;
  std::set<std::string> universe;

  // Universe defaults to the variables that occur.
  static DiophSystem of(std::vector<Polynomial> eqs);
  // Consecutive s-expressions, e.g. one per line.
  static DiophSystem parse(const std::string& text);
  void validate() const;
};

BigInt poly_eval(const Polynomial& p, const std::map<std::string, BigInt>& assignment);

// sum of P_i^2: over the integers it vanishes exactly where all P_i do.
Polynomial combine_sum_of_squares(const DiophSystem& sys);

// Relations over nonnegative integers with their witnesses.
// a | b  <=>  exists x: a x = b
std::optional<BigInt> rel_divides(const BigInt& a, const BigInt& b);
// a = gcd(b, c)  <=>  bc > 0 & a | b & a | c & exists x, y: a = b x - c y.
// Witnesses are nonnegative. bc = 0 throws DomainError.
std::optional<std::pair<BigInt, BigInt>> rel_gcd(const BigInt& a, const BigInt& b, const BigInt& c);
// a = lcm(b, c)  <=>  b c = a gcd(b, c)
bool rel_lcm(const BigInt& a, const BigInt& b, const BigInt& c);

// Solutions of x^2 - (a^2 - 1) y^2 = 1 ordered by y.
struct PellPair {
  std::int64_t a = 2;
  std::uint64_t index = 0;
  BigNat chi;
  BigNat psi;
};
PellPair pell_seq(std::int64_t a, std::uint64_t n);
std::vector<PellPair> pell_prefix(std::int64_t a, std::uint64_t count);

inline constexpr int kTheta1MaxK = 6;
// sum_{k<=K} p_k 10^(-2^k)
BigRational theta1_partial(int K, const ChebyshevTable& table);
// p_n = floor(theta 10^(2^n)) - 10^(2^(n-1)) floor(theta 10^(2^(n-1))), theta truncated at K.
BigNat prime_from_theta1(int n, int K, const ChebyshevTable& table);
// Exact decimal expansion of a rational whose denominator divides a power of 10.
std::string decimal_string(const BigRational& r);

}  // namespace pi01
