#include "pi01/dioph.hpp"

#include <cctype>
#include <sstream>

#include "pi01/errors.hpp"

namespace pi01 {

namespace {

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (const auto& [v, e] : b) out[v] += e;
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

bool is_integer(const std::string& s) {
  std::size_t i = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) toks_.push_back(cur);
      cur.clear();
    };
    for (char ch : text) {
      if (ch == '(' || ch == ')') {
        flush();
        toks_.emplace_back(1, ch);
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else {
        cur += ch;
      }
    }
    flush();
  }

  bool done() const { return pos_ >= toks_.size(); }

  Polynomial expr() {
    if (done()) throw FormatError("unexpected end of polynomial text");
    std::string t = toks_[pos_++];
    if (t == ")") throw FormatError("unexpected ')'");
    if (t != "(") {
      if (is_integer(t)) return Polynomial::constant(BigInt(t[0] == '+' ? t.substr(1) : t));
      if (is_identifier(t)) return Polynomial::variable(t);
      throw FormatError("bad token '" + t + "'");
    }
    if (done()) throw FormatError("unexpected end after '('");
    std::string op = toks_[pos_++];
    std::vector<Polynomial> args;
    std::optional<unsigned long> exponent;
    while (true) {
      if (done()) throw FormatError("missing ')'");
      if (toks_[pos_] == ")") {
        ++pos_;
        break;
      }
      if (op == "^" && args.size() == 1) {
        const std::string& e = toks_[pos_++];
        if (!is_integer(e) || e[0] == '-') throw FormatError("exponent must be a nonnegative integer");
        exponent = std::stoul(e);
        continue;
      }
      args.push_back(expr());
    }
    if (op == "+") {
      Polynomial s;
      for (const auto& a : args) s = s + a;
      return s;
    }
    if (op == "*") {
      Polynomial s = Polynomial::constant(1);
      for (const auto& a : args) s = s * a;
      return s;
    }
    if (op == "-") {
      if (args.empty()) throw FormatError("'-' needs an argument");
      if (args.size() == 1) return -args[0];
      Polynomial s = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) s = s - args[i];
      return s;
    }
    if (op == "^") {
      if (args.size() != 1 || !exponent) throw FormatError("'^' takes a base and an exponent");
      return args[0].pow(static_cast<unsigned>(*exponent));
    }
    throw FormatError("unknown operator '" + op + "'");
  }

 private:
  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    // exponent of the smaller variable name on each side
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) return true;
    if (ia == a.end() || ib->first < ia->first) return false;
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia;
    ++ib;
  }
  return false;
}

Polynomial Polynomial::constant(const BigInt& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  if (!is_identifier(name)) throw FormatError("bad variable name '" + name + "'");
  Polynomial p;
  p.add_term({{name, 1}}, 1);
  return p;
}

void Polynomial::add_term(const Monomial& m, const BigInt& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) out.insert(v);
  return out;
}

unsigned Polynomial::degree() const {
  return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(1), base = *this;
  for (; e; e >>= 1) {
    if (e & 1) r = r * base;
    if (e > 1) base = base * base;
  }
  return r;
}

std::string Polynomial::to_sexpr() const {
  std::ostringstream os;
  os << "(+";
  for (const auto& [m, c] : terms_) {
    os << " (* " << c.get_str();
    for (const auto& [v, e] : m) os << " (^ " << v << ' ' << e << ')';
    os << ')';
  }
  os << ')';
  return os.str();
}

Polynomial Polynomial::parse(const std::string& text) {
  Reader r(text);
  Polynomial p = r.expr();
  if (!r.done()) throw FormatError("trailing text after polynomial");
  return p;
}

DiophSystem DiophSystem::of(std::vector<Polynomial> eqs) {
  DiophSystem s;
  s.equations = std::move(eqs);
  for (const auto& p : s.equations)
    for (const auto& v : p.variables()) s.universe.insert(v);
  return s;
}

DiophSystem DiophSystem::parse(const std::string& text) {
  Reader r(text);
  std::vector<Polynomial> eqs;
  while (!r.done()) eqs.push_back(r.expr());
  return of(std::move(eqs));
}

void DiophSystem::validate() const {
  for (const auto& p : equations)
    for (const auto& v : p.variables())
      if (!universe.count(v)) throw DomainError("variable '" + v + "' not in the system universe");
}

BigInt poly_eval(const Polynomial& p, const std::map<std::string, BigInt>& assignment) {
  BigInt sum = 0;
  for (const auto& [m, c] : p.terms()) {
    BigInt t = c;
    for (const auto& [v, e] : m) {
      auto it = assignment.find(v);
      if (it == assignment.end()) throw DomainError("no value for variable '" + v + "'");
      BigInt pw;
      mpz_pow_ui(pw.get_mpz_t(), it->second.get_mpz_t(), e);
      t *= pw;
    }
    sum += t;
  }
  return sum;
}

Polynomial combine_sum_of_squares(const DiophSystem& sys) {
  if (sys.equations.empty()) throw DomainError("cannot combine an empty system");
  sys.validate();
  Polynomial s;
  for (const auto& p : sys.equations) s = s + p * p;
  return s;
}

std::optional<BigInt> rel_divides(const BigInt& a, const BigInt& b) {
  if (sgn(a) < 0 || sgn(b) < 0) throw DomainError("divisibility is over nonnegative integers");
  if (sgn(a) == 0) return sgn(b) == 0 ? std::optional<BigInt>(BigInt(0)) : std::nullopt;
  if (!mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) return std::nullopt;
  return BigInt(b / a);
}

std::optional<std::pair<BigInt, BigInt>> rel_gcd(const BigInt& a, const BigInt& b, const BigInt& c) {
  if (sgn(a) < 0 || sgn(b) < 0 || sgn(c) < 0)
    throw DomainError("gcd relation is over nonnegative integers");
  if (sgn(b) == 0 || sgn(c) == 0) throw DomainError("gcd relation requires bc > 0");
  BigInt g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
  if (a != g) return std::nullopt;
  // g = b s + c t; shift to x = s + k c/g, y = -t + k b/g with both >= 0.
  BigInt cg = c / g, bg = b / g;
  BigInt x = s, y = -t;
  BigInt k = 0;
  if (sgn(x) < 0) {
    BigInt need;
    mpz_cdiv_q(need.get_mpz_t(), BigInt(-x).get_mpz_t(), cg.get_mpz_t());
    k = need;
  }
  if (sgn(y + k * bg) < 0) {
    BigInt need;
    mpz_cdiv_q(need.get_mpz_t(), BigInt(-y).get_mpz_t(), bg.get_mpz_t());
    if (need > k) k = need;
  }
  x += k * cg;
  y += k * bg;
  return std::make_pair(x, y);
}

bool rel_lcm(const BigInt& a, const BigInt& b, const BigInt& c) {
  if (sgn(a) < 0 || sgn(b) < 0 || sgn(c) < 0)
    throw DomainError("lcm relation is over nonnegative integers");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
  return b * c == a * g;
}

PellPair pell_seq(std::int64_t a, std::uint64_t n) {
  if (a < 2) throw DomainError("pell_seq needs a >= 2");
  BigNat aa = big(a);
  BigNat chi0 = 1, psi0 = 0, chi1 = aa, psi1v = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    BigNat chi2 = 2 * aa * chi1 - chi0;
    BigNat psi2 = 2 * aa * psi1v - psi0;
    chi0 = std::move(chi1);
    psi0 = std::move(psi1v);
    chi1 = std::move(chi2);
    psi1v = std::move(psi2);
  }
  return {a, n, chi0, psi0};
}

std::vector<PellPair> pell_prefix(std::int64_t a, std::uint64_t count) {
  std::vector<PellPair> out;
  if (a < 2) throw DomainError("pell_seq needs a >= 2");
  BigNat aa = big(a);
  BigNat chi0 = 1, psi0 = 0, chi1 = aa, psi1v = 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back({a, i, chi0, psi0});
    BigNat chi2 = 2 * aa * chi1 - chi0;
    BigNat psi2 = 2 * aa * psi1v - psi0;
    chi0 = std::move(chi1);
    psi0 = std::move(psi1v);
    chi1 = std::move(chi2);
    psi1v = std::move(psi2);
  }
  return out;
}

namespace {

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

BigInt floor_of(const BigRational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

BigRational theta1_partial(int K, const ChebyshevTable& table) {
  if (K < 1) throw DomainError("theta1_partial needs K >= 1");
  if (K > kTheta1MaxK) throw CapacityError("theta1_partial is capped at K = 6");
  const auto& primes = table.primes();
  if (primes.size() < static_cast<std::size_t>(K)) throw RangeError("sieve holds too few primes");
  BigRational sum = 0;
  for (int k = 1; k <= K; ++k)
    sum += BigRational(BigInt(primes[k - 1]), pow10(1UL << k));
  sum.canonicalize();
  return sum;
}

BigNat prime_from_theta1(int n, int K, const ChebyshevTable& table) {
  if (n < 1 || n >= K) throw DomainError("prime_from_theta1 needs 1 <= n < K");
  BigRational th = theta1_partial(K, table);
  BigInt hi = floor_of(th * BigRational(pow10(1UL << n)));
  BigInt lo = floor_of(th * BigRational(pow10(1UL << (n - 1))));
  return hi - pow10(1UL << (n - 1)) * lo;
}

std::string decimal_string(const BigRational& r) {
  BigInt den = r.get_den();
  unsigned long k = 0;
  BigInt d = den;
  unsigned long twos = mpz_remove(d.get_mpz_t(), d.get_mpz_t(), BigInt(2).get_mpz_t());
  unsigned long fives = mpz_remove(d.get_mpz_t(), d.get_mpz_t(), BigInt(5).get_mpz_t());
  if (d != 1) throw DomainError("rational has no finite decimal expansion");
  k = std::max(twos, fives);
  BigInt scaled = r.get_num() * pow10(k) / den;
  bool negative = sgn(scaled) < 0;
  std::string digits = (negative ? BigInt(-scaled) : scaled).get_str();
  if (k == 0) return (negative ? "-" : "") + digits;
  if (digits.size() <= k) digits = std::string(k - digits.size() + 1, '0') + digits;
  std::string out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
  return (negative ? "-" : "") + out;
}

}  // namespace pi01
