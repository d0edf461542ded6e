// pi01: certified checks of arithmetic reformulations of RH and related
// prime-distribution quantities.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pi01/checkpoint.hpp"
#include "pi01/dioph.hpp"
#include "pi01/dmr.hpp"
#include "pi01/eh.hpp"
#include "pi01/elementary.hpp"
#include "pi01/errors.hpp"
#include "pi01/harmonic.hpp"
#include "pi01/matiyasevich.hpp"

using namespace pi01;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kUsage = 1, kFails = 2, kUndecided = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned default_workers() {
  if (const char* w = std::getenv("PI01_WORKERS")) {
    try {
      long v = std::stol(w);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid PI01_WORKERS='" << w << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Config {
  int bits = 96;
  int max_bits = 4096;
  std::string growth = "2";
  unsigned workers = default_workers();
  std::string checkpoint;
  std::string out;
  std::string format = "json";
  std::string sieve_cache;

  PrecisionPolicy policy() const {
    PrecisionPolicy p;
    p.initial_bits = bits;
    p.max_bits = max_bits;
    auto slash = growth.find('/');
    try {
      if (slash != std::string::npos) {
        p.growth_num = std::stol(growth.substr(0, slash));
        p.growth_den = std::stol(growth.substr(slash + 1));
      } else if (growth.find('.') != std::string::npos) {
        auto dot = growth.find('.');
        std::string frac = growth.substr(dot + 1);
        BigInt num, den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        if (num.set_str(growth.substr(0, dot) + frac, 10) != 0) throw std::invalid_argument(growth);
        BigRational r(num, den);
        r.canonicalize();
        if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
          throw UsageError("growth factor has too many digits");
        p.growth_num = r.get_num().get_si();
        p.growth_den = r.get_den().get_si();
      } else {
        p.growth_num = std::stol(growth);
        p.growth_den = 1;
      }
    } catch (const std::invalid_argument&) {
      throw UsageError("bad --growth '" + growth + "'");
    }
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return p;
  }
  Precision precision() const {
    if (bits < Precision::kMinBits) throw UsageError("--bits below minimum");
    return Precision(bits);
  }
};

ChebyshevTable table_for(std::uint64_t limit, const Config& cfg) {
  limit = std::max<std::uint64_t>(limit, 100);
  if (!cfg.sieve_cache.empty() && std::filesystem::exists(cfg.sieve_cache)) {
    try {
      ChebyshevTable t = ChebyshevTable::load(cfg.sieve_cache);
      if (t.limit() >= limit) return t;
    } catch (const FormatError& e) {
      std::cerr << "warning: " << e.what() << "; rebuilding sieve\n";
    }
  }
  ChebyshevTable t = ChebyshevTable::build(limit);
  if (!cfg.sieve_cache.empty()) t.save(cfg.sieve_cache);
  return t;
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return kOk;
    case Outcome::Fails:
      return kFails;
    case Outcome::Undecided:
      break;
  }
  return kUndecided;
}

int exit_for_counts(std::uint64_t fails, std::uint64_t undecided) {
  if (fails) return kFails;
  if (undecided) return kUndecided;
  return kOk;
}

void emit(const std::string& text, const Config& cfg) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.out, std::ios::trunc);
  if (!os) throw FormatError("cannot write " + cfg.out);
  os << text;
}

void print_verdict(const std::string& what, const Verdict& v) {
  std::cout << what << ": " << outcome_name(v.outcome) << " (bits " << v.precision_used
            << ")\n  lhs " << v.lhs.to_string() << "\n  rhs " << v.rhs.to_string() << "\n  gap "
            << v.gap.to_string() << "\n";
  if (v.certificate) std::cout << "certificate: " << *v.certificate << "\n";
}

std::string scan_csv(const ScanReport& r) {
  std::ostringstream os;
  os << "n,variant,verdict,lhs_lo,lhs_hi,rhs_lo,rhs_hi,bits\n";
  for (const auto& rec : r.records)
    os << rec.n << ',' << variant_name(rec.variant) << ',' << outcome_name(rec.outcome) << ','
       << rec.lhs.lo().to_string() << ',' << rec.lhs.hi().to_string() << ','
       << rec.rhs.lo().to_string() << ',' << rec.rhs.hi().to_string() << ',' << rec.bits << '\n';
  return os.str();
}

void add_policy(CLI::App* c, Config& cfg) {
  c->add_option("--bits", cfg.bits, "initial precision in bits")->capture_default_str();
  c->add_option("--max-bits", cfg.max_bits, "precision cap for escalation")->capture_default_str();
  c->add_option("--growth", cfg.growth, "precision growth factor (integer, p/q or decimal)")
      ->capture_default_str();
}

void add_format(CLI::App* c, Config& cfg) {
  c->add_option("--out", cfg.out, "write the report to this file");
  c->add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

std::map<std::string, BigInt> parse_assignment(const std::string& text) {
  std::map<std::string, BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("assignment items look like x=7");
    try {
      out[item.substr(0, eq)] = BigInt(item.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad integer in assignment '" + item + "'");
    }
  }
  return out;
}

BigNat parse_nat(const std::string& s, const char* what) {
  BigNat v;
  if (v.set_str(s, 10) != 0 || sgn(v) < 0)
    throw UsageError(std::string(what) + " must be a nonnegative integer");
  return v;
}

// Each row: name, pass.
int selftest() {
  std::vector<std::pair<std::string, std::function<bool()>>> checks;
  auto table = std::make_shared<ChebyshevTable>(ChebyshevTable::build(100000));
  const auto& T = *table;
  PrecisionPolicy pol;
  Precision p96(96);
  checks.push_back({"delta(7) = 518400 and ln delta(7) enclosed", [&] {
                      return delta_exact(7, T) == 518400 &&
                             psi1(7, T, p96).contains(iv_ln(Interval::from_long(518400), Precision(200)));
                    }});
  checks.push_back({"lcm(1..n) in exp(psi(n)), n <= 200", [&] {
                      for (std::uint64_t n = 1; n <= 200; ++n)
                        if (!iv_exp(psi(n, T, p96), p96).contains(Dyadic::from_int(lcm_upto(n, T))))
                          return false;
                      return true;
                    }});
  checks.push_back({"pi(100;4,1) = 11, pi(100;4,3) = 13", [&] {
                      return prime_pi_progression(100, 4, 1, T) == 11 &&
                             prime_pi_progression(100, 4, 3, T) == 13;
                    }});
  checks.push_back({"check_dmr = dmr_oracle, n <= 7, all variants", [&] {
                      for (std::uint64_t n = 1; n <= 7; ++n)
                        for (BoundVariant v : kAllVariants)
                          if (check_dmr(n, v, pol, T).outcome != dmr_oracle(n, v, pol, T).outcome)
                            return false;
                      return true;
                    }});
  checks.push_back({"psi gap holds at n = 600 and 1000", [&] {
                      return psi_gap_check(600, pol, T).outcome == Outcome::Holds &&
                             psi_gap_check(1000, pol, T).outcome == Outcome::Holds;
                    }});
  checks.push_back({"explog(7,2) witness x = 4", [&] {
                      auto r = explog_holds(7, 2);
                      return r.holds && r.witness_x && *r.witness_x == 4;
                    }});
  checks.push_back({"explog(1,1) refuted, L_1(3) = 64/27 > 2", [&] {
                      auto r = explog_holds(1, 1);
                      return !r.holds && r.refutation == ExplogRefutation::MinTooLarge &&
                             explog_L(1, 3) == BigRational(64, 27);
                    }});
  checks.push_back({"common multiples (60,6) and (120,6)", [&] {
                      auto a = common_multiple_check(60, 6), b = common_multiple_check(120, 6);
                      return a.is_common && a.is_least && b.is_common && !b.is_least;
                    }});
  checks.push_back({"pell a=2: (7,4) at n=2, (97,56) at n=4", [&] {
                      auto a = pell_seq(2, 2), b = pell_seq(2, 4);
                      return a.chi == 7 && a.psi == 4 && b.chi == 97 && b.psi == 56;
                    }});
  checks.push_back({"theta1 truncated at K=4 is 0.0203000500000007", [&] {
                      return decimal_string(theta1_partial(4, T)) == "0.0203000500000007";
                    }});
  checks.push_back({"sum of squares {x-1, y-2} vanishes only at (1,2)", [&] {
                      auto s = combine_sum_of_squares(DiophSystem::parse("(- x 1) (- y 2)"));
                      for (int x = 0; x < 10; ++x)
                        for (int y = 0; y < 10; ++y)
                          if ((poly_eval(s, {{"x", x}, {"y", y}}) == 0) != (x == 1 && y == 2))
                            return false;
                      return true;
                    }});
  checks.push_back({"gpy gaps below 100 with bound 16: 24", [&] {
                      return gpy_gap_count(100, 16, T) == 24;
                    }});
  checks.push_back({"Li(x) between midpoint and trapezoid sums, x = 1000", [&] {
                      // 1/ln t is convex, so the midpoint rule underestimates and the
                      // trapezoid rule overestimates on every unit step.
                      Precision w(96);
                      Interval mid = Interval::from_long(0), trap = mid;
                      for (long t = 2; t < 1000; ++t) {
                        Dyadic m = Dyadic(BigInt(2 * t + 1), -1);
                        mid = add(mid, div(Interval::from_long(1), iv_ln(Interval::point(m), w), w), w);
                        Interval fa = div(Interval::from_long(1), iv_ln(Interval::from_long(t), w), w);
                        Interval fb = div(Interval::from_long(1), iv_ln(Interval::from_long(t + 1), w), w);
                        trap = add(trap, mul(add(fa, fb, w), Interval::point(Dyadic(BigInt(1), -1)), w), w);
                      }
                      Interval l = li(1000, w);
                      return mid.lo() <= l.hi() && l.lo() <= trap.hi();
                    }});
  checks.push_back({"Schoenfeld bound holds at x = 2657", [&] {
                      return schoenfeld_check(2657, T, pol).outcome == Outcome::Holds;
                    }});
  checks.push_back({"harmonic direct and asymptotic overlap at m = 10^5", [&] {
                      Interval d = harmonic_direct(100000, p96);
                      Interval a = harmonic_asymptotic(iv_ln(Interval::from_long(100000), p96),
                                                       BigNat(100000), p96);
                      return d.overlaps(a);
                    }});

  int failed = 0;
  for (auto& [name, fn] : checks) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      std::cerr << name << ": " << e.what() << "\n";
    }
    std::cout << (ok ? "PASS  " : "FAIL  ") << name << "\n";
    failed += !ok;
  }
  std::cout << (checks.size() - failed) << "/" << checks.size() << " passed\n";
  return failed ? kFails : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pi01: certified checks of arithmetic forms of RH and prime-distribution data"};
  app.require_subcommand(1);
  Config cfg;

  std::uint64_t from = 0, to = 0, n = 0, x = 0, q = 1, a_res = 1, bound = 16;
  std::string variant = "classic36", a_str, b_str, k_str, l_str, m_str, mode = "gap", m6 = "printed";
  std::string in_path, poly, at;
  std::int64_t pell_a = 2;
  std::uint64_t pell_n = 0, pell_count = 0;
  int theta_k = 4, theta_n = 0;
  double A = 1, B = -1, eps = 0.5;
  std::optional<std::uint64_t> stop_after;

  std::function<int()> action;

  // dmr
  auto* dmr = app.add_subcommand("dmr", "harmonic-sum criterion over delta(n)");
  dmr->require_subcommand(1);
  auto* dmr_scan = dmr->add_subcommand("scan", "scan a range of n");
  dmr_scan->add_option("--from", from, "first n")->required();
  dmr_scan->add_option("--to", to, "last n")->required();
  dmr_scan->add_option("--variant", variant)->check(CLI::IsMember({"classic36", "improved_gamma", "rational25"}))->capture_default_str();
  dmr_scan->add_option("--workers", cfg.workers, "worker threads (default: cores or PI01_WORKERS)");
  dmr_scan->add_option("--checkpoint", cfg.checkpoint, "JSON-lines checkpoint to create or resume");
  dmr_scan->add_option("--stop-after", stop_after, "stop after this many new records")->group("");
  dmr_scan->add_option("--sieve-cache", cfg.sieve_cache, "binary sieve cache file");
  add_policy(dmr_scan, cfg);
  add_format(dmr_scan, cfg);
  dmr_scan->callback([&] {
    action = [&] {
      if (from < 1 || from > to) throw UsageError("empty or invalid range: need 1 <= --from <= --to");
      ScanOptions opt;
      opt.n_lo = from;
      opt.n_hi = to;
      opt.variant = parse_variant(variant);
      opt.policy = cfg.policy();
      opt.workers = cfg.workers;
      if (!cfg.checkpoint.empty()) opt.checkpoint = cfg.checkpoint;
      opt.stop_after = stop_after;
      ChebyshevTable t = table_for(to, cfg);
      ScanReport r = scan_dmr(opt, t);
      std::cerr << "wall time " << r.wall_seconds << " s, " << r.resumed
                << " records resumed from checkpoint\n";
      std::string report = cfg.format == "csv" ? scan_csv(r) : r.to_json();
      if (!cfg.out.empty()) emit(report, cfg);
      std::cout << "dmr scan [" << from << ", " << to << "] " << variant << ": " << r.holds
                << " holds, " << r.fails << " fails, " << r.undecided << " undecided"
                << (r.complete() ? "" : " (incomplete)") << "\n";
      for (const auto& rec : r.records)
        if (rec.outcome == Outcome::Fails) std::cout << "counterexample: " << record_to_line(rec) << "\n";
      return exit_for_counts(r.fails, r.undecided);
    };
  });
  for (auto [name, oracle] : {std::pair{"check", false}, std::pair{"oracle", true}}) {
    auto* c = dmr->add_subcommand(name, oracle ? "direct-summation oracle (n <= 8)"
                                               : "certified check at one n");
    c->add_option("--n", n)->required();
    c->add_option("--variant", variant)->check(CLI::IsMember({"classic36", "improved_gamma", "rational25"}))->capture_default_str();
    add_policy(c, cfg);
    c->callback([&, oracle] {
      action = [&, oracle] {
        if (n < 1) throw UsageError("--n must be >= 1");
        ChebyshevTable t = table_for(n, cfg);
        BoundVariant v = parse_variant(variant);
        Verdict r = oracle ? dmr_oracle(n, v, cfg.policy(), t) : check_dmr(n, v, cfg.policy(), t);
        print_verdict("dmr n=" + std::to_string(n) + " " + variant, r);
        return exit_for(r.outcome);
      };
    });
  }

  // mat
  auto* mat = app.add_subcommand("mat", "psi(n) gap criterion and the explog system");
  mat->require_subcommand(1);
  auto* mat_scan = mat->add_subcommand("scan", "scan n for the gap bound or a counterexample system");
  mat_scan->add_option("--from", from)->required();
  mat_scan->add_option("--to", to)->required();
  mat_scan->add_option("--mode", mode, "gap: |psi(n)-n| bound; search: full (k,l,m,n) system")
      ->check(CLI::IsMember({"gap", "search"}))
      ->capture_default_str();
  mat_scan->add_option("--m6", m6)->check(CLI::IsMember({"printed", "derived"}))->capture_default_str();
  mat_scan->add_option("--sieve-cache", cfg.sieve_cache);
  add_policy(mat_scan, cfg);
  mat_scan->callback([&] {
    action = [&] {
      if (from < kPsiGapMinN || from > to) throw UsageError("need 600 <= --from <= --to");
      ChebyshevTable t = table_for(to, cfg);
      if (mode == "gap") {
        PsiGapScan r = psi_gap_scan(from, to, cfg.policy(), t);
        std::cout << "psi gap [" << from << ", " << to << "]: " << r.holds << " holds, " << r.fails
                  << " fails, " << r.undecided << " undecided\n";
        for (auto bad : r.not_holding) std::cout << "not holding at n=" << bad << "\n";
        return exit_for_counts(r.fails, r.undecided);
      }
      CounterexampleReport r = counterexample_search(
          from, to, cfg.policy(), t, m6 == "derived" ? M6Form::Derived : M6Form::Printed);
      std::cout << "counterexample search [" << from << ", " << to << "]: scanned " << r.scanned
                << ", " << (r.found ? "FOUND" : "none found") << "; |l - psi(n)| < 2 uncertified at "
                << r.s2_violations.size() << " n, |k - ln n| < 2 uncertified at "
                << r.s3_violations.size() << " n\n";
      if (r.found) {
        std::cout << certificate_json(*r.found, *r.found_report) << "\n";
        return kFails;
      }
      return (r.s2_violations.empty() && r.s3_violations.empty()) ? kOk : kUndecided;
    };
  });
  auto* mat_check = mat->add_subcommand("check", "evaluate the system conditions at n");
  mat_check->add_option("--n", n)->required();
  mat_check->add_option("--k", k_str, "default: smallest b with explog(n-1, b)");
  mat_check->add_option("--l", l_str, "default: smallest b with explog(m-1, b)");
  mat_check->add_option("--m", m_str, "default: lcm(1..n)");
  mat_check->add_option("--m6", m6)->check(CLI::IsMember({"printed", "derived"}))->capture_default_str();
  add_policy(mat_check, cfg);
  mat_check->callback([&] {
    action = [&] {
      ChebyshevTable t = table_for(n, cfg);
      MatSystem s;
      s.n = big_u(n);
      s.m = m_str.empty() ? lcm_upto(std::max<std::uint64_t>(n, 1), t) : parse_nat(m_str, "--m");
      s.k = k_str.empty() ? explog_find_b(n == 0 ? BigNat(0) : BigNat(s.n - 1)) : parse_nat(k_str, "--k");
      s.l = l_str.empty() ? explog_find_b(s.m - 1) : parse_nat(l_str, "--l");
      MatReport r = mat_conditions_check(s, cfg.policy(), t,
                                         m6 == "derived" ? M6Form::Derived : M6Form::Printed);
      std::cout << certificate_json(s, r) << "\n";
      return r.all() ? kFails : kOk;
    };
  });
  auto explog_action = [&] {
    BigNat a = parse_nat(a_str, "--a");
    if (b_str.empty()) {
      BigNat b = explog_find_b(a);
      auto r = explog_holds(a, b);
      std::cout << "explog(" << a << ", b) holds for b=" << b << ", witness x=" << *r.witness_x << "\n";
      return kOk;
    }
    BigNat b = parse_nat(b_str, "--b");
    auto r = explog_holds(a, b);
    if (r.holds)
      std::cout << "explog(" << a << ", " << b << ") holds, witness x=" << *r.witness_x << "\n";
    else
      std::cout << "explog(" << a << ", " << b << ") fails: " << refutation_name(*r.refutation) << "\n";
    return kOk;
  };
  for (CLI::App* parent : {mat, static_cast<CLI::App*>(&app)}) {
    auto* c = parent->add_subcommand("explog", "decide explog(a, b), or find b for a");
    c->add_option("--a", a_str)->required();
    c->add_option("--b", b_str);
    c->callback([&] { action = explog_action; });
  }

  // dioph
  auto* dio = app.add_subcommand("dioph", "diophantine toolkit");
  dio->require_subcommand(1);
  auto* combine = dio->add_subcommand("combine", "sum-of-squares combination of a system");
  combine->add_option("--in", in_path, "file with one s-expression per equation (default stdin)");
  combine->callback([&] {
    action = [&] {
      std::stringstream buf;
      if (in_path.empty()) {
        buf << std::cin.rdbuf();
      } else {
        std::ifstream is(in_path);
        if (!is) throw FormatError("cannot read " + in_path);
        buf << is.rdbuf();
      }
      std::cout << combine_sum_of_squares(DiophSystem::parse(buf.str())).to_sexpr() << "\n";
      return kOk;
    };
  });
  auto* eval = dio->add_subcommand("eval", "evaluate a polynomial");
  eval->add_option("--poly", poly)->required();
  eval->add_option("--at", at, "assignment such as x=7,y=4")->required();
  eval->callback([&] {
    action = [&] {
      std::cout << poly_eval(Polynomial::parse(poly), parse_assignment(at)) << "\n";
      return kOk;
    };
  });
  auto* pell = dio->add_subcommand("pell", "solutions of x^2 - (a^2-1) y^2 = 1");
  pell->add_option("--a", pell_a)->required();
  pell->add_option("--n", pell_n, "index of the solution");
  pell->add_option("--count", pell_count, "print the first COUNT solutions instead");
  pell->callback([&] {
    action = [&] {
      if (pell_count) {
        for (const auto& s : pell_prefix(pell_a, pell_count))
          std::cout << s.index << ' ' << s.chi << ' ' << s.psi << "\n";
      } else {
        auto s = pell_seq(pell_a, pell_n);
        std::cout << s.index << ' ' << s.chi << ' ' << s.psi << "\n";
      }
      return kOk;
    };
  });
  auto* theta = dio->add_subcommand("theta1", "prime-encoding constant and prime extraction");
  theta->add_option("--k", theta_k, "truncation K (1..6)")->capture_default_str();
  theta->add_option("--n", theta_n, "extract p_n (1 <= n < K)");
  theta->callback([&] {
    action = [&] {
      ChebyshevTable t = table_for(1000, cfg);
      if (theta_n)
        std::cout << prime_from_theta1(theta_n, theta_k, t) << "\n";
      else
        std::cout << decimal_string(theta1_partial(theta_k, t)) << "\n";
      return kOk;
    };
  });

  // eh
  auto* eh = app.add_subcommand("eh", "primes in progressions and level-of-distribution sums");
  eh->require_subcommand(1);
  auto* rec = eh->add_subcommand("record", "E(x;q,a)");
  rec->add_option("--x", x)->required();
  rec->add_option("--q", q)->required();
  rec->add_option("--a", a_res)->required();
  rec->add_option("--bits", cfg.bits)->capture_default_str();
  add_format(rec, cfg);
  rec->callback([&] {
    action = [&] {
      ChebyshevTable t = table_for(x, cfg);
      EhRecord r = error_term(x, q, a_res, t, cfg.precision());
      if (cfg.format == "csv") {
        emit(std::string(kRecordCsvHeader) + "\n" + csv_row(r) + "\n", cfg);
      } else {
        ojson j{{"x", r.x}, {"q", r.q}, {"a", r.a}, {"pi_qa", r.pi_qa},
                {"li_over_phi", r.li_over_phi.to_string()}, {"error", r.error.to_string()}};
        emit(j.dump(1) + "\n", cfg);
      }
      return kOk;
    };
  });
  auto level_out = [&](const LevelSumReport& r) {
    if (cfg.format == "csv") {
      emit(std::string(kLevelSumCsvHeader) + "\n" + csv_row(r) + "\n", cfg);
    } else {
      ojson j{{"x", r.x}, {"Q", r.Q}, {"regime", regime_name(r.regime)}, {"A", r.A}};
      if (r.B) j["B"] = *r.B;
      if (r.eps) j["eps"] = *r.eps;
      j["sum"] = r.sum.to_string();
      j["ratio"] = r.ratio.to_string();
      emit(j.dump(1) + "\n", cfg);
    }
  };
  auto* bv = eh->add_subcommand("bvsum", "sum of E*(x;q) for q <= sqrt(x)(ln x)^-B");
  bv->add_option("--x", x)->required();
  bv->add_option("-A,--A", A)->capture_default_str();
  bv->add_option("-B,--B", B, "default 3A+23");
  bv->add_option("--workers", cfg.workers);
  bv->add_option("--bits", cfg.bits)->capture_default_str();
  add_format(bv, cfg);
  bv->callback([&] {
    action = [&] {
      ChebyshevTable t = table_for(x, cfg);
      level_out(bv_sum(x, A, B < 0 ? bv_default_B(A) : B, t, cfg.precision(), cfg.workers));
      return kOk;
    };
  });
  auto* ehs = eh->add_subcommand("ehsum", "sum of E*(x;q) for q <= x^(1-eps)");
  ehs->add_option("--x", x)->required();
  ehs->add_option("--eps", eps)->required();
  ehs->add_option("-A,--A", A, "exponent in the reported ratio")->capture_default_str();
  ehs->add_option("--workers", cfg.workers);
  ehs->add_option("--bits", cfg.bits)->capture_default_str();
  add_format(ehs, cfg);
  ehs->callback([&] {
    action = [&] {
      ChebyshevTable t = table_for(x, cfg);
      level_out(eh_sum(x, eps, t, cfg.precision(), cfg.workers, A));
      return kOk;
    };
  });
  auto* fg = eh->add_subcommand("fghm", "modulus beyond which the averaged bound fails");
  fg->add_option("--x", x)->required();
  fg->add_option("-A,--A", A)->required();
  fg->add_option("--bits", cfg.bits)->capture_default_str();
  fg->callback([&] {
    action = [&] {
      std::cout << fghm_threshold(x, A, cfg.precision()).to_string() << "\n";
      return kOk;
    };
  });
  auto* gaps = eh->add_subcommand("gaps", "consecutive prime pairs up to x with small gaps");
  gaps->add_option("--x", x)->required();
  gaps->add_option("--bound", bound)->capture_default_str();
  gaps->callback([&] {
    action = [&] {
      ChebyshevTable t = table_for(x, cfg);
      std::cout << gpy_gap_count(x, bound, t) << "\n";
      return kOk;
    };
  });
  auto* sch = eh->add_subcommand("schoenfeld", "|pi(x) - Li(x)| < sqrt(x) ln x / (8 pi)");
  sch->add_option("--x", x)->required();
  sch->add_option("--to", to, "sweep change points from x to this height");
  add_policy(sch, cfg);
  sch->callback([&] {
    action = [&] {
      ChebyshevTable t = table_for(std::max(x, to), cfg);
      if (to) {
        SchoenfeldSweep r = schoenfeld_sweep(x, to, t, cfg.policy());
        std::cout << "schoenfeld [" << x << ", " << to << "]: " << r.points << " points, " << r.holds
                  << " holds, " << r.fails << " fails, " << r.undecided << " undecided\n";
        return exit_for_counts(r.fails, r.undecided);
      }
      Verdict v = schoenfeld_check(x, t, cfg.policy());
      print_verdict("schoenfeld x=" + std::to_string(x), v);
      return exit_for(v.outcome);
    };
  });

  auto* st = app.add_subcommand("selftest", "run the brute-force oracle checks");
  st->callback([&] { action = [] { return selftest(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const CheckpointMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}
