#include "pi01/dmr.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "pi01/checkpoint.hpp"
#include "pi01/elementary.hpp"
#include "pi01/errors.hpp"
#include "pi01/harmonic.hpp"

namespace pi01 {

namespace {

int ceil_log2(std::uint64_t v) {
  int k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < v) ++k;
  return k;
}

// Accumulated rounding in psi_1(n) is about n^2 ulps, so the working
// precision never drops below 64 + 2 log2(n+1).
Precision working(std::uint64_t n, Precision p) {
  return Precision(std::max(p.bits(), 64 + 2 * ceil_log2(n + 1))).plus(16);
}

}  // namespace

std::string variant_name(BoundVariant v) {
  switch (v) {
    case BoundVariant::Classic36:
      return "classic36";
    case BoundVariant::ImprovedGamma:
      return "improved_gamma";
    case BoundVariant::Rational25:
      break;
  }
  return "rational25";
}

BoundVariant parse_variant(const std::string& s) {
  for (BoundVariant v : kAllVariants)
    if (variant_name(v) == s) return v;
  throw DomainError("unknown bound variant '" + s +
                    "' (expected classic36, improved_gamma or rational25)");
}

Interval dmr_lhs(std::uint64_t n, const ChebyshevTable& table, Precision p, HarmonicPath path) {
  if (n < 1) throw DomainError("dmr_lhs needs n >= 1");
  Precision w = working(n, p);
  bool direct = path == HarmonicPath::Direct || (path == HarmonicPath::Auto && n <= 3);
  Interval h;
  if (direct) {
    h = harmonic_direct(delta_exact(n, table), w);
  } else {
    if (n < 4) throw DomainError("asymptotic harmonic path needs delta(n) >= 10, i.e. n >= 4");
    Interval ln_m = psi1(n, table, w);
    Dyadic m_lower = n <= kDeltaExactCap ? Dyadic::from_int(delta_exact(n, table))
                                         : iv_exp(Interval::point(ln_m.lo()), w).lo();
    h = harmonic_asymptotic(ln_m, m_lower, w);
  }
  BigInt nn = big_u(n);
  Interval half = Interval::point(Dyadic(nn * nn, -1));
  return square(sub(h, half, w), w);
}

Interval dmr_rhs(std::uint64_t n, BoundVariant v, Precision p) {
  if (n < 1) throw DomainError("dmr_rhs needs n >= 1");
  BigInt nn = big_u(n);
  BigInt n3 = nn * nn * nn;
  if (v == BoundVariant::Classic36) return Interval::from_int(36 * n3);
  Precision w = p.plus(8);
  Interval cube = Interval::from_int(n3);
  Interval s = sqrt(cube, w);  // n^(3/2)
  Interval one = Interval::from_long(1);
  if (v == BoundVariant::Rational25) {
    Interval t = add(Interval::from_int(25 * n3), mul(Interval::from_long(10), s, w), w);
    return add(t, one, w);
  }
  // (gamma+4)^2 n^3 + 2(gamma+4) n^(3/2) + 1
  Interval g4 = add(gamma_enclosure(w), Interval::from_long(4), w);
  Interval t = mul(square(g4, w), cube, w);
  t = add(t, mul(mul(Interval::from_long(2), g4, w), s, w), w);
  return add(t, one, w);
}

namespace {

Verdict check_with(std::uint64_t n, BoundVariant v, const PrecisionPolicy& policy,
                   const ChebyshevTable& table, HarmonicPath path) {
  Verdict out = certify_less(policy, [&](Precision p) {
    return std::make_pair(dmr_lhs(n, table, p, path), dmr_rhs(n, v, p));
  });
  if (out.outcome == Outcome::Fails) {
    nlohmann::ordered_json c;
    c["criterion"] = "dmr";
    c["n"] = n;
    c["variant"] = variant_name(v);
    c["lhs_lo"] = out.lhs.lo().to_string();
    c["lhs_hi"] = out.lhs.hi().to_string();
    c["rhs_lo"] = out.rhs.lo().to_string();
    c["rhs_hi"] = out.rhs.hi().to_string();
    c["bits"] = out.precision_used;
    out.certificate = c.dump();
  }
  return out;
}

}  // namespace

Verdict check_dmr(std::uint64_t n, BoundVariant v, const PrecisionPolicy& policy,
                  const ChebyshevTable& table) {
  if (n < 1) throw DomainError("check_dmr needs n >= 1");
  return check_with(n, v, policy, table, HarmonicPath::Auto);
}

Verdict dmr_oracle(std::uint64_t n, BoundVariant v, const PrecisionPolicy& policy,
                   const ChebyshevTable& table, unsigned cap) {
  if (n < 1) throw DomainError("dmr_oracle needs n >= 1");
  if (n > cap)
    throw CapacityError("dmr_oracle: n = " + std::to_string(n) + " exceeds the oracle cap " +
                        std::to_string(cap));
  return check_with(n, v, policy, table, HarmonicPath::Direct);
}

std::string ScanReport::to_json() const {
  nlohmann::ordered_json j;
  j["from"] = n_lo;
  j["to"] = n_hi;
  j["variant"] = variant_name(variant);
  j["complete"] = complete();
  j["holds"] = holds;
  j["fails"] = fails;
  j["undecided"] = undecided;
  j["max_undecided_width"] = max_undecided_width.to_string();
  auto& arr = j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(nlohmann::ordered_json::parse(record_to_line(r)));
  return j.dump(1) + "\n";
}

ScanReport scan_dmr(const ScanOptions& opt, const ChebyshevTable& table) {
  if (opt.n_lo < 1 || opt.n_lo > opt.n_hi)
    throw DomainError("scan range must satisfy 1 <= from <= to");
  if (opt.n_hi > table.limit() + 1)
    throw RangeError("scan upper end " + std::to_string(opt.n_hi) + " needs a sieve up to " +
                     std::to_string(opt.n_hi - 1));
  opt.policy.validate();
  auto t0 = std::chrono::steady_clock::now();

  ScanReport rep;
  rep.n_lo = opt.n_lo;
  rep.n_hi = opt.n_hi;
  rep.variant = opt.variant;

  const std::uint64_t count = opt.n_hi - opt.n_lo + 1;
  std::vector<char> done(count, 0);
  std::unique_ptr<Checkpoint> cp;
  if (opt.checkpoint) {
    cp = std::make_unique<Checkpoint>(*opt.checkpoint, scan_config_json(opt));
    for (const auto& r : cp->loaded()) {
      if (r.n < opt.n_lo || r.n > opt.n_hi || done[r.n - opt.n_lo]) continue;
      done[r.n - opt.n_lo] = 1;
      rep.records.push_back(r);
    }
  }
  rep.resumed = rep.records.size();

  std::vector<std::uint64_t> todo;
  for (std::uint64_t i = 0; i < count; ++i)
    if (!done[i]) todo.push_back(opt.n_lo + i);

  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> written{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr failure;

  auto work = [&] {
    try {
      while (!stop.load()) {
        std::size_t i = next.fetch_add(1);
        if (i >= todo.size()) break;
        std::uint64_t n = todo[i];
        Verdict v = check_dmr(n, opt.variant, opt.policy, table);
        ScanRecord r{n, opt.variant, v.outcome, v.lhs, v.rhs, v.precision_used};
        std::lock_guard<std::mutex> lock(mu);
        if (opt.stop_after && written >= *opt.stop_after) break;  // finished after the cut
        rep.records.push_back(r);
        if (cp) cp->append(r);
        std::uint64_t w = ++written;
        if (opt.stop_after && w >= *opt.stop_after) stop = true;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };

  unsigned workers = std::max(1u, opt.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(rep.records.begin(), rep.records.end(),
            [](const ScanRecord& a, const ScanRecord& b) { return a.n < b.n; });
  for (const auto& r : rep.records) {
    switch (r.outcome) {
      case Outcome::Holds:
        ++rep.holds;
        break;
      case Outcome::Fails:
        ++rep.fails;
        break;
      case Outcome::Undecided: {
        ++rep.undecided;
        Dyadic w = add(r.lhs.width(), r.rhs.width(), 64, Round::Up);  // width of the gap
        rep.max_undecided_width = std::max(rep.max_undecided_width, w);
        break;
      }
    }
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace pi01
