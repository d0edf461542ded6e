#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "oracles.hpp"
#include "pi01/checkpoint.hpp"
#include "pi01/dmr.hpp"
#include "pi01/errors.hpp"

using namespace pi01;

namespace {
const ChebyshevTable& table() {
  static ChebyshevTable t = ChebyshevTable::build(3000);
  return t;
}
std::filesystem::path tmp(const char* name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p;
}
std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}
}  // namespace

TEST_CASE("right-hand sides") {
  Precision p(96);
  CHECK(dmr_rhs(2, BoundVariant::Classic36, p) == Interval::from_long(288));
  CHECK(dmr_rhs(4, BoundVariant::Rational25, p).contains(Dyadic(1681)));
  CHECK(dmr_rhs(9, BoundVariant::Rational25, p).contains(Dyadic(25 * 729 + 10 * 27 + 1)));

  // (gamma + 5)^2 from the oracle's gamma
  mpf_class g = oracle::gamma_brent_mcmillan();
  CHECK(oracle::contains(dmr_rhs(1, BoundVariant::ImprovedGamma, p), (g + 5) * (g + 5), -80));
  // at n = 4: (g+4)^2 64 + 2 (g+4) 8 + 1
  CHECK(oracle::contains(dmr_rhs(4, BoundVariant::ImprovedGamma, p),
                         (g + 4) * (g + 4) * 64 + 16 * (g + 4) + 1, -70));
}

TEST_CASE("left-hand side paths agree") {
  const auto& T = table();
  Precision p(96);
  for (std::uint64_t n = 4; n <= 8; ++n) {
    Interval a = dmr_lhs(n, T, p, HarmonicPath::Asymptotic);
    Interval d = dmr_lhs(n, T, p, HarmonicPath::Direct);
    REQUIRE(a.overlaps(d));
  }
  // n = 3: delta = 2, (H_2 - 9/2)^2 = 9
  CHECK(dmr_lhs(3, T, p) == Interval::from_long(9));
  // n = 1: delta = 1, (1 - 1/2)^2
  CHECK(dmr_lhs(1, T, p).contains(BigRational(1, 4)));
}

TEST_CASE("single checks and the oracle") {
  const auto& T = table();
  PrecisionPolicy pol;
  CHECK(check_dmr(1, BoundVariant::Classic36, pol, T).outcome == Outcome::Holds);
  CHECK(check_dmr(3, BoundVariant::Classic36, pol, T).outcome == Outcome::Holds);
  for (auto v : kAllVariants) {
    CHECK(check_dmr(5, v, pol, T).outcome == Outcome::Holds);
    CHECK(dmr_oracle(2, v, pol, T).outcome == Outcome::Holds);
    CHECK(dmr_oracle(7, v, pol, T).outcome == check_dmr(7, v, pol, T).outcome);
  }
  CHECK_THROWS_AS(dmr_oracle(9, BoundVariant::Classic36, pol, T), CapacityError);
  CHECK(parse_variant("improved_gamma") == BoundVariant::ImprovedGamma);
  CHECK_THROWS_AS(parse_variant("nope"), DomainError);
}

TEST_CASE("scan [1,100]") {
  ScanOptions opt;
  opt.n_lo = 1;
  opt.n_hi = 100;
  ScanReport r = scan_dmr(opt, table());
  CHECK(r.holds == 100);
  CHECK(r.fails == 0);
  CHECK(r.undecided == 0);
  CHECK(r.complete());
  CHECK(r.records.front().n == 1);
  CHECK(r.records.back().n == 100);

  opt.n_lo = 5;
  opt.n_hi = 4;
  CHECK_THROWS_AS(scan_dmr(opt, table()), DomainError);
  opt.n_lo = 1;
  opt.n_hi = 5000;
  CHECK_THROWS_AS(scan_dmr(opt, table()), RangeError);
}

TEST_CASE("checkpoint record lines roundtrip") {
  ScanOptions opt;
  opt.n_lo = 1;
  opt.n_hi = 30;
  for (const auto& rec : scan_dmr(opt, table()).records)
    REQUIRE(record_from_line(record_to_line(rec)) == rec);
  CHECK_THROWS_AS(record_from_line("{\"n\":1"), FormatError);
}

TEST_CASE("checkpoint resume with fault injection") {
  const auto& T = table();
  ScanOptions opt;
  opt.n_lo = 1;
  opt.n_hi = 400;
  opt.workers = 3;
  std::string reference = scan_dmr(opt, T).to_json();

  auto path = tmp("pi01_ckpt_test.jsonl");
  opt.checkpoint = path;
  opt.stop_after = 123;
  ScanReport partial = scan_dmr(opt, T);
  CHECK_FALSE(partial.complete());

  // torn write: half a record at the end of the file
  {
    std::ofstream os(path, std::ios::app | std::ios::binary);
    os << "{\"n\":999,\"variant\":\"classic";
  }
  opt.stop_after.reset();
  ScanReport resumed = scan_dmr(opt, T);
  CHECK(resumed.resumed >= 123);
  CHECK(resumed.complete());
  CHECK(resumed.to_json() == reference);

  // a second resume only reads
  std::string before = slurp(path);
  ScanReport again = scan_dmr(opt, T);
  CHECK(again.resumed == 400);
  CHECK(again.to_json() == reference);
  CHECK(slurp(path) == before);

  // different configuration refuses to resume
  ScanOptions other = opt;
  other.variant = BoundVariant::Rational25;
  CHECK_THROWS_AS(scan_dmr(other, T), CheckpointMismatch);
  other = opt;
  other.policy.max_bits = 2048;
  CHECK_THROWS_AS(scan_dmr(other, T), CheckpointMismatch);
  // worker count is not part of the configuration
  other = opt;
  other.workers = 1;
  CHECK_NOTHROW(scan_dmr(other, T));

  std::filesystem::remove(path);
}

TEST_CASE("report json shape") {
  ScanOptions opt;
  opt.n_lo = 2;
  opt.n_hi = 3;
  auto j = nlohmann::json::parse(scan_dmr(opt, table()).to_json());
  CHECK(j["from"] == 2);
  CHECK(j["to"] == 3);
  CHECK(j["variant"] == "classic36");
  CHECK(j["holds"] == 2);
  CHECK(j["records"].size() == 2);
  CHECK(j["records"][0]["verdict"] == "holds");
}
