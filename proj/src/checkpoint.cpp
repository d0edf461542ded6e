#include "pi01/checkpoint.hpp"

#include <cinttypes>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace pi01 {

using ojson = nlohmann::ordered_json;

std::string scan_config_json(const ScanOptions& opt) {
  ojson j;
  j["command"] = "dmr-scan";
  j["from"] = opt.n_lo;
  j["to"] = opt.n_hi;
  j["variant"] = variant_name(opt.variant);
  j["bits"] = opt.policy.initial_bits;
  j["max_bits"] = opt.policy.max_bits;
  j["growth"] = std::to_string(opt.policy.growth_num) + "/" + std::to_string(opt.policy.growth_den);
  return j.dump();
}

std::string config_hash(const std::string& config_json) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(config_json));
  return buf;
}

std::string record_to_line(const ScanRecord& r) {
  ojson j;
  j["n"] = r.n;
  j["variant"] = variant_name(r.variant);
  j["verdict"] = outcome_name(r.outcome);
  j["lhs_lo"] = r.lhs.lo().to_string();
  j["lhs_hi"] = r.lhs.hi().to_string();
  j["rhs_lo"] = r.rhs.lo().to_string();
  j["rhs_hi"] = r.rhs.hi().to_string();
  j["bits"] = r.bits;
  return j.dump();
}

ScanRecord record_from_line(const std::string& line) {
  try {
    auto j = ojson::parse(line);
    ScanRecord r;
    r.n = j.at("n").get<std::uint64_t>();
    r.variant = parse_variant(j.at("variant").get<std::string>());
    r.outcome = parse_outcome(j.at("verdict").get<std::string>());
    r.lhs = Interval(Dyadic::parse(j.at("lhs_lo").get<std::string>()),
                     Dyadic::parse(j.at("lhs_hi").get<std::string>()));
    r.rhs = Interval(Dyadic::parse(j.at("rhs_lo").get<std::string>()),
                     Dyadic::parse(j.at("rhs_hi").get<std::string>()));
    r.bits = j.at("bits").get<int>();
    return r;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad checkpoint record: ") + e.what());
  }
}

namespace {

std::string header_line(const std::string& config_json) {
  ojson h;
  h["config"] = ojson::parse(config_json);
  h["config_hash"] = config_hash(config_json);
  return h.dump();
}

}  // namespace

Checkpoint::Checkpoint(const std::filesystem::path& path, const std::string& config_json) {
  std::string content;
  if (std::filesystem::exists(path)) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot read checkpoint " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    content = ss.str();
  }

  // Only newline-terminated lines count; a trailing fragment is what an
  // interrupted append leaves behind.
  std::size_t good = content.rfind('\n');
  good = good == std::string::npos ? 0 : good + 1;
  if (good < content.size()) {
    dropped_partial_ = true;
    std::cerr << "warning: ignoring partial trailing line in checkpoint " << path.string()
              << "\n";
  }

  bool have_header = false;
  std::size_t pos = 0;
  while (pos < good) {
    std::size_t end = content.find('\n', pos);
    std::string line = content.substr(pos, end - pos);
    pos = end + 1;
    if (!have_header) {
      ojson h;
      try {
        h = ojson::parse(line);
      } catch (const std::exception&) {
        throw FormatError("checkpoint " + path.string() + " has a malformed header");
      }
      std::string want = config_hash(config_json);
      if (!h.contains("config_hash") || h["config_hash"] != want)
        throw CheckpointMismatch("checkpoint " + path.string() +
                                 " was written with a different configuration (hash " +
                                 h.value("config_hash", std::string("?")) + ", expected " + want +
                                 "); refusing to resume");
      have_header = true;
      continue;
    }
    loaded_.push_back(record_from_line(line));
  }

  if (dropped_partial_) std::filesystem::resize_file(path, good);
  out_ = std::fopen(path.string().c_str(), "ab");
  if (!out_) throw FormatError("cannot open checkpoint for appending: " + path.string());
  if (!have_header) {
    std::string h = header_line(config_json) + "\n";
    std::fwrite(h.data(), 1, h.size(), out_);
    std::fflush(out_);
  }
}

Checkpoint::~Checkpoint() {
  if (out_) std::fclose(out_);
}

void Checkpoint::append(const ScanRecord& r) {
  std::string line = record_to_line(r) + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  if (std::fwrite(line.data(), 1, line.size(), out_) != line.size() || std::fflush(out_) != 0)
    throw FormatError("failed appending to checkpoint");
}

}  // namespace pi01
