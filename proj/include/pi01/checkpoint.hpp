#pragma once

#include <cstdio>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "pi01/dmr.hpp"
#include "pi01/errors.hpp"

namespace pi01 {

// Refusal to resume a checkpoint written under a different configuration.
class CheckpointMismatch : public FormatError {
 public:
  using FormatError::FormatError;
};

// Canonical configuration line for a scan (workers and paths excluded, so
// serial and parallel runs share checkpoints) and its FNV-1a hash.
std::string scan_config_json(const ScanOptions& opt);
std::string config_hash(const std::string& config_json);

std::string record_to_line(const ScanRecord& r);
ScanRecord record_from_line(const std::string& line);

// Append-only JSON-lines checkpoint: a header {"config":…,"config_hash":…}
// followed by one record per line. Opening an existing file validates the
// header, loads complete records and truncates a partial trailing line.
class Checkpoint {
 public:
  Checkpoint(const std::filesystem::path& path, const std::string& config_json);
  ~Checkpoint();
  Checkpoint(const Checkpoint&) = delete;
  Checkpoint& operator=(const Checkpoint&) = delete;

  const std::vector<ScanRecord>& loaded() const { return loaded_; }
  bool dropped_partial_line() const { return dropped_partial_; }
  void append(const ScanRecord& r);

 private:
  std::mutex mu_;
  std::FILE* out_ = nullptr;
  std::vector<ScanRecord> loaded_;
  bool dropped_partial_ = false;
};

}  // namespace pi01
