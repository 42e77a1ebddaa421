#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "vmorse/engine.hpp"

namespace vm {

// Stable process exit codes (also listed in the README).
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalidInput = 2,
  kExitBudget = 3,
  kExitVerifyFailed = 4,
  kExitMissingRun = 5,
  kExitLocked = 6,
  kExitIo = 7,
  kExitOverflow = 8,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
        line(line), col(col) {}
  int line, col;
};

// Seed text format:
//   # comment
//   mu 10
//   matrix
//   <mu rows of mu integers>
//   points
//   real <inertia> neg|pos     one line per slot, lowest value first
//   complex neg|pos            two consecutive lines per conjugate pair
Morsification parse_seed(const std::string& text);
Morsification load_seed(const std::string& path);
std::string format_seed(const Morsification& s, const std::string& comment = "");

std::string read_file(const std::string& path);
std::string digest_hex(const std::string& bytes);  // 64-bit FNV-1a

struct Manifest {
  int format = 1;
  std::string code_version;
  std::string seed_path;
  std::string seed_digest;
  RuleConfig config;
  Budget budget;
  int threads = 1;
  std::string started, finished;
  bool closed = false;
  std::string status;
  uint64_t total = 0;
  std::map<int, uint64_t> ind_histogram;
  double seconds = 0;
  bool has_components = false;
};

std::string manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const std::string& text);
void write_manifest(const std::string& dir, const Manifest& m);
Manifest read_manifest(const std::string& dir);  // throws std::runtime_error
std::string now_utc();
std::string code_version();

// Exclusive ownership of a run directory for the lifetime of the object.
class RunLock {
 public:
  explicit RunLock(const std::string& dir);
  ~RunLock();
  RunLock(const RunLock&) = delete;
  RunLock& operator=(const RunLock&) = delete;

 private:
  std::string path_;
};

class LockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// states.bin: header, then records sorted by key.
void write_states(const std::string& path, const StateStore& store);
StateStore read_states(const std::string& path);

// components.bin: header, component table, then one component id per record
// of states.bin (same order).
void write_components(const std::string& path, const StateStore& store, const Partition& p);
Partition read_components(const std::string& path);

}  // namespace vm
