#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "vmorse/rules.hpp"
#include "vmorse/state.hpp"

namespace vm {

struct Record {
  Key key;
  uint32_t conj = 0;
};

// Insertion-ordered set of records with an open-addressing index.
class StateStore {
 public:
  // Returns (index, inserted).
  std::pair<uint32_t, bool> insert(const Record& r);
  int64_t find(const Key& k) const;
  size_t size() const { return recs_.size(); }
  const Record& operator[](size_t i) const { return recs_[i]; }
  const std::vector<Record>& records() const { return recs_; }
  size_t memory_bytes() const { return recs_.capacity() * sizeof(Record) + slots_.capacity() * sizeof(uint32_t); }
  void reserve(size_t n);

 private:
  void rehash(size_t cap);
  std::vector<Record> recs_;
  std::vector<uint32_t> slots_;  // 0 = empty, else index + 1
};

struct Budget {
  uint64_t max_states = 100'000'000;
  uint64_t mem_bytes = 0;  // 0 = unlimited
  double seconds = 0;      // 0 = unlimited
};

enum class RunStatus : uint8_t { closed, state_cap, memory_cap, time_cap, overflow };

std::string to_string(RunStatus);

struct RunOptions {
  int threads = 1;
  uint64_t checkpoint_every = 0;  // insertions between checkpoints; 0 = none
  std::string checkpoint_path;
  bool resume = false;
  std::function<void(uint64_t expanded, uint64_t stored)> progress;
};

struct RunResult {
  RuleConfig config;
  StateStore store;
  RunStatus status = RunStatus::closed;
  uint64_t expanded = 0;
  std::map<int, uint64_t> ind_histogram;
  double seconds = 0;

  bool closed() const { return status == RunStatus::closed; }
  uint64_t total() const { return store.size(); }
};

// Breadth-first closure of the class of seed. Blocks of the queue are
// expanded in parallel and merged in queue order, so the store (contents and
// order) does not depend on the thread count.
RunResult enumerate(const Morsification& seed, const RuleConfig& cfg, const Budget& budget = {},
                    const RunOptions& opt = {});

struct ComponentSummary {
  uint64_t card = 0;
  int ind = 0;
  Key representative;  // smallest key
  bool all_real = true;
  bool has_nonreal = false;
  bool lowest_is_saddle = false;  // somewhere in the component
  int min_real_points = kMaxMu;
};

struct Partition {
  std::vector<uint32_t> component_of;  // per store index
  std::vector<ComponentSummary> components;
};

// Restricted-reachability classes of a run's store, ordered by
// (ind, card descending, representative).
Partition components(const RunResult& run, int threads = 1);

ComponentSummary summarize(const StateStore& store);

// Restricted class of one state.
ComponentSummary component_of(const Morsification& seed, RuleConfig cfg, const Budget& budget = {},
                              bool* closed = nullptr);

// Evaluate a predicate name over a finished summary: has-nonreal, all-real,
// lowest-is-saddle.
bool query_component(const ComponentSummary& c, const std::string& predicate);

struct ScaleMember {
  int k = 0;
  bool valid = true;  // false when the zero level would split a pair
  bool closed = true;
  ComponentSummary comp;
};

std::vector<ScaleMember> standard_scale(const Morsification& base, const RuleConfig& cfg, const Budget& budget = {});

struct GradedLevel {
  int m = 0;
  uint64_t total = 0;
  bool closed = true;
  std::map<int, uint64_t> ind_histogram;
  std::vector<ComponentSummary> components;
};

struct GradedEdge {
  int m = 0;  // child level
  size_t child = 0;
  size_t parent = 0;
};

struct GradedGraph {
  std::vector<GradedLevel> levels;
  std::vector<GradedEdge> edges;
};

GradedGraph graded_graph(const Morsification& seed, int m_from, int m_to, RuleConfig cfg, const Budget& budget = {},
                         int threads = 1);

// Checkpoint files: insertion-ordered records plus the queue position.
void write_checkpoint(const std::string& path, const RunResult& run);
bool read_checkpoint(const std::string& path, RunResult& run);

}  // namespace vm
