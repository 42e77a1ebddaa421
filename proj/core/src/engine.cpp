#include "vmorse/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <thread>

namespace vm {

// ---- store ----

void StateStore::reserve(size_t n) {
  recs_.reserve(n);
  size_t cap = 16;
  while (cap < 2 * n) cap <<= 1;
  if (cap > slots_.size()) rehash(cap);
}

void StateStore::rehash(size_t cap) {
  slots_.assign(cap, 0);
  const size_t mask = cap - 1;
  for (size_t i = 0; i < recs_.size(); ++i) {
    size_t h = KeyHash{}(recs_[i].key) & mask;
    while (slots_[h]) h = (h + 1) & mask;
    slots_[h] = static_cast<uint32_t>(i + 1);
  }
}

int64_t StateStore::find(const Key& k) const {
  if (slots_.empty()) return -1;
  const size_t mask = slots_.size() - 1;
  for (size_t h = KeyHash{}(k) & mask;; h = (h + 1) & mask) {
    uint32_t s = slots_[h];
    if (!s) return -1;
    if (recs_[s - 1].key == k) return s - 1;
  }
}

std::pair<uint32_t, bool> StateStore::insert(const Record& r) {
  if (2 * (recs_.size() + 1) > slots_.size()) rehash(std::max<size_t>(16, slots_.size() * 2));
  const size_t mask = slots_.size() - 1;
  size_t h = KeyHash{}(r.key) & mask;
  for (;; h = (h + 1) & mask) {
    uint32_t s = slots_[h];
    if (!s) break;
    if (recs_[s - 1].key == r.key) return {s - 1, false};
  }
  recs_.push_back(r);
  slots_[h] = static_cast<uint32_t>(recs_.size());
  return {static_cast<uint32_t>(recs_.size() - 1), true};
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::closed: return "closed";
    case RunStatus::state_cap: return "state-cap";
    case RunStatus::memory_cap: return "memory-cap";
    case RunStatus::time_cap: return "time-cap";
    case RunStatus::overflow: return "overflow";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Run fn(i) for i in [begin, end) on up to `threads` workers, contiguous chunks.
template <class Fn>
void parallel_for(size_t begin, size_t end, int threads, Fn&& fn) {
  size_t n = end - begin;
  if (threads <= 1 || n < 64) {
    for (size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  size_t nt = std::min<size_t>(threads, n);
  std::vector<std::thread> pool;
  for (size_t t = 0; t < nt; ++t) {
    size_t a = begin + n * t / nt, b = begin + n * (t + 1) / nt;
    pool.emplace_back([a, b, &fn] {
      for (size_t i = a; i < b; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Neighbour records of one stored record; false on key overflow.
bool neighbor_records(const Record& rec, const RuleConfig& cfg, bool with_main, std::vector<Morsification>& scratch,
                      std::vector<Record>& out) {
  out.clear();
  class_neighbors(decode_key(rec.key, rec.conj), cfg, with_main, scratch);
  for (const Morsification& s : scratch) {
    try {
      out.push_back({encode_key(s), conj_bits(s)});
    } catch (const StateError&) {
      return false;
    }
  }
  return true;
}

void fill_histogram(RunResult& run) {
  run.ind_histogram.clear();
  for (const Record& r : run.store.records()) ++run.ind_histogram[compute_ind(decode_key(r.key))];
}

constexpr char kCheckpointMagic[4] = {'V', 'M', 'C', 'K'};
constexpr uint32_t kCheckpointVersion = 1;

std::array<uint8_t, 8> pack_config(const RuleConfig& c) {
  return {static_cast<uint8_t>(c.mode), static_cast<uint8_t>(c.m_bound), static_cast<uint8_t>(c.gauge),
          static_cast<uint8_t>(c.birth), static_cast<uint8_t>(c.complex_swap), static_cast<uint8_t>(c.layout), 0, 0};
}

}  // namespace

void write_checkpoint(const std::string& path, const RunResult& run) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write checkpoint " + tmp);
    os.write(kCheckpointMagic, 4);
    os.write(reinterpret_cast<const char*>(&kCheckpointVersion), 4);
    auto cfg = pack_config(run.config);
    os.write(reinterpret_cast<const char*>(cfg.data()), cfg.size());
    uint64_t expanded = run.expanded, count = run.store.size();
    os.write(reinterpret_cast<const char*>(&expanded), 8);
    os.write(reinterpret_cast<const char*>(&count), 8);
    for (const Record& r : run.store.records()) {
      os.write(reinterpret_cast<const char*>(r.key.b.data()), r.key.b.size());
      os.write(reinterpret_cast<const char*>(&r.conj), 4);
    }
    if (!os) throw std::runtime_error("short write on checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

bool read_checkpoint(const std::string& path, RunResult& run) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  char magic[4];
  uint32_t version = 0;
  std::array<uint8_t, 8> cfg{};
  uint64_t expanded = 0, count = 0;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&version), 4);
  is.read(reinterpret_cast<char*>(cfg.data()), cfg.size());
  is.read(reinterpret_cast<char*>(&expanded), 8);
  is.read(reinterpret_cast<char*>(&count), 8);
  if (!is || std::memcmp(magic, kCheckpointMagic, 4) != 0 || version != kCheckpointVersion)
    throw std::runtime_error("not a checkpoint file: " + path);
  if (cfg != pack_config(run.config)) throw std::runtime_error("checkpoint was written under a different configuration");
  run.store = StateStore();
  run.store.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    Record r;
    is.read(reinterpret_cast<char*>(r.key.b.data()), r.key.b.size());
    is.read(reinterpret_cast<char*>(&r.conj), 4);
    if (!is) throw std::runtime_error("truncated checkpoint " + path);
    run.store.insert(r);
  }
  run.expanded = expanded;
  return true;
}

RunResult enumerate(const Morsification& seed, const RuleConfig& cfg, const Budget& budget, const RunOptions& opt) {
  const auto t0 = Clock::now();
  RunResult run;
  run.config = cfg;
  const bool with_main = cfg.mode == Mode::main;
  const int threads = std::max(1, opt.threads);

  bool resumed = opt.resume && !opt.checkpoint_path.empty() && read_checkpoint(opt.checkpoint_path, run);
  if (!resumed) {
    Morsification c = canonical_form(seed, cfg.gauge);
    run.store.insert({encode_key(c), conj_bits(c)});
  }

  const size_t block = 2048 * static_cast<size_t>(threads);
  std::vector<std::vector<Record>> found(block);
  std::vector<std::vector<Morsification>> scratch(block);
  uint64_t last_checkpoint = run.store.size();
  std::atomic<bool> overflow{false};

  while (run.expanded < run.store.size()) {
    const size_t begin = run.expanded, end = std::min(run.store.size(), begin + block);
    parallel_for(begin, end, threads, [&](size_t i) {
      if (!neighbor_records(run.store[i], cfg, with_main, scratch[i - begin], found[i - begin])) overflow = true;
    });
    if (overflow) {
      run.status = RunStatus::overflow;
      break;
    }
    bool capped = false;
    for (size_t i = begin; i < end && !capped; ++i) {
      for (const Record& r : found[i - begin]) {
        if (run.store.find(r.key) >= 0) continue;
        if (run.store.size() >= budget.max_states) {
          capped = true;
          break;
        }
        run.store.insert(r);
      }
    }
    if (capped) {
      run.status = RunStatus::state_cap;
      break;
    }
    run.expanded = end;
    if (budget.mem_bytes && run.store.memory_bytes() > budget.mem_bytes) {
      run.status = RunStatus::memory_cap;
      break;
    }
    if (budget.seconds > 0 && std::chrono::duration<double>(Clock::now() - t0).count() > budget.seconds) {
      run.status = RunStatus::time_cap;
      break;
    }
    if (opt.checkpoint_every && !opt.checkpoint_path.empty() &&
        run.store.size() - last_checkpoint >= opt.checkpoint_every) {
      write_checkpoint(opt.checkpoint_path, run);
      last_checkpoint = run.store.size();
    }
    if (opt.progress) opt.progress(run.expanded, run.store.size());
  }
  if (!run.closed() && !opt.checkpoint_path.empty() && run.status != RunStatus::overflow)
    write_checkpoint(opt.checkpoint_path, run);
  fill_histogram(run);
  run.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return run;
}

// ---- components ----

namespace {

struct UnionFind {
  std::vector<uint32_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void absorb(ComponentSummary& c, const Record& r, bool first) {
  Morsification s = decode_key(r.key);
  int real = s.real_count();
  if (first) {
    c.ind = compute_ind(s);
    c.representative = r.key;
  } else if (r.key < c.representative) {
    c.representative = r.key;
  }
  ++c.card;
  if (real < s.mu) {
    c.has_nonreal = true;
    c.all_real = false;
  }
  if (real > 0 && s.kind[0] == kSaddle) c.lowest_is_saddle = true;
  c.min_real_points = std::min(c.min_real_points, real);
}

bool summary_order(const ComponentSummary& a, const ComponentSummary& b) {
  if (a.ind != b.ind) return a.ind < b.ind;
  if (a.card != b.card) return a.card > b.card;
  return a.representative < b.representative;
}

}  // namespace

ComponentSummary summarize(const StateStore& store) {
  ComponentSummary c;
  for (size_t i = 0; i < store.size(); ++i) absorb(c, store[i], i == 0);
  return c;
}

Partition components(const RunResult& run, int threads) {
  const StateStore& st = run.store;
  const size_t n = st.size();
  RuleConfig cfg = run.config;
  UnionFind uf(n);
  threads = std::max(1, threads);
  const size_t block = 2048 * static_cast<size_t>(threads);
  std::vector<std::vector<Record>> found(block);
  std::vector<std::vector<Morsification>> scratch(block);
  for (size_t begin = 0; begin < n; begin += block) {
    size_t end = std::min(n, begin + block);
    parallel_for(begin, end, threads, [&](size_t i) {
      neighbor_records(st[i], cfg, false, scratch[i - begin], found[i - begin]);
    });
    for (size_t i = begin; i < end; ++i)
      for (const Record& r : found[i - begin]) {
        int64_t j = st.find(r.key);
        if (j >= 0) uf.unite(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
      }
  }
  std::vector<uint32_t> root_id(n, UINT32_MAX);
  std::vector<ComponentSummary> comps;
  Partition p;
  p.component_of.resize(n);
  for (size_t i = 0; i < n; ++i) {
    uint32_t r = uf.find(static_cast<uint32_t>(i));
    bool first = root_id[r] == UINT32_MAX;
    if (first) {
      root_id[r] = static_cast<uint32_t>(comps.size());
      comps.emplace_back();
    }
    absorb(comps[root_id[r]], st[i], first);
    p.component_of[i] = root_id[r];
  }
  std::vector<uint32_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) { return summary_order(comps[a], comps[b]); });
  std::vector<uint32_t> rank(comps.size());
  for (size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = static_cast<uint32_t>(i);
    p.components.push_back(comps[order[i]]);
  }
  for (auto& c : p.component_of) c = rank[c];
  return p;
}

ComponentSummary component_of(const Morsification& seed, RuleConfig cfg, const Budget& budget, bool* closed) {
  cfg.mode = Mode::restricted;
  RunResult run = enumerate(seed, cfg, budget);
  if (closed) *closed = run.closed();
  return summarize(run.store);
}

bool query_component(const ComponentSummary& c, const std::string& predicate) {
  if (predicate == "has-nonreal") return c.has_nonreal;
  if (predicate == "all-real") return c.all_real;
  if (predicate == "lowest-is-saddle") return c.lowest_is_saddle;
  throw std::invalid_argument("unknown predicate '" + predicate + "'");
}

std::vector<ScaleMember> standard_scale(const Morsification& base, const RuleConfig& cfg, const Budget& budget) {
  RuleConfig rc = cfg;
  rc.mode = Mode::restricted;
  std::vector<ScaleMember> out;
  std::vector<std::pair<StateStore, ComponentSummary>> seen;
  for (int k = 0; k <= base.mu; ++k) {
    ScaleMember m;
    m.k = k;
    if (k > 0 && k < base.mu && base.kind[k - 1] == kUpper) {
      m.valid = false;
      out.push_back(m);
      continue;
    }
    Morsification s = base;
    s.neg = k;
    Key key = encode_key(canonical_form(s, rc.gauge));
    bool hit = false;
    for (auto& [store, summary] : seen)
      if (store.find(key) >= 0) {
        m.comp = summary;
        hit = true;
        break;
      }
    if (!hit) {
      RunResult run = enumerate(s, rc, budget);
      m.closed = run.closed();
      m.comp = summarize(run.store);
      if (m.closed) seen.emplace_back(std::move(run.store), m.comp);
    }
    out.push_back(m);
  }
  return out;
}

GradedGraph graded_graph(const Morsification& seed, int m_from, int m_to, RuleConfig cfg, const Budget& budget,
                         int threads) {
  if (m_from < 1 || m_to < m_from) throw std::invalid_argument("need 1 <= m_from <= m_to");
  cfg.mode = Mode::main;
  GradedGraph gg;
  RunOptions opt;
  opt.threads = threads;
  std::vector<ComponentSummary> prev;
  for (int m = m_from; m <= m_to; ++m) {
    cfg.m_bound = m;
    RunResult run = enumerate(seed, cfg, budget, opt);
    Partition part = components(run, threads);
    GradedLevel lvl;
    lvl.m = m;
    lvl.total = run.total();
    lvl.closed = run.closed();
    lvl.ind_histogram = run.ind_histogram;
    lvl.components = part.components;
    for (size_t c = 0; c < prev.size(); ++c) {
      int64_t idx = run.store.find(prev[c].representative);
      if (idx >= 0) gg.edges.push_back({m - 1, c, part.component_of[idx]});
    }
    prev = lvl.components;
    gg.levels.push_back(std::move(lvl));
  }
  return gg;
}

}  // namespace vm
