// Acceptance run: one line per criterion, PASS or FAIL with a short detail.
// Property checks P1-P6 must pass. Golden checks G1-G7 compare against the
// fixture files; G5 and G6 are known calibration gaps (docs/calibration.md)
// and are reported without failing the process.
//
//   acceptance [--only P1,G4,...] [--threads N] [--report file.md]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "support.hpp"
#include "vmorse/engine.hpp"
#include "vmorse/reports.hpp"

using namespace vm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<CheckLine> lines;  // fixture lines behind a golden verdict
};

int g_threads = 1;

const FixtureSet& fixtures(const std::string& name) {
  static std::map<std::string, FixtureSet> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_fixtures(vmtest::source_path("fixtures/" + name))).first;
  return it->second;
}

// Shipped rules plus pair/pair exchanges, so every flip kind is exercised.
RuleConfig wide_config() {
  RuleConfig c;
  c.complex_swap = ComplexSwapRule::block_pairs;
  return c;
}

bool lattice_ok(const Morsification& s, int64_t det) {
  for (int i = 0; i < s.mu; ++i) {
    if (s.g[i][i] != -2) return false;
    for (int j = 0; j < i; ++j)
      if (s.g[i][j] != s.g[j][i]) return false;
  }
  return gram_determinant(s) == det;
}

const std::vector<Morsification>& sample() {
  static std::vector<Morsification> s = vmtest::random_states(10000, 20240601);
  return s;
}

Outcome p1() {
  size_t flips = 0, bad = 0;
  for (const auto& s : sample())
    for (const Flip& f : applicable_flips(s, wide_config())) {
      ++flips;
      if (!(apply(apply(s, f), inverse_of(f, s)) == s)) ++bad;
    }
  return {bad == 0, std::to_string(sample().size()) + " states, " + std::to_string(flips) + " flips, " +
                        std::to_string(bad) + " not restored"};
}

Outcome p2() {
  size_t flips = 0, bad = 0;
  for (const auto& s : sample()) {
    const int64_t det = gram_determinant(s);
    for (const Flip& f : applicable_flips(s, wide_config())) {
      ++flips;
      if (!lattice_ok(apply(s, f), det)) ++bad;
    }
  }
  return {bad == 0, std::to_string(flips) + " flips, " + std::to_string(bad) + " broke symmetry, diagonal or determinant"};
}

Outcome p3() {
  size_t flips = 0, moves = 0, bad = 0, crossings = 0;
  RuleConfig restricted;
  restricted.mode = Mode::restricted;
  std::vector<Morsification> out;
  for (const auto& s : sample()) {
    const int ind = compute_ind(s);
    for (const Flip& f : applicable_flips(s, wide_config())) {
      Morsification t = apply(s, f);
      if (f.kind == FlipKind::cross_zero_real) {
        ++crossings;
        if (std::abs(negative_count(t) - negative_count(s)) != 1) ++bad;
      } else {
        ++flips;
        if (compute_ind(t) != ind) ++bad;
      }
    }
    out.clear();
    class_neighbors(canonical_form(s, restricted.gauge), restricted, false, out);
    for (const auto& t : out) {
      ++moves;
      if (compute_ind(t) != ind) ++bad;
    }
  }
  return {bad == 0 && crossings > 0, std::to_string(flips) + " restricted flips, " + std::to_string(moves) +
                                         " class moves, " + std::to_string(crossings) + " real crossings, " +
                                         std::to_string(bad) + " violations"};
}

std::set<Key> key_set(const StateStore& st) {
  std::set<Key> k;
  for (const Record& r : st.records()) k.insert(r.key);
  return k;
}

Outcome p4() {
  const Morsification seed = vmtest::seed("x10_3");
  RuleConfig cfg;
  Budget b;
  b.max_states = 10000;
  std::set<Key> ref;
  std::string detail;
  bool ok = true;
  for (int t : {1, 4, 8}) {
    RunOptions o;
    o.threads = t;
    RunResult r = enumerate(seed, cfg, b, o);
    std::set<Key> k = key_set(r.store);
    if (t == 1) ref = k;
    ok = ok && k == ref && r.total() == 10000;
    detail += std::to_string(t) + " thr " + std::to_string(k.size()) + (k == ref ? " same" : " DIFFERENT") + "; ";
  }
  const std::string ck = (std::filesystem::temp_directory_path() / "vmorse_acceptance_ckpt.bin").string();
  std::filesystem::remove(ck);
  RunOptions o;
  o.checkpoint_path = ck;
  o.checkpoint_every = 2000;
  Budget half;
  half.max_states = 5000;
  enumerate(seed, cfg, half, o);
  o.resume = true;
  o.threads = 4;
  RunResult resumed = enumerate(seed, cfg, b, o);
  std::filesystem::remove(ck);
  bool same = key_set(resumed.store) == ref;
  ok = ok && same;
  detail += std::string("resume at 5000 ") + (same ? "same" : "DIFFERENT");
  return {ok, detail};
}

Outcome p5() {
  size_t bad = 0;
  for (size_t n = 0; n < 100; ++n) {
    const Morsification& s = sample()[n * 97 % sample().size()];
    const Key k = canonical_key(s, Gauge::greedy);
    for (unsigned mask = 1; mask < (1u << s.mu); ++mask) {
      Morsification t = s;
      for (int i = 0; i < s.mu; ++i)
        if (mask >> i & 1) negate_cycle(t, i);
      if (canonical_key(t, Gauge::greedy) != k) ++bad;
    }
  }
  return {bad == 0, "100 states x 1024 sign patterns, " + std::to_string(bad) + " keys differ"};
}

Outcome p6() {
  Outcome o{true, ""};
  size_t n = 0;
  for (const char* f : {"x10_3.fixtures", "x10_1.fixtures"}) {
    Report r = self_check(fixtures(f));
    n += r.lines.size();
    o.pass = o.pass && r.hard_ok() && r.passed() == r.lines.size();
    for (auto& l : r.lines)
      if (!l.pass) o.lines.push_back(l);
  }
  o.detail = std::to_string(n) + " identities and sums checked";
  return o;
}

// ---- golden ----

struct X103 {
  RunResult run;
  Partition part;
  double seconds = 0;
};

X103& x10_3_main() {
  static X103 x = [] {
    X103 r;
    RunOptions o;
    o.threads = 1;  // the budget is stated for one thread
    auto t0 = std::chrono::steady_clock::now();
    r.run = enumerate(vmtest::seed("x10_3"), RuleConfig{}, Budget{}, o);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.run.closed()) r.part = components(r.run, g_threads);
    return r;
  }();
  return x;
}

Outcome from_report(const Report& r, const std::function<bool(const std::string&)>& keep) {
  Outcome o{true, ""};
  size_t n = 0, p = 0;
  for (const CheckLine& l : r.lines) {
    if (!keep(l.name)) continue;
    ++n;
    o.lines.push_back(l);
    if (l.pass) ++p;
    else if (l.hard) o.pass = false;
  }
  if (n == 0) o.pass = false;
  o.detail = std::to_string(p) + "/" + std::to_string(n) + " fixtures";
  return o;
}

Report x10_3_report() {
  X103& x = x10_3_main();
  RunView v{x.run.config, x.run.closed(), x.run.total(), x.run.ind_histogram, &x.part.components};
  return verify_against_fixtures(v, fixtures("x10_3.fixtures"));
}

bool starts(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

Outcome g1() {
  X103& x = x10_3_main();
  Outcome o = from_report(x10_3_report(), [](const std::string& n) { return n == "main.inf.total" || starts(n, "main.inf.ind."); });
  double gb = x.run.store.memory_bytes() / 1e9;
  bool budget = x.seconds <= 1200 && gb <= 6;
  o.pass = o.pass && budget && x.run.closed();
  char buf[128];
  std::snprintf(buf, sizeof buf, "; %llu states in %.1f s on one thread, store %.2f GB",
                static_cast<unsigned long long>(x.run.total()), x.seconds, gb);
  o.detail += buf;
  return o;
}

Outcome g2() {
  Outcome o = from_report(x10_3_report(), [](const std::string& n) { return n == "main.inf.components" || n == "main.inf.cards"; });
  o.detail += "; " + std::to_string(x10_3_main().part.components.size()) + " components";
  return o;
}

Outcome g3() {
  Outcome all{true, ""};
  size_t n = 0, p = 0;
  for (const char* name : {"x10_3_m4800", "x10_3_4320"}) {
    RuleConfig c;
    c.mode = Mode::restricted;
    auto members = standard_scale(vmtest::seed(name), c);
    Report r = verify_scale(name, members, fixtures("x10_3.fixtures"));
    for (auto& l : r.lines) {
      ++n;
      p += l.pass;
      all.pass = all.pass && l.pass;
      all.lines.push_back(l);
    }
  }
  all.pass = all.pass && n == 2;
  all.detail = std::to_string(p) + "/" + std::to_string(n) + " scales match term by term";
  return all;
}

Outcome g4() {
  struct Spot {
    const char* seed;
    int k;
  };
  Outcome all{true, ""};
  std::string cards;
  for (Spot s : {Spot{"x10_3", -1}, Spot{"x10_3_m4800", 5}, Spot{"x10_3_8496", 6}, Spot{"x10_3_4320", -1}}) {
    Morsification m = vmtest::seed(s.seed);
    if (s.k >= 0) m.neg = s.k;
    RuleConfig c;
    c.mode = Mode::restricted;
    ComponentSummary comp = component_of(m, c);
    Report r = verify_component(s.seed, comp, fixtures("x10_3.fixtures"));
    all.pass = all.pass && r.hard_ok() && r.lines.size() == 1;
    for (auto& l : r.lines) all.lines.push_back(l);
    cards += (cards.empty() ? "" : " ") + std::to_string(comp.card);
  }
  all.detail = "cards " + cards;
  return all;
}

struct X101 {
  GradedGraph gg;
};

X101& x10_1_graded() {
  static X101 x = [] {
    X101 r;
    r.gg = graded_graph(vmtest::seed("x10_1"), 2, 3, RuleConfig{}, Budget{}, g_threads);
    return r;
  }();
  return x;
}

Outcome g5() {
  Outcome all{true, ""};
  size_t n = 0, p = 0;
  for (const GradedLevel& lvl : x10_1_graded().gg.levels) {
    RuleConfig c;
    c.m_bound = lvl.m;
    RunView v{c, lvl.closed, lvl.total, lvl.ind_histogram, &lvl.components};
    Outcome o = from_report(verify_against_fixtures(v, fixtures("x10_1.fixtures")), [](const std::string&) { return true; });
    for (auto& l : o.lines) {
      ++n;
      p += l.pass;
      all.lines.push_back(l);
    }
    all.pass = all.pass && o.pass;
    all.detail += "m" + std::to_string(lvl.m) + " total " + std::to_string(lvl.total) + ", " +
                  std::to_string(lvl.components.size()) + " components; ";
  }
  all.detail += std::to_string(p) + "/" + std::to_string(n) + " fixtures";
  return all;
}

Outcome g6() {
  Report r = verify_graded(x10_1_graded().gg, fixtures("x10_1.fixtures"));
  return from_report(r, [](const std::string&) { return true; });
}

Outcome g7() {
  return from_report(x10_3_report(), [](const std::string& n) { return n.find(".query.") != std::string::npos; });
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> only;
  std::string report_path;
  g_threads = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string t; std::getline(ss, t, ',');) only.insert(t);
    } else if (a == "--threads" && i + 1 < argc) {
      g_threads = std::max(1, std::atoi(argv[++i]));
    } else if (a == "--report" && i + 1 < argc) {
      report_path = argv[++i];
    } else {
      std::fprintf(stderr, "usage: acceptance [--only P1,G4,...] [--threads N] [--report file.md]\n");
      return 1;
    }
  }
  const std::set<std::string> known_gaps{"G5", "G6"};
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"P1", p1}, {"P2", p2}, {"P3", p3}, {"P4", p4}, {"P5", p5}, {"P6", p6}, {"G1", g1},
      {"G2", g2}, {"G3", g3}, {"G4", g4}, {"G5", g5}, {"G6", g6}, {"G7", g7}};
  int failures = 0;
  std::ostringstream md;
  md << "| criterion | result | detail |\n|---|---|---|\n";
  std::ostringstream lines;
  for (const auto& [id, fn] : checks) {
    if (!only.empty() && !only.count(id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool gap = known_gaps.count(id) > 0;
    std::printf("%s %s  %s (%.1f s)%s\n", id.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), s,
                !o.pass && gap ? " [known gap]" : "");
    for (const CheckLine& l : o.lines)
      if (!l.pass) std::printf("     %s %s: expected %s, computed %s\n", l.hard ? "hard" : "soft", l.name.c_str(),
                               l.expected.c_str(), l.computed.c_str());
    std::fflush(stdout);
    if (!o.pass && !gap) ++failures;
    md << "| " << id << " | " << (o.pass ? "PASS" : "FAIL") << " | " << o.detail << " |\n";
    for (const CheckLine& l : o.lines)
      lines << "| " << id << " | " << l.name << " | " << (l.pass ? "PASS" : "FAIL") << " | " << l.expected << " | "
            << l.computed << " |\n";
  }
  if (!report_path.empty()) {
    std::ofstream os(report_path);
    os << "# Acceptance\n\n" << md.str() << "\n## Fixture lines\n\n| criterion | fixture | result | expected | computed |\n"
       << "|---|---|---|---|---|\n" << lines.str();
  }
  return failures ? 1 : 0;
}
