// Command-line front end: enumerate, components, scale, graded, verify, query,
// diff, check-fixtures. Environment variables VMORSE_<FLAG> mirror the flags;
// a flag given on the command line wins.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "vmorse/engine.hpp"
#include "vmorse/persist.hpp"
#include "vmorse/reports.hpp"

namespace fs = std::filesystem;
using namespace vm;

namespace {

struct ConfigFlags {
  std::string mode = "main";
  int m_bound = 0;
  std::string gauge = "greedy";
  std::string birth = "conjugation";
  std::string complex_swap = "block";
  std::string layout = "zero";
  int threads = 1;
  uint64_t max_states = 100'000'000;
  uint64_t mem_budget = 0;
  double time_limit = 0;
  uint64_t checkpoint_every = 1'000'000;

  RuleConfig rules() const {
    RuleConfig c;
    c.mode = parse_mode(mode);
    c.m_bound = m_bound;
    c.gauge = parse_gauge(gauge);
    c.birth = parse_birth_rule(birth);
    c.complex_swap = parse_complex_swap_rule(complex_swap);
    c.layout = parse_pair_layout(layout);
    return c;
  }
  Budget budget() const { return {max_states, mem_budget, time_limit}; }
};

void add_rule_flags(CLI::App* app, ConfigFlags& f, bool with_mode) {
  if (with_mode)
    app->add_option("--mode", f.mode, "main or restricted")->envname("VMORSE_MODE")->check(CLI::IsMember({"main", "restricted"}));
  app->add_option("--m-bound", f.m_bound, "cancel flips creating entries outside [-m, m]; 0 = no clamp")
      ->envname("VMORSE_M_BOUND")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--gauge", f.gauge, "none or greedy")->envname("VMORSE_GAUGE")->check(CLI::IsMember({"none", "greedy", "greedy-sign"}));
  app->add_option("--birth-rule", f.birth, "conjugation or enumerate")
      ->envname("VMORSE_BIRTH_RULE")
      ->check(CLI::IsMember({"conjugation", "enumerate"}));
  app->add_option("--complex-swap-rule", f.complex_swap, "block or block-pairs")
      ->envname("VMORSE_COMPLEX_SWAP_RULE")
      ->check(CLI::IsMember({"block", "block-pairs"}));
  app->add_option("--pair-layout", f.layout, "where pairs sit when the clamp is checked: zero or top")
      ->envname("VMORSE_PAIR_LAYOUT")
      ->check(CLI::IsMember({"zero", "top"}));
}

void add_run_flags(CLI::App* app, ConfigFlags& f) {
  app->add_option("--threads", f.threads, "worker threads")->envname("VMORSE_THREADS")->check(CLI::PositiveNumber);
  app->add_option("--max-states", f.max_states, "state cap")->envname("VMORSE_MAX_STATES");
  app->add_option("--mem-budget", f.mem_budget, "store memory cap in bytes; 0 = none")->envname("VMORSE_MEM_BUDGET");
  app->add_option("--time-limit", f.time_limit, "wall clock cap in seconds; 0 = none")->envname("VMORSE_TIME_LIMIT");
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream os(p, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << s;
}

std::string seed_stem(const std::string& path) { return fs::path(path).stem().string(); }

int status_exit(RunStatus s) {
  if (s == RunStatus::closed) return kExitOk;
  if (s == RunStatus::overflow) return kExitOverflow;
  return kExitBudget;
}

RunResult load_run(const std::string& dir, Manifest& m) {
  m = read_manifest(dir);
  RunResult run;
  run.config = m.config;
  run.store = read_states((fs::path(dir) / "states.bin").string());
  run.status = m.closed ? RunStatus::closed : RunStatus::state_cap;
  run.ind_histogram = m.ind_histogram;
  run.expanded = run.store.size();
  return run;
}

void print_progress(uint64_t expanded, uint64_t stored) {
  static uint64_t next = 0;
  if (stored < next) return;
  next = stored + 500000;
  std::fprintf(stderr, "  expanded %llu, stored %llu\n", static_cast<unsigned long long>(expanded),
               static_cast<unsigned long long>(stored));
}

// ---- subcommands ----

int cmd_enumerate(const std::string& seed_path, const std::string& out, const ConfigFlags& f, bool resume, bool with_components,
                  bool quiet) {
  const std::string seed_text = read_file(seed_path);
  Morsification seed = parse_seed(seed_text);
  RuleConfig cfg = f.rules();
  RunLock lock(out);
  const fs::path dir(out);
  Manifest m;
  if (resume) {
    Manifest old = read_manifest(out);
    if (old.seed_digest != digest_hex(seed_text)) throw std::invalid_argument("seed changed since the run started");
    if (!(old.config == cfg)) throw std::invalid_argument("configuration differs from the interrupted run");
    m.started = old.started;
  } else {
    m.started = now_utc();
  }
  m.code_version = code_version();
  m.seed_path = seed_path;
  m.seed_digest = digest_hex(seed_text);
  m.config = cfg;
  m.budget = f.budget();
  m.threads = f.threads;
  m.status = "running";
  write_manifest(out, m);

  RunOptions opt;
  opt.threads = f.threads;
  opt.checkpoint_every = f.checkpoint_every;
  opt.checkpoint_path = (dir / "checkpoint.bin").string();
  opt.resume = resume;
  if (!quiet) opt.progress = print_progress;
  RunResult run = enumerate(seed, cfg, f.budget(), opt);

  write_states((dir / "states.bin").string(), run.store);
  m.finished = now_utc();
  m.closed = run.closed();
  m.status = to_string(run.status);
  m.total = run.total();
  m.ind_histogram = run.ind_histogram;
  m.seconds = run.seconds;
  if (run.closed()) fs::remove(dir / "checkpoint.bin");
  for (auto [fmt, ext] : {std::pair{Format::markdown, ".md"}, {Format::csv, ".csv"}, {Format::text, ".txt"}})
    write_text(dir / (std::string("histogram") + ext), ind_histogram_table(run.ind_histogram, fmt));
  if (with_components && run.closed()) {
    Partition p = components(run, f.threads);
    write_components((dir / "components.bin").string(), run.store, p);
    for (auto [fmt, ext] : {std::pair{Format::markdown, ".md"}, {Format::csv, ".csv"}, {Format::text, ".txt"}})
      write_text(dir / (std::string("components") + ext), component_table(p.components, fmt));
    m.has_components = true;
  }
  write_manifest(out, m);
  std::cout << "status " << m.status << ", " << run.total() << " states, " << run.seconds << " s\n"
            << ind_histogram_table(run.ind_histogram, Format::text);
  return status_exit(run.status);
}

int cmd_components_run(const std::string& dir, int threads, Format fmt) {
  RunLock lock(dir);
  Manifest m;
  RunResult run = load_run(dir, m);
  if (!m.closed) {
    std::cerr << "run " << dir << " is not closed\n";
    return kExitMissingRun;
  }
  Partition p = components(run, threads);
  write_components((fs::path(dir) / "components.bin").string(), run.store, p);
  for (auto [f, ext] : {std::pair{Format::markdown, ".md"}, {Format::csv, ".csv"}, {Format::text, ".txt"}})
    write_text(fs::path(dir) / (std::string("components") + ext), component_table(p.components, f));
  m.has_components = true;
  write_manifest(dir, m);
  std::cout << p.components.size() << " components\n" << component_table(p.components, fmt);
  return kExitOk;
}

int cmd_component_seed(const std::string& seed_path, int k, const ConfigFlags& f, const std::string& fixtures, Format fmt) {
  Morsification seed = load_seed(seed_path);
  std::string name = seed_stem(seed_path);
  if (k >= 0) {
    seed.neg = k;
    check_state(seed);
    name += ".k" + std::to_string(k);
  }
  if (f.m_bound) name += ".m" + std::to_string(f.m_bound);
  bool closed = true;
  ComponentSummary c = component_of(seed, f.rules(), f.budget(), &closed);
  std::cout << component_table({c}, fmt);
  if (!closed) {
    std::cerr << "budget reached; the class is incomplete\n";
    return kExitBudget;
  }
  if (fixtures.empty()) return kExitOk;
  Report r = verify_component(name, c, load_fixtures(fixtures));
  std::cout << "\n" << r.render(fmt);
  return r.hard_ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_scale(const std::string& seed_path, const ConfigFlags& f, const std::string& fixtures, Format fmt) {
  Morsification seed = load_seed(seed_path);
  auto members = standard_scale(seed, f.rules(), f.budget());
  std::cout << scale_table(members, fmt);
  bool closed = std::all_of(members.begin(), members.end(), [](const ScaleMember& m) { return m.closed; });
  if (!closed) return kExitBudget;
  if (fixtures.empty()) return kExitOk;
  std::string name = seed_stem(seed_path) + (f.m_bound ? ".m" + std::to_string(f.m_bound) : "");
  Report r = verify_scale(name, members, load_fixtures(fixtures));
  std::cout << "\n" << r.render(fmt);
  return r.hard_ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_graded(const std::string& seed_path, int from, int to, const ConfigFlags& f, const std::string& fixtures, Format fmt) {
  Morsification seed = load_seed(seed_path);
  GradedGraph gg = graded_graph(seed, from, to, f.rules(), f.budget(), f.threads);
  std::cout << graded_table(gg, fmt);
  if (fixtures.empty()) return kExitOk;
  Report r = verify_graded(gg, load_fixtures(fixtures));
  std::cout << "\n" << r.render(fmt);
  return r.hard_ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const std::string& dir, const std::string& fixtures, Format fmt) {
  Manifest m = read_manifest(dir);
  if (!m.closed) {
    std::cerr << "run " << dir << " is not closed\n";
    return kExitMissingRun;
  }
  Partition p;
  RunView view{m.config, m.closed, m.total, m.ind_histogram, nullptr};
  if (m.has_components) {
    p = read_components((fs::path(dir) / "components.bin").string());
    view.components = &p.components;
  }
  Report r = verify_against_fixtures(view, load_fixtures(fixtures));
  write_text(fs::path(dir) / "verify.md", r.render(Format::markdown));
  std::cout << r.render(fmt);
  return r.hard_ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_query(const std::string& dir, uint64_t card, const std::string& predicate) {
  Manifest m = read_manifest(dir);
  if (!m.has_components) {
    std::cerr << "run " << dir << " has no component partition; run 'components' first\n";
    return kExitMissingRun;
  }
  Partition p = read_components((fs::path(dir) / "components.bin").string());
  int hits = 0;
  for (const ComponentSummary& c : p.components)
    if (c.card == card) {
      std::cout << "component card " << c.card << " ind " << c.ind << ": " << predicate << " = "
                << (query_component(c, predicate) ? "true" : "false") << "\n";
      ++hits;
    }
  if (!hits) {
    std::cerr << "no component with card " << card << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

int cmd_diff(const std::string& a, const std::string& b, Format fmt) {
  Manifest ma = read_manifest(a), mb = read_manifest(b);
  if (ma.config.gauge != mb.config.gauge) {
    std::cerr << "runs use different gauges; their keys are not comparable\n";
    return kExitInvalidInput;
  }
  if (!ma.closed || !mb.closed) {
    std::cerr << "both runs must be closed\n";
    return kExitMissingRun;
  }
  DiffReport d = diff_runs(read_states((fs::path(a) / "states.bin").string()), read_states((fs::path(b) / "states.bin").string()));
  std::cout << d.render(fmt);
  return kExitOk;
}

int cmd_check_fixtures(const std::string& fixtures, Format fmt) {
  Report r = self_check(load_fixtures(fixtures));
  std::cout << r.render(fmt);
  return r.hard_ok() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate and classify virtual morsifications of real plane curve singularities."};
  app.require_subcommand(1);
  app.footer(
      "exit codes: 0 ok, 1 usage, 2 invalid input, 3 budget reached (partial result), 4 verification failed,\n"
      "            5 missing or unfinished run, 6 run directory locked, 7 i/o error, 8 entry overflow");
  ConfigFlags f;
  std::string seed, out, run, fixtures, format = "txt", predicate, run_b;
  bool resume = false, with_components = false, quiet = false;
  int k = -1, from = 2, to = 3;
  uint64_t card = 0;

  auto* en = app.add_subcommand("enumerate", "closure of a seed under the flips");
  en->add_option("--seed", seed, "seed file")->required()->check(CLI::ExistingFile);
  en->add_option("--out", out, "run directory")->required();
  en->add_option("--checkpoint-every", f.checkpoint_every, "insertions between checkpoints; 0 = none")
      ->envname("VMORSE_CHECKPOINT_EVERY");
  en->add_flag("--resume", resume, "continue from the run directory's checkpoint");
  en->add_flag("--components", with_components, "also partition the result into restricted components");
  en->add_flag("--quiet", quiet, "no progress output");
  add_rule_flags(en, f, true);
  add_run_flags(en, f);

  auto* co = app.add_subcommand("components", "restricted components of a finished run, or the class of one seed");
  auto* co_run = co->add_option("--run", out, "run directory");
  auto* co_seed = co->add_option("--seed", seed, "seed file (class of this state only)")->check(CLI::ExistingFile);
  co_run->excludes(co_seed);
  co->add_option("--k", k, "override the number of negative values of the seed");
  co->add_option("--fixtures", fixtures, "fixture file to check the seed's class against");
  co->add_option("--format", format, "md, csv or txt");
  add_rule_flags(co, f, false);
  add_run_flags(co, f);

  auto* sc = app.add_subcommand("scale", "standard scale of a seed matrix");
  sc->add_option("--seed", seed, "seed file")->required()->check(CLI::ExistingFile);
  sc->add_option("--fixtures", fixtures, "fixture file");
  sc->add_option("--format", format, "md, csv or txt");
  add_rule_flags(sc, f, false);
  add_run_flags(sc, f);

  auto* gr = app.add_subcommand("graded", "graded graph of clamped components");
  gr->add_option("--seed", seed, "seed file")->required()->check(CLI::ExistingFile);
  gr->add_option("--from", from, "lowest clamp")->check(CLI::PositiveNumber);
  gr->add_option("--to", to, "highest clamp")->check(CLI::PositiveNumber);
  gr->add_option("--fixtures", fixtures, "fixture file");
  gr->add_option("--format", format, "md, csv or txt");
  add_rule_flags(gr, f, false);
  add_run_flags(gr, f);

  auto* ve = app.add_subcommand("verify", "check a finished run against a fixture file");
  ve->add_option("--run", out, "run directory")->required();
  ve->add_option("--fixtures", fixtures, "fixture file")->required()->check(CLI::ExistingFile);
  ve->add_option("--format", format, "md, csv or txt");

  auto* qu = app.add_subcommand("query", "evaluate a predicate on components of a run");
  qu->add_option("--run", out, "run directory")->required();
  qu->add_option("--component-card", card, "component cardinality")->required();
  qu->add_option("--predicate", predicate, "has-nonreal, all-real or lowest-is-saddle")
      ->required()
      ->check(CLI::IsMember({"has-nonreal", "all-real", "lowest-is-saddle"}));

  auto* di = app.add_subcommand("diff", "set difference of two finished runs");
  di->add_option("--a", out, "first run directory")->required();
  di->add_option("--b", run_b, "second run directory")->required();
  di->add_option("--format", format, "md, csv or txt");

  auto* cf = app.add_subcommand("check-fixtures", "arithmetic self-check of a fixture file");
  cf->add_option("--fixtures", fixtures, "fixture file")->required()->check(CLI::ExistingFile);
  cf->add_option("--format", format, "md, csv or txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    Format fmt = parse_format(format);
    if (f.threads < 1) f.threads = 1;
    if (*en) return cmd_enumerate(seed, out, f, resume, with_components, quiet);
    if (*co) {
      if (!out.empty()) return cmd_components_run(out, f.threads, fmt);
      if (!seed.empty()) return cmd_component_seed(seed, k, f, fixtures, fmt);
      std::cerr << "components needs --run or --seed\n";
      return kExitUsage;
    }
    if (*sc) return cmd_scale(seed, f, fixtures, fmt);
    if (*gr) return cmd_graded(seed, from, to, f, fixtures, fmt);
    if (*ve) return cmd_verify(out, fixtures, fmt);
    if (*qu) return cmd_query(out, card, predicate);
    if (*di) return cmd_diff(out, run_b, fmt);
    if (*cf) return cmd_check_fixtures(fixtures, fmt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const StateError& e) {
    std::cerr << "invalid state: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const LockError& e) {
    std::cerr << e.what() << "\n";
    return kExitLocked;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::string w = e.what();
    return w.find("no run at") != std::string::npos ? kExitMissingRun : kExitIo;
  }
  return kExitUsage;
}
