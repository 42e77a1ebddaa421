#pragma once

#include <map>
#include <string>
#include <vector>

#include "vmorse/engine.hpp"

namespace vm {

enum class Format : uint8_t { markdown, csv, text };
Format parse_format(const std::string& name);

// Fixture line: name | expected | citation | hard|soft
// Expected values:
//   123            exact count
//   123/124        either value (a known misprint; the first is primary)
//   >=15           lower bound
//   true | false   predicate verdict
//   a:i b:i ...    (card, ind) multiset; a card may carry alternatives a/b
//   a+b+c=d, a+b<c identity, checked on the fixture data alone
struct Fixture {
  std::string name;
  std::string expected;
  std::string citation;
  bool hard = true;
  int line = 0;
};

struct FixtureSet {
  std::vector<Fixture> items;
  const Fixture* find(const std::string& name) const;
  std::vector<const Fixture*> with_prefix(const std::string& prefix) const;
};

FixtureSet parse_fixtures(const std::string& text);  // throws ParseError
FixtureSet load_fixtures(const std::string& path);

struct CardInd {
  std::vector<uint64_t> cards;  // alternatives, primary first
  int ind = 0;
};

std::vector<uint64_t> parse_alternatives(const std::string& v);
std::vector<CardInd> parse_card_list(const std::string& v);

struct CheckLine {
  std::string name;
  bool hard = true;
  bool pass = false;
  std::string expected;
  std::string computed;
  std::string note;
};

struct Report {
  std::string title;
  std::vector<CheckLine> lines;
  bool hard_ok() const;
  size_t passed() const;
  std::string render(Format f) const;
};

// Internal arithmetic of a fixture file: identities, histogram sums against
// totals, and card lists against histogram rows.
Report self_check(const FixtureSet& fx);

std::string ind_histogram_table(const std::map<int, uint64_t>& hist, Format f);
std::string component_table(const std::vector<ComponentSummary>& comps, Format f);
std::string scale_table(const std::vector<ScaleMember>& members, Format f);
std::string graded_table(const GradedGraph& gg, Format f);

// Fixture context of a run: main.inf, main.m2, restricted.inf, ...
std::string context_name(const RuleConfig& cfg);

struct RunView {
  RuleConfig config;
  bool closed = false;
  uint64_t total = 0;
  std::map<int, uint64_t> ind_histogram;
  const std::vector<ComponentSummary>* components = nullptr;  // optional
};

// Checks every fixture under the run's context.
Report verify_against_fixtures(const RunView& run, const FixtureSet& fx);
// scale.<name>: the (card, ind) sequence; component.<name>...: single classes.
Report verify_scale(const std::string& name, const std::vector<ScaleMember>& members, const FixtureSet& fx);
Report verify_component(const std::string& name, const ComponentSummary& c, const FixtureSet& fx);
Report verify_graded(const GradedGraph& gg, const FixtureSet& fx);

struct DiffReport {
  uint64_t only_a = 0, only_b = 0, common = 0;
  std::map<int, std::pair<uint64_t, uint64_t>> ind_only;  // ind -> (only in a, only in b)
  std::vector<Key> examples_a, examples_b;
  std::string render(Format f) const;
};

// Both stores must be keyed under the same gauge.
DiffReport diff_runs(const StateStore& a, const StateStore& b, size_t examples = 3);

}  // namespace vm
