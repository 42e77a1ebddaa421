#include "vmorse/reports.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "vmorse/persist.hpp"

namespace vm {

Format parse_format(const std::string& name) {
  if (name == "md" || name == "markdown") return Format::markdown;
  if (name == "csv") return Format::csv;
  if (name == "txt" || name == "text") return Format::text;
  throw std::invalid_argument("unknown format '" + name + "'");
}

// ---- fixtures ----

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

uint64_t to_u64(const std::string& s) {
  size_t used = 0;
  unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

// All sums reachable by picking one alternative per term.
std::set<uint64_t> reachable_sums(const std::vector<std::vector<uint64_t>>& terms) {
  std::set<uint64_t> sums{0};
  for (const auto& alts : terms) {
    std::set<uint64_t> next;
    for (uint64_t s : sums)
      for (uint64_t a : alts) next.insert(s + a);
    sums = std::move(next);
  }
  return sums;
}

bool intersects(const std::set<uint64_t>& a, const std::vector<uint64_t>& b) {
  for (uint64_t x : b)
    if (a.count(x)) return true;
  return false;
}

std::string join_alts(const std::vector<uint64_t>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "/" : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

const Fixture* FixtureSet::find(const std::string& name) const {
  for (const Fixture& f : items)
    if (f.name == name) return &f;
  return nullptr;
}

std::vector<const Fixture*> FixtureSet::with_prefix(const std::string& prefix) const {
  std::vector<const Fixture*> out;
  for (const Fixture& f : items)
    if (starts_with(f.name, prefix)) out.push_back(&f);
  return out;
}

FixtureSet parse_fixtures(const std::string& text) {
  FixtureSet fx;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::set<std::string> names;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto parts = split(t, '|');
    if (parts.size() != 4) throw ParseError(lineno, 1, "expected 'name | expected | citation | hard|soft'");
    Fixture f;
    f.name = trim(parts[0]);
    f.expected = trim(parts[1]);
    f.citation = trim(parts[2]);
    std::string kind = trim(parts[3]);
    f.line = lineno;
    if (kind == "hard") f.hard = true;
    else if (kind == "soft") f.hard = false;
    else throw ParseError(lineno, static_cast<int>(t.rfind('|')) + 2, "kind must be hard or soft, got '" + kind + "'");
    if (f.name.empty() || f.expected.empty()) throw ParseError(lineno, 1, "empty name or value");
    if (!names.insert(f.name).second) throw ParseError(lineno, 1, "duplicate fixture '" + f.name + "'");
    fx.items.push_back(f);
  }
  return fx;
}

FixtureSet load_fixtures(const std::string& path) { return parse_fixtures(read_file(path)); }

std::vector<uint64_t> parse_alternatives(const std::string& v) {
  std::vector<uint64_t> out;
  for (const std::string& p : split(v, '/')) out.push_back(to_u64(trim(p)));
  if (out.empty()) throw std::invalid_argument("empty value");
  return out;
}

std::vector<CardInd> parse_card_list(const std::string& v) {
  std::vector<CardInd> out;
  for (const std::string& w : words(v)) {
    size_t c = w.rfind(':');
    if (c == std::string::npos) throw std::invalid_argument("expected card:ind, got '" + w + "'");
    out.push_back({parse_alternatives(w.substr(0, c)), std::stoi(w.substr(c + 1))});
  }
  return out;
}

// ---- reports ----

bool Report::hard_ok() const {
  for (const CheckLine& l : lines)
    if (l.hard && !l.pass) return false;
  return true;
}

size_t Report::passed() const {
  return std::count_if(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

namespace {

std::string render_table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows,
                         Format f) {
  std::ostringstream os;
  if (f == Format::csv) {
    auto quote = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    for (size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << quote(head[i]);
    os << "\n";
    for (const auto& r : rows) {
      for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << quote(r[i]);
      os << "\n";
    }
    return os.str();
  }
  if (f == Format::markdown) {
    os << "|";
    for (const auto& h : head) os << " " << h << " |";
    os << "\n|";
    for (size_t i = 0; i < head.size(); ++i) os << "---|";
    os << "\n";
    for (const auto& r : rows) {
      os << "|";
      for (const auto& c : r) os << " " << c << " |";
      os << "\n";
    }
    return os.str();
  }
  std::vector<size_t> w(head.size());
  for (size_t i = 0; i < head.size(); ++i) w[i] = head[i].size();
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) {
      os << r[i];
      if (i + 1 < r.size()) os << std::string(w[i] - r[i].size() + 2, ' ');
    }
    os << "\n";
  };
  line(head);
  for (const auto& r : rows) line(r);
  return os.str();
}

std::string yes(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string Report::render(Format f) const {
  std::vector<std::vector<std::string>> rows;
  for (const CheckLine& l : lines)
    rows.push_back({l.pass ? "PASS" : "FAIL", l.hard ? "hard" : "soft", l.name, l.expected, l.computed, l.note});
  std::ostringstream os;
  if (!title.empty()) os << (f == Format::markdown ? "## " : f == Format::csv ? "# " : "") << title << "\n\n";
  os << render_table({"result", "kind", "fixture", "expected", "computed", "note"}, rows, f);
  if (f != Format::csv)
    os << "\n" << passed() << " of " << lines.size() << " checks pass; hard fixtures " << (hard_ok() ? "all pass" : "FAIL")
       << "\n";
  return os.str();
}

std::string ind_histogram_table(const std::map<int, uint64_t>& hist, Format f) {
  std::vector<std::vector<std::string>> rows;
  uint64_t total = 0;
  for (auto [ind, c] : hist) {
    rows.push_back({std::to_string(ind), std::to_string(c)});
    total += c;
  }
  rows.push_back({"Total", std::to_string(total)});
  return render_table({"Ind", "count"}, rows, f);
}

std::string component_table(const std::vector<ComponentSummary>& comps, Format f) {
  std::vector<std::vector<std::string>> rows;
  uint64_t total = 0;
  for (size_t i = 0; i < comps.size(); ++i) {
    const ComponentSummary& c = comps[i];
    rows.push_back({std::to_string(i), std::to_string(c.card), std::to_string(c.ind), yes(c.all_real),
                    yes(c.has_nonreal), yes(c.lowest_is_saddle), std::to_string(c.min_real_points)});
    total += c.card;
  }
  rows.push_back({"Total", std::to_string(total), "", "", "", "", ""});
  return render_table({"id", "Card", "Ind", "all real", "has non-real", "lowest is saddle somewhere", "min real points"},
                      rows, f);
}

std::string scale_table(const std::vector<ScaleMember>& members, Format f) {
  std::vector<std::vector<std::string>> rows;
  for (const ScaleMember& m : members) {
    if (!m.valid) {
      rows.push_back({std::to_string(m.k), "-", "-", "zero level splits a pair"});
      continue;
    }
    rows.push_back({std::to_string(m.k), std::to_string(m.comp.card), std::to_string(m.comp.ind),
                    m.closed ? "" : "partial (budget)"});
  }
  return render_table({"negatives", "Card", "Ind", "note"}, rows, f);
}

std::string graded_table(const GradedGraph& gg, Format f) {
  std::ostringstream os;
  for (size_t li = 0; li < gg.levels.size(); ++li) {
    const GradedLevel& lvl = gg.levels[li];
    os << (f == Format::markdown ? "### " : "") << "level m = " << lvl.m << ": " << lvl.total << " states, "
       << lvl.components.size() << " components" << (lvl.closed ? "" : " (partial)") << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (size_t c = 0; c < lvl.components.size(); ++c) {
      std::string parent = "-", children;
      for (const GradedEdge& e : gg.edges) {
        if (e.m == lvl.m && e.child == c) parent = std::to_string(e.parent);
        if (e.m + 1 == lvl.m && e.parent == c) {
          const ComponentSummary& ch = gg.levels[li - 1].components[e.child];
          children += (children.empty() ? "" : " ") + std::to_string(ch.card);
        }
      }
      rows.push_back({std::to_string(c), std::to_string(lvl.components[c].card), std::to_string(lvl.components[c].ind),
                      parent, children});
    }
    os << render_table({"id", "Card", "Ind", "parent at m+1", "children cards at m-1"}, rows, f) << "\n";
  }
  return os.str();
}

std::string context_name(const RuleConfig& cfg) {
  return to_string(cfg.mode) + "." + (cfg.m_bound ? "m" + std::to_string(cfg.m_bound) : std::string("inf"));
}

// ---- checks ----

namespace {

CheckLine check_count(const Fixture& f, uint64_t computed) {
  CheckLine l{f.name, f.hard, false, f.expected, std::to_string(computed), ""};
  if (starts_with(f.expected, ">=")) {
    l.pass = computed >= to_u64(trim(f.expected.substr(2)));
    return l;
  }
  auto alts = parse_alternatives(f.expected);
  for (size_t i = 0; i < alts.size(); ++i)
    if (alts[i] == computed) {
      l.pass = true;
      if (alts.size() > 1) l.note = i == 0 ? "matches the primary value" : "matches the alternative value";
    }
  if (!l.pass && alts.size() > 1) l.note = "matches neither candidate";
  return l;
}

CheckLine check_bool(const Fixture& f, bool computed) {
  CheckLine l{f.name, f.hard, false, f.expected, computed ? "true" : "false", ""};
  l.pass = (f.expected == "true") == computed;
  if (f.expected != "true" && f.expected != "false") l.note = "malformed expected value";
  return l;
}

CheckLine check_cards(const Fixture& f, const std::vector<ComponentSummary>& comps, bool subset) {
  auto want = parse_card_list(f.expected);
  std::vector<bool> used(comps.size(), false);
  std::vector<std::string> missing;
  for (const CardInd& w : want) {
    bool hit = false;
    for (size_t i = 0; i < comps.size() && !hit; ++i)
      if (!used[i] && comps[i].ind == w.ind &&
          std::find(w.cards.begin(), w.cards.end(), comps[i].card) != w.cards.end()) {
        used[i] = true;
        hit = true;
      }
    if (!hit) missing.push_back(join_alts(w.cards) + ":" + std::to_string(w.ind));
  }
  std::vector<std::string> extra;
  for (size_t i = 0; i < comps.size(); ++i)
    if (!used[i]) extra.push_back(std::to_string(comps[i].card) + ":" + std::to_string(comps[i].ind));
  CheckLine l{f.name, f.hard, missing.empty() && (subset || extra.empty()), std::to_string(want.size()) + " cards", "", ""};
  l.computed = std::to_string(comps.size()) + " components, " + std::to_string(want.size() - missing.size()) +
               " expected cards found";
  std::ostringstream note;
  if (!missing.empty()) {
    note << "missing:";
    for (auto& m : missing) note << " " << m;
  }
  if (!subset && !extra.empty()) {
    note << (missing.empty() ? "" : "; ") << "unexpected:";
    for (size_t i = 0; i < extra.size() && i < 20; ++i) note << " " << extra[i];
    if (extra.size() > 20) note << " ...";
  }
  l.note = note.str();
  return l;
}

std::vector<std::vector<uint64_t>> ind_terms(const FixtureSet& fx, const std::string& ctx, std::map<int, std::vector<uint64_t>>* by_ind) {
  std::vector<std::vector<uint64_t>> terms;
  for (const Fixture* f : fx.with_prefix(ctx + ".ind.")) {
    auto alts = parse_alternatives(f->expected);
    terms.push_back(alts);
    if (by_ind) (*by_ind)[std::stoi(f->name.substr(ctx.size() + 5))] = alts;
  }
  return terms;
}

}  // namespace

Report self_check(const FixtureSet& fx) {
  Report r;
  r.title = "fixture arithmetic";
  for (const Fixture* f : fx.with_prefix("identity.")) {
    CheckLine l{f->name, f->hard, false, f->expected, "", ""};
    std::string e = f->expected;
    size_t op = e.find_first_of("=<");
    if (op == std::string::npos) {
      l.note = "malformed identity";
      r.lines.push_back(l);
      continue;
    }
    uint64_t lhs = 0;
    for (const std::string& t : split(e.substr(0, op), '+')) lhs += to_u64(trim(t));
    uint64_t rhs = to_u64(trim(e.substr(op + 1)));
    l.computed = std::to_string(lhs) + (e[op] == '=' ? " vs " : " < ") + std::to_string(rhs);
    l.pass = e[op] == '=' ? lhs == rhs : lhs < rhs;
    r.lines.push_back(l);
  }
  std::set<std::string> contexts;
  for (const Fixture& f : fx.items)
    if (f.name.size() > 6 && f.name.compare(f.name.size() - 6, 6, ".total") == 0)
      contexts.insert(f.name.substr(0, f.name.size() - 6));
  for (const std::string& ctx : contexts) {
    std::map<int, std::vector<uint64_t>> by_ind;
    auto terms = ind_terms(fx, ctx, &by_ind);
    if (!terms.empty()) {
      auto total = parse_alternatives(fx.find(ctx + ".total")->expected);
      auto sums = reachable_sums(terms);
      CheckLine l{ctx + ".ind.* sum", true, intersects(sums, total), join_alts(total), std::to_string(*sums.begin()), ""};
      r.lines.push_back(l);
    }
    for (const char* kind : {".cards", ".cards-include"}) {
      const Fixture* cf = fx.find(ctx + kind);
      if (!cf) continue;
      bool subset = std::string(kind) == ".cards-include";
      std::map<int, std::vector<std::vector<uint64_t>>> cards;
      auto list = parse_card_list(cf->expected);
      for (const CardInd& c : list) cards[c.ind].push_back(c.cards);
      for (auto& [ind, t] : cards) {
        if (!by_ind.count(ind)) continue;
        auto sums = reachable_sums(t);
        const auto& want = by_ind[ind];
        bool ok = subset ? *sums.begin() <= *std::max_element(want.begin(), want.end()) : intersects(sums, want);
        r.lines.push_back({ctx + kind + " ind " + std::to_string(ind), true, ok,
                           (subset ? "<= " : "") + join_alts(want), std::to_string(*sums.begin()), ""});
      }
      const Fixture* nc = fx.find(ctx + ".components");
      if (nc) {
        bool ok;
        if (starts_with(nc->expected, ">=")) ok = list.size() >= to_u64(trim(nc->expected.substr(2))) || subset;
        else ok = subset ? list.size() <= to_u64(nc->expected) : list.size() == to_u64(nc->expected);
        r.lines.push_back({ctx + kind + " count", true, ok, nc->expected, std::to_string(list.size()), ""});
      }
    }
  }
  return r;
}

Report verify_against_fixtures(const RunView& run, const FixtureSet& fx) {
  Report r;
  const std::string ctx = context_name(run.config);
  r.title = "verification of " + ctx;
  r.lines.push_back({"run closed", true, run.closed, "closed", run.closed ? "closed" : "partial", ""});
  for (const Fixture* f : fx.with_prefix(ctx + ".")) {
    std::string key = f->name.substr(ctx.size() + 1);
    if (key == "total") {
      r.lines.push_back(check_count(*f, run.total));
    } else if (starts_with(key, "ind.")) {
      int ind = std::stoi(key.substr(4));
      auto it = run.ind_histogram.find(ind);
      r.lines.push_back(check_count(*f, it == run.ind_histogram.end() ? 0 : it->second));
    } else if (!run.components) {
      continue;  // component fixtures need a partition
    } else if (key == "components") {
      r.lines.push_back(check_count(*f, run.components->size()));
    } else if (key == "cards" || key == "cards-include") {
      r.lines.push_back(check_cards(*f, *run.components, key == "cards-include"));
    } else if (starts_with(key, "query.")) {
      auto parts = split(key, '.');
      if (parts.size() != 3) {
        r.lines.push_back({f->name, f->hard, false, f->expected, "", "malformed query fixture"});
        continue;
      }
      auto cards = parse_alternatives(parts[1]);
      const ComponentSummary* hit = nullptr;
      for (const ComponentSummary& c : *run.components)
        if (std::find(cards.begin(), cards.end(), c.card) != cards.end()) hit = &c;
      if (!hit) {
        r.lines.push_back({f->name, f->hard, false, f->expected, "", "no component with that card"});
        continue;
      }
      r.lines.push_back(check_bool(*f, query_component(*hit, parts[2])));
    } else {
      r.lines.push_back({f->name, f->hard, false, f->expected, "", "unknown fixture kind"});
    }
  }
  return r;
}

Report verify_scale(const std::string& name, const std::vector<ScaleMember>& members, const FixtureSet& fx) {
  Report r;
  r.title = "scale " + name;
  const Fixture* f = fx.find("scale." + name);
  if (!f) return r;
  auto want = parse_card_list(f->expected);
  std::string got;
  bool ok = want.size() == members.size();
  for (size_t i = 0; i < members.size(); ++i) {
    const ScaleMember& m = members[i];
    got += (i ? " " : "") + (m.valid ? std::to_string(m.comp.card) + ":" + std::to_string(m.comp.ind) : std::string("-"));
    if (i < want.size() &&
        (!m.valid || m.comp.ind != want[i].ind ||
         std::find(want[i].cards.begin(), want[i].cards.end(), m.comp.card) == want[i].cards.end()))
      ok = false;
  }
  r.lines.push_back({f->name, f->hard, ok, f->expected, got, ""});
  return r;
}

Report verify_component(const std::string& name, const ComponentSummary& c, const FixtureSet& fx) {
  Report r;
  r.title = "component " + name;
  const Fixture* f = fx.find("component." + name);
  if (!f) return r;
  auto want = parse_card_list(f->expected);
  bool ok = want.size() == 1 && want[0].ind == c.ind &&
            std::find(want[0].cards.begin(), want[0].cards.end(), c.card) != want[0].cards.end();
  r.lines.push_back({f->name, f->hard, ok, f->expected, std::to_string(c.card) + ":" + std::to_string(c.ind), ""});
  return r;
}

Report verify_graded(const GradedGraph& gg, const FixtureSet& fx) {
  Report r;
  r.title = "graded graph";
  for (size_t li = 0; li + 1 < gg.levels.size(); ++li) {
    const GradedLevel& lo = gg.levels[li];
    const GradedLevel& hi = gg.levels[li + 1];
    const std::string ctx = "graded." + std::to_string(lo.m) + "-" + std::to_string(hi.m) + ".";
    std::vector<std::vector<size_t>> children(hi.components.size());
    std::vector<int> out_degree(lo.components.size(), 0);
    for (const GradedEdge& e : gg.edges)
      if (e.m == lo.m) {
        children[e.parent].push_back(e.child);
        ++out_degree[e.child];
      }
    for (const Fixture* f : fx.with_prefix(ctx)) {
      std::string key = f->name.substr(ctx.size());
      if (key == "lower.components") {
        r.lines.push_back(check_count(*f, lo.components.size()));
      } else if (key == "upper.components") {
        r.lines.push_back(check_count(*f, hi.components.size()));
      } else if (key == "out-degree") {
        bool ok = std::all_of(out_degree.begin(), out_degree.end(), [](int d) { return d == 1; });
        r.lines.push_back({f->name, f->hard, ok, f->expected, ok ? "1" : "not all 1", ""});
      } else if (starts_with(key, "children.ind")) {
        int ind = std::stoi(key.substr(12));
        uint64_t most = 0;
        for (size_t c = 0; c < hi.components.size(); ++c)
          if (hi.components[c].ind == ind) most = std::max<uint64_t>(most, children[c].size());
        r.lines.push_back(check_count(*f, most));
      } else if (starts_with(key, "children-include.ind")) {
        int ind = std::stoi(key.substr(20));
        std::multiset<uint64_t> have;
        for (size_t c = 0; c < hi.components.size(); ++c)
          if (hi.components[c].ind == ind)
            for (size_t ch : children[c]) have.insert(lo.components[ch].card);
        std::string got, miss;
        for (uint64_t h : have) got += (got.empty() ? "" : " ") + std::to_string(h);
        for (const std::string& w : words(f->expected)) {
          auto alts = parse_alternatives(w);
          bool hit = false;
          for (uint64_t a : alts)
            if (have.count(a)) {
              have.erase(have.find(a));
              hit = true;
              break;
            }
          if (!hit) miss += " " + w;
        }
        r.lines.push_back({f->name, f->hard, miss.empty(), f->expected, got, miss.empty() ? "" : "missing:" + miss});
      } else if (starts_with(key, "children.except-ind")) {
        int ind = std::stoi(key.substr(19));
        uint64_t want = to_u64(f->expected);
        std::string bad;
        for (size_t c = 0; c < hi.components.size(); ++c)
          if (hi.components[c].ind != ind && children[c].size() != want)
            bad += " " + std::to_string(hi.components[c].card) + "(" + std::to_string(children[c].size()) + ")";
        r.lines.push_back({f->name, f->hard, bad.empty(), f->expected, bad.empty() ? f->expected : "differs", bad});
      } else {
        r.lines.push_back({f->name, f->hard, false, f->expected, "", "unknown fixture kind"});
      }
    }
  }
  return r;
}

// ---- diff ----

DiffReport diff_runs(const StateStore& a, const StateStore& b, size_t examples) {
  auto sorted = [](const StateStore& s) {
    std::vector<Key> k;
    k.reserve(s.size());
    for (const Record& r : s.records()) k.push_back(r.key);
    std::sort(k.begin(), k.end());
    return k;
  };
  std::vector<Key> ka = sorted(a), kb = sorted(b);
  DiffReport d;
  size_t i = 0, j = 0;
  auto only = [&](const Key& k, bool left) {
    int ind = compute_ind(decode_key(k));
    if (left) {
      ++d.only_a;
      ++d.ind_only[ind].first;
      if (d.examples_a.size() < examples) d.examples_a.push_back(k);
    } else {
      ++d.only_b;
      ++d.ind_only[ind].second;
      if (d.examples_b.size() < examples) d.examples_b.push_back(k);
    }
  };
  while (i < ka.size() || j < kb.size()) {
    if (j == kb.size() || (i < ka.size() && ka[i] < kb[j])) only(ka[i++], true);
    else if (i == ka.size() || kb[j] < ka[i]) only(kb[j++], false);
    else {
      ++d.common;
      ++i;
      ++j;
    }
  }
  return d;
}

std::string DiffReport::render(Format f) const {
  std::ostringstream os;
  std::vector<std::vector<std::string>> rows;
  for (auto [ind, c] : ind_only) rows.push_back({std::to_string(ind), std::to_string(c.first), std::to_string(c.second)});
  rows.push_back({"Total", std::to_string(only_a), std::to_string(only_b)});
  os << "common states: " << common << ", only in a: " << only_a << ", only in b: " << only_b << "\n\n"
     << render_table({"Ind", "only in a", "only in b"}, rows, f);
  if (f == Format::csv) return os.str();
  for (const Key& k : examples_a) os << "\nonly in a:\n" << describe(decode_key(k));
  for (const Key& k : examples_b) os << "\nonly in b:\n" << describe(decode_key(k));
  return os.str();
}

}  // namespace vm
