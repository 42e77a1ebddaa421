#include "doctest.h"
#include "support.hpp"
#include "vmorse/persist.hpp"
#include "vmorse/reports.hpp"

using namespace vm;

TEST_CASE("fixture lines parse") {
  FixtureSet fx = parse_fixtures(
      "# comment\n"
      "main.inf.total | 10 | example | hard\n"
      "main.inf.ind.0 | 4/5 | example | soft\n"
      "main.inf.ind.1 | 6 | example | hard\n");
  REQUIRE(fx.items.size() == 3);
  CHECK(fx.find("main.inf.ind.0")->hard == false);
  CHECK(fx.with_prefix("main.inf.ind.").size() == 2);
  CHECK(fx.find("nope") == nullptr);
  CHECK_THROWS_AS(parse_fixtures("a | 1 | c | hard\na | 2 | c | hard\n"), ParseError);
  CHECK_THROWS_AS(parse_fixtures("a | 1 | c\n"), ParseError);
  CHECK_THROWS_AS(parse_fixtures("a | 1 | c | maybe\n"), ParseError);
}

TEST_CASE("value grammar") {
  CHECK(parse_alternatives("265228/265288") == std::vector<uint64_t>{265228, 265288});
  auto cl = parse_card_list("7200:3 4800/4801:-5");
  REQUIRE(cl.size() == 2);
  CHECK(cl[1].ind == -5);
  CHECK(cl[1].cards.size() == 2);
  CHECK_THROWS(parse_card_list("7200"));
}

TEST_CASE("self check catches a broken identity") {
  Report ok = self_check(parse_fixtures("identity.x | 1+2=3 | t | hard\nidentity.y | 1+2<4 | t | hard\n"));
  CHECK(ok.hard_ok());
  CHECK(ok.passed() == 2);
  Report bad = self_check(parse_fixtures("identity.x | 1+2=4 | t | hard\n"));
  CHECK_FALSE(bad.hard_ok());
  Report sums = self_check(parse_fixtures(
      "main.inf.total | 10 | t | hard\nmain.inf.ind.0 | 3 | t | hard\nmain.inf.ind.1 | 6 | t | hard\n"));
  CHECK_FALSE(sums.hard_ok());
}

TEST_CASE("shipped fixture files are internally consistent") {
  for (const char* f : {"fixtures/x10_3.fixtures", "fixtures/x10_1.fixtures"}) {
    CAPTURE(f);
    Report r = self_check(load_fixtures(vmtest::source_path(f)));
    CHECK(r.hard_ok());
    CHECK(r.lines.size() > 5);
  }
}

TEST_CASE("verify compares a run view") {
  FixtureSet fx = parse_fixtures(
      "main.inf.total | 10 | t | hard\n"
      "main.inf.ind.0 | 4 | t | hard\n"
      "main.inf.ind.1 | 6/7 | t | soft\n"
      "main.m2.total | 99 | t | hard\n");
  RunView v;
  v.closed = true;
  v.total = 10;
  v.ind_histogram = {{0, 4}, {1, 6}};
  Report r = verify_against_fixtures(v, fx);
  CHECK(r.hard_ok());
  CHECK(r.lines.size() == 4);  // run closed plus three; the m2 line is another context
  v.ind_histogram[0] = 5;
  CHECK_FALSE(verify_against_fixtures(v, fx).hard_ok());
}

TEST_CASE("context names") {
  RuleConfig c;
  CHECK(context_name(c) == "main.inf");
  c.m_bound = 2;
  CHECK(context_name(c) == "main.m2");
  c.mode = Mode::restricted;
  CHECK(context_name(c) == "restricted.m2");
}

TEST_CASE("tables render in every format") {
  std::map<int, uint64_t> h{{-1, 3}, {2, 4}};
  CHECK(ind_histogram_table(h, Format::markdown).find("| -1") != std::string::npos);
  CHECK(ind_histogram_table(h, Format::csv).find("-1,3") != std::string::npos);
  CHECK(ind_histogram_table(h, Format::text).find("Total") != std::string::npos);
  CHECK(parse_format("md") == Format::markdown);
  CHECK_THROWS(parse_format("pdf"));
}

TEST_CASE("diff of two stores") {
  StateStore a, b;
  Record r;
  r.key = encode_key(vmtest::seed("x10_3"));
  a.insert(r);
  b.insert(r);
  r.key = encode_key(vmtest::seed("x10_1"));
  a.insert(r);
  DiffReport d = diff_runs(a, b);
  CHECK(d.common == 1);
  CHECK(d.only_a == 1);
  CHECK(d.only_b == 0);
}
