#include <algorithm>
#include <filesystem>

#include "doctest.h"
#include "support.hpp"
#include "vmorse/engine.hpp"

using namespace vm;
namespace fs = std::filesystem;

namespace {

std::vector<Key> sorted_keys(const StateStore& s) {
  std::vector<Key> k;
  for (const Record& r : s.records()) k.push_back(r.key);
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

TEST_CASE("store deduplicates and grows") {
  StateStore st;
  Record r;
  for (int i = 0; i < 5000; ++i) {
    r.key.b[0] = static_cast<uint8_t>(i & 255);
    r.key.b[1] = static_cast<uint8_t>(i >> 8);
    auto [idx, fresh] = st.insert(r);
    CHECK(fresh);
    CHECK(idx == static_cast<uint32_t>(i));
  }
  r.key.b[0] = 7;
  r.key.b[1] = 0;
  CHECK_FALSE(st.insert(r).second);
  CHECK(st.find(r.key) == 7);
  r.key.b[5] = 1;
  CHECK(st.find(r.key) == -1);
  CHECK(st.size() == 5000);
}

TEST_CASE("restricted class of the X_10^3 seed") {
  RuleConfig c;
  c.mode = Mode::restricted;
  bool closed = false;
  ComponentSummary s = component_of(vmtest::seed("x10_3"), c, {}, &closed);
  CHECK(closed);
  CHECK(s.card == 7200);
  CHECK(s.ind == 3);
  CHECK(s.all_real);
  CHECK(query_component(s, "lowest-is-saddle"));
  CHECK_THROWS(query_component(s, "is-pretty"));
}

TEST_CASE("clamped classes of the X_10^1 seed") {
  RuleConfig c;
  c.m_bound = 2;
  Morsification s = vmtest::seed("x10_1_fake");
  s.neg = 5;
  CHECK(component_of(s, c).card == 480);
}

TEST_CASE("truncated runs agree across thread counts") {
  RuleConfig c;
  Budget b;
  b.max_states = 6000;
  RunResult one = enumerate(vmtest::seed("x10_3"), c, b, {});
  CHECK(one.status == RunStatus::state_cap);
  CHECK(one.total() == 6000);
  for (int t : {2, 4}) {
    RunOptions o;
    o.threads = t;
    RunResult r = enumerate(vmtest::seed("x10_3"), c, b, o);
    CHECK(sorted_keys(r.store) == sorted_keys(one.store));
    // same insertion order too
    for (size_t i = 0; i < r.store.size(); ++i) REQUIRE(r.store[i].key == one.store[i].key);
  }
}

TEST_CASE("checkpoint resume matches an uninterrupted run") {
  const fs::path dir = fs::temp_directory_path() / "vmorse_test_ckpt";
  fs::remove_all(dir);
  fs::create_directories(dir);
  RuleConfig c;
  RunOptions o;
  o.checkpoint_path = (dir / "checkpoint.bin").string();
  o.checkpoint_every = 1000;
  Budget small;
  small.max_states = 2500;
  RunResult part = enumerate(vmtest::seed("x10_3"), c, small, o);
  CHECK_FALSE(part.closed());
  REQUIRE(fs::exists(o.checkpoint_path));
  Budget big;
  big.max_states = 9000;
  o.resume = true;
  RunResult resumed = enumerate(vmtest::seed("x10_3"), c, big, o);
  RunResult direct = enumerate(vmtest::seed("x10_3"), c, big, {});
  CHECK(sorted_keys(resumed.store) == sorted_keys(direct.store));
  SUBCASE("config mismatch is refused") {
    RuleConfig other = c;
    other.m_bound = 3;
    CHECK_THROWS(enumerate(vmtest::seed("x10_3"), other, big, o));
  }
  fs::remove_all(dir);
}

TEST_CASE("components of a small closed run") {
  RuleConfig c;
  c.m_bound = 2;
  Morsification s = vmtest::seed("x10_1_fake");
  s.neg = 5;
  c.mode = Mode::restricted;
  RunResult run = enumerate(s, c, {}, {});
  REQUIRE(run.closed());
  Partition p = components(run);
  REQUIRE(p.components.size() == 1);
  CHECK(p.components[0].card == run.total());
  CHECK(p.component_of.size() == run.total());
}

TEST_CASE("budget stops with a status") {
  RuleConfig c;
  Budget b;
  b.max_states = 10;
  RunResult r = enumerate(vmtest::seed("x10_3"), c, b, {});
  CHECK(r.status == RunStatus::state_cap);
  CHECK(to_string(r.status) == "state-cap");
}
