#pragma once

#include <random>
#include <string>
#include <vector>

#include "vmorse/persist.hpp"
#include "vmorse/rules.hpp"

#ifndef VMORSE_SOURCE_DIR
#define VMORSE_SOURCE_DIR "."
#endif

namespace vmtest {

inline std::string source_path(const std::string& rel) { return std::string(VMORSE_SOURCE_DIR) + "/" + rel; }

inline const std::vector<std::string>& seed_names() {
  static const std::vector<std::string> names{"x10_3", "x10_3_m4800", "x10_3_8496", "x10_3_4320", "x10_1_fake", "x10_1"};
  return names;
}

inline vm::Morsification seed(const std::string& name) { return vm::load_seed(source_path("seeds/" + name + ".seed")); }

// Positional states reached by random walks of applicable flips from the
// packaged seeds. The walk is clamped so entries stay small.
inline std::vector<vm::Morsification> random_states(size_t n, uint64_t rng_seed, int walk = 40, int clamp = 3) {
  std::mt19937_64 rng(rng_seed);
  std::vector<vm::Morsification> seeds;
  for (const auto& s : seed_names()) seeds.push_back(seed(s));
  vm::RuleConfig cfg;
  cfg.m_bound = clamp;
  cfg.complex_swap = vm::ComplexSwapRule::block_pairs;
  std::vector<vm::Morsification> out;
  out.reserve(n);
  while (out.size() < n) {
    vm::Morsification s = seeds[rng() % seeds.size()];
    int steps = 1 + static_cast<int>(rng() % walk);
    for (int t = 0; t < steps; ++t) {
      auto flips = vm::applicable_flips(s, cfg);
      if (flips.empty()) break;
      s = vm::apply(s, flips[rng() % flips.size()]);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace vmtest
