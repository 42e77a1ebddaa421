#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vmorse/frame.hpp"
#include "vmorse/state.hpp"

namespace vm {

enum class Mode : uint8_t { restricted, main };
// conjugation: a birth produces the inertia pair forced by the tracked
// conjugation. enumerate: both (q+1, q) choices are offered.
enum class BirthRule : uint8_t { conjugation, enumerate };
// block: pairs pass real points only. block_pairs: pairs may also pass each
// other by the two braid moves of a four-cycle block.
enum class ComplexSwapRule : uint8_t { block, block_pairs };
// Where pairs sit when the m-clamp is evaluated: at the zero level (between
// the negative and positive real points) or above all real points.
enum class PairLayout : uint8_t { zero, top };

struct RuleConfig {
  Mode mode = Mode::main;
  int m_bound = 0;  // 0 = no clamp
  Gauge gauge = Gauge::greedy;
  BirthRule birth = BirthRule::conjugation;
  ComplexSwapRule complex_swap = ComplexSwapRule::block;
  PairLayout layout = PairLayout::zero;

  bool operator==(const RuleConfig&) const = default;
};

std::string to_string(Mode);
std::string to_string(Gauge);
std::string to_string(BirthRule);
std::string to_string(ComplexSwapRule);
std::string to_string(PairLayout);
Mode parse_mode(const std::string&);
Gauge parse_gauge(const std::string&);
BirthRule parse_birth_rule(const std::string&);
ComplexSwapRule parse_complex_swap_rule(const std::string&);
PairLayout parse_pair_layout(const std::string&);

// ---- single flips on positional states ----

enum class FlipKind : uint8_t { reorder_left, reorder_right, death, birth, cross_zero_real, cross_zero_complex };

std::string to_string(FlipKind);

// slot is the lowest slot involved. variant: birth = lower inertia q of the
// new pair (q+1, q); cross-zero = +1 toward positive, -1 toward negative.
struct Flip {
  FlipKind kind = FlipKind::reorder_left;
  int slot = 0;
  int variant = 0;
  bool operator==(const Flip&) const = default;
};

// Reorders exchange the element at slot with the next one (an element is a
// real point or a pair block):
//   real/real   orthogonal only, plain transposition (left and right agree)
//   real/pair   pair passes the real point by the conjugation-compatible braid
//   pair/pair   left and right are the two block braids (block_pairs only)
std::vector<Flip> applicable_flips(const Morsification& s, const RuleConfig& cfg);
Morsification apply(const Morsification& s, const Flip& f);  // throws StateError
Flip inverse_of(const Flip& f, const Morsification& pre);

// ---- classes ----
//
// Sliding a pair past a real point and moving a pair across the zero level are
// free moves; a class is an orbit under them together with the sign gauge.
// The canonical representative parks every pair above all real points (pairs
// keep their relative order) and marks them positive; neg then counts the
// negative real points.

void settle_top(Frame& f);
// Slide the lowest np parked pairs down so they sit just below real point j.
// f must be in the parked layout with r real points.
void stack_pairs(Frame& f, int r, int np, int j);
Morsification canonical_form(const Morsification& s, Gauge gauge);
// The clamp check of a parked frame under the configured layout.
bool layout_in_bound(const Frame& parked, int m, PairLayout layout);

// Neighbours of a canonical state under compound generators (see README).
// Results are canonical; the clamp is applied.
void class_neighbors(const Morsification& canon, const RuleConfig& cfg, bool with_main, std::vector<Morsification>& out);

}  // namespace vm
