#include "vmorse/rules.hpp"

#include <cstdlib>

namespace vm {

std::string to_string(Mode m) { return m == Mode::main ? "main" : "restricted"; }
std::string to_string(Gauge g) { return g == Gauge::greedy ? "greedy" : "none"; }
std::string to_string(BirthRule b) { return b == BirthRule::conjugation ? "conjugation" : "enumerate"; }
std::string to_string(ComplexSwapRule c) { return c == ComplexSwapRule::block ? "block" : "block-pairs"; }
std::string to_string(PairLayout p) { return p == PairLayout::zero ? "zero" : "top"; }

namespace {

[[noreturn]] void bad_name(const std::string& what, const std::string& v) {
  throw std::invalid_argument("unknown " + what + " '" + v + "'");
}

}  // namespace

Mode parse_mode(const std::string& v) {
  if (v == "main") return Mode::main;
  if (v == "restricted") return Mode::restricted;
  bad_name("mode", v);
}

Gauge parse_gauge(const std::string& v) {
  if (v == "greedy" || v == "greedy-sign") return Gauge::greedy;
  if (v == "none") return Gauge::none;
  bad_name("gauge", v);
}

BirthRule parse_birth_rule(const std::string& v) {
  if (v == "conjugation") return BirthRule::conjugation;
  if (v == "enumerate") return BirthRule::enumerate;
  bad_name("birth rule", v);
}

ComplexSwapRule parse_complex_swap_rule(const std::string& v) {
  if (v == "block") return ComplexSwapRule::block;
  if (v == "block-pairs") return ComplexSwapRule::block_pairs;
  bad_name("complex swap rule", v);
}

PairLayout parse_pair_layout(const std::string& v) {
  if (v == "zero") return PairLayout::zero;
  if (v == "top") return PairLayout::top;
  bad_name("pair layout", v);
}

std::string to_string(FlipKind k) {
  switch (k) {
    case FlipKind::reorder_left: return "reorder-left";
    case FlipKind::reorder_right: return "reorder-right";
    case FlipKind::death: return "death";
    case FlipKind::birth: return "birth";
    case FlipKind::cross_zero_real: return "cross-zero-real";
    case FlipKind::cross_zero_complex: return "cross-zero-complex";
  }
  return "?";
}

namespace {

int width(const Morsification& s, int i) { return s.kind[i] == kUpper ? 2 : 1; }

bool same_sign(const Morsification& s, int i, int j) { return (i < s.neg) == (j < s.neg); }

// Four-cycle braids exchanging the pairs at i and i+2. The second is the
// inverse of the first.
void pair_swap_left(Frame& f, int i) {
  f.beta(i + 1);
  f.alpha(i);
  f.beta(i + 2);
  f.alpha(i + 1);
}

void pair_swap_right(Frame& f, int i) {
  f.beta(i + 1);
  f.beta(i);
  f.alpha(i + 2);
  f.alpha(i + 1);
}

int birth_inertia(const Morsification& s, int i) {
  Frame f = expand(s);
  f.beta(i);
  int sg = f.tau_sign(i, i, i);
  return sg == 1 ? 1 : sg == -1 ? 0 : -1;
}

}  // namespace

Morsification apply(const Morsification& s, const Flip& fl) {
  const int i = fl.slot;
  if (i < 0 || i >= s.mu) throw StateError("flip slot out of range");
  auto fail = [&] { throw StateError(to_string(fl.kind) + " not applicable at slot " + std::to_string(i + 1)); };
  Morsification out = s;
  switch (fl.kind) {
    case FlipKind::reorder_left:
    case FlipKind::reorder_right: {
      if (s.kind[i] == kLower) fail();
      int j = i + width(s, i);
      if (j >= s.mu || !same_sign(s, i, j)) fail();
      bool ri = is_real(s.kind[i]), rj = is_real(s.kind[j]);
      Frame f = expand(s);
      if (ri && rj) {
        if (s.g[i][j] != 0) fail();
        f.swap(i, j);
      } else if (ri) {
        if (fl.kind != FlipKind::reorder_left) fail();
        f.pair_down(i);
      } else if (rj) {
        if (fl.kind != FlipKind::reorder_left) fail();
        f.pair_up(i);
      } else if (fl.kind == FlipKind::reorder_left) {
        pair_swap_left(f, i);
      } else {
        pair_swap_right(f, i);
      }
      if (!pack(f, out)) fail();
      // plain transpositions carry the pair signs along unchanged
      return out;
    }
    case FlipKind::death: {
      if (i + 1 >= s.mu || !is_real(s.kind[i]) || !is_real(s.kind[i + 1]) || !same_sign(s, i, i + 1)) fail();
      if (std::abs(s.g[i][i + 1]) != 1 || s.kind[i] != s.kind[i + 1] + 1) fail();
      Frame f = expand(s);
      f.alpha(i);
      f.kind[i] = kUpper;
      f.kind[i + 1] = kLower;
      if (!pack(f, out)) fail();
      return out;
    }
    case FlipKind::birth: {
      if (s.kind[i] != kUpper || std::abs(s.g[i][i + 1]) != 1) fail();
      if (fl.variant != 0 && fl.variant != 1) fail();
      Frame f = expand(s);
      f.beta(i);
      f.kind[i] = static_cast<uint8_t>(fl.variant + 1);
      f.kind[i + 1] = static_cast<uint8_t>(fl.variant);
      if (!pack(f, out)) fail();
      return out;
    }
    case FlipKind::cross_zero_real: {
      if (!is_real(s.kind[i])) fail();
      if (fl.variant > 0 && i == s.neg - 1) out.neg = s.neg - 1;
      else if (fl.variant < 0 && i == s.neg) out.neg = s.neg + 1;
      else fail();
      return out;
    }
    case FlipKind::cross_zero_complex: {
      if (s.kind[i] != kUpper) fail();
      if (fl.variant > 0 && i == s.neg - 2) out.neg = s.neg - 2;
      else if (fl.variant < 0 && i == s.neg) out.neg = s.neg + 2;
      else fail();
      return out;
    }
  }
  fail();
  return out;
}

Flip inverse_of(const Flip& f, const Morsification& pre) {
  switch (f.kind) {
    case FlipKind::reorder_left:
      if (is_real(pre.kind[f.slot]) && f.slot + 1 < pre.mu && is_real(pre.kind[f.slot + 1]))
        return {FlipKind::reorder_right, f.slot, 0};
      if (pre.kind[f.slot] == kUpper && f.slot + 2 < pre.mu && pre.kind[f.slot + 2] == kUpper)
        return {FlipKind::reorder_right, f.slot, 0};
      return f;  // real/pair exchanges invert each other at the same slot
    case FlipKind::reorder_right: return {FlipKind::reorder_left, f.slot, 0};
    case FlipKind::death: return {FlipKind::birth, f.slot, pre.kind[f.slot + 1]};
    case FlipKind::birth: return {FlipKind::death, f.slot, 0};
    case FlipKind::cross_zero_real:
    case FlipKind::cross_zero_complex: return {f.kind, f.slot, -f.variant};
  }
  return f;
}

std::vector<Flip> applicable_flips(const Morsification& s, const RuleConfig& cfg) {
  std::vector<Flip> cand;
  for (int i = 0; i < s.mu; ++i) {
    if (s.kind[i] == kLower) continue;
    int j = i + width(s, i);
    if (j >= s.mu || !same_sign(s, i, j)) continue;
    bool ri = is_real(s.kind[i]), rj = is_real(s.kind[j]);
    if (ri && rj) {
      if (s.g[i][j] == 0) {
        cand.push_back({FlipKind::reorder_left, i, 0});
        cand.push_back({FlipKind::reorder_right, i, 0});
      }
    } else if (ri || rj) {
      cand.push_back({FlipKind::reorder_left, i, 0});
    } else if (cfg.complex_swap == ComplexSwapRule::block_pairs) {
      cand.push_back({FlipKind::reorder_left, i, 0});
      cand.push_back({FlipKind::reorder_right, i, 0});
    }
  }
  for (int i = 0; i + 1 < s.mu; ++i) {
    if (is_real(s.kind[i]) && is_real(s.kind[i + 1]) && same_sign(s, i, i + 1) && std::abs(s.g[i][i + 1]) == 1 &&
        s.kind[i] == s.kind[i + 1] + 1)
      cand.push_back({FlipKind::death, i, 0});
    if (s.kind[i] == kUpper && std::abs(s.g[i][i + 1]) == 1) {
      if (cfg.birth == BirthRule::enumerate) {
        cand.push_back({FlipKind::birth, i, 0});
        cand.push_back({FlipKind::birth, i, 1});
      } else {
        int q = birth_inertia(s, i);
        if (q >= 0) cand.push_back({FlipKind::birth, i, q});
      }
    }
  }
  if (s.neg >= 2 && s.kind[s.neg - 2] == kUpper) cand.push_back({FlipKind::cross_zero_complex, s.neg - 2, +1});
  if (s.neg < s.mu && s.kind[s.neg] == kUpper) cand.push_back({FlipKind::cross_zero_complex, s.neg, -1});
  if (cfg.mode == Mode::main) {
    if (s.neg >= 1 && is_real(s.kind[s.neg - 1])) cand.push_back({FlipKind::cross_zero_real, s.neg - 1, +1});
    if (s.neg < s.mu && is_real(s.kind[s.neg])) cand.push_back({FlipKind::cross_zero_real, s.neg, -1});
  }
  if (!cfg.m_bound) return cand;
  std::vector<Flip> out;
  for (const Flip& f : cand)
    if (entry_bound(apply(s, f)) <= cfg.m_bound) out.push_back(f);
  return out;
}

// ---- classes ----

void settle_top(Frame& f) {
  for (bool moved = true; moved;) {
    moved = false;
    for (int i = f.mu - 3; i >= 0; --i)
      if (f.kind[i] == kUpper && is_real(f.kind[i + 2])) {
        f.pair_up(i);
        moved = true;
      }
  }
}

void stack_pairs(Frame& f, int r, int np, int j) {
  for (int p = 0; p < np; ++p) {
    int pos = r + 2 * p;
    for (int x = pos; x > j + 2 * p; --x) f.pair_down(x - 1);
  }
}

bool layout_in_bound(const Frame& parked, int m, PairLayout layout) {
  if (layout == PairLayout::top) return parked.in_bound(m);
  Frame z = parked;
  int r = z.real_count();
  stack_pairs(z, r, (z.mu - r) / 2, z.neg);
  return z.in_bound(m);
}

Morsification canonical_form(const Morsification& s, Gauge gauge) {
  Frame f = expand(s);
  int kn = negative_count(s);
  settle_top(f);
  f.neg = kn;
  Morsification out;
  if (!pack(f, out)) throw StateError("entry overflow while parking pairs");
  apply_gauge(out, gauge);
  return out;
}

namespace {

struct Emitter {
  const RuleConfig& cfg;
  std::vector<Morsification>& out;

  void operator()(const Frame& f) {
    if (cfg.m_bound && !layout_in_bound(f, cfg.m_bound, cfg.layout)) return;
    Morsification s;
    if (!pack(f, s)) return;
    apply_gauge(s, cfg.gauge);
    out.push_back(s);
  }
};

}  // namespace

void class_neighbors(const Morsification& canon, const RuleConfig& cfg, bool with_main, std::vector<Morsification>& out) {
  out.clear();
  Emitter emit{cfg, out};
  const Frame base = expand(canon);
  const int mu = canon.mu, r = base.real_count(), kn = canon.neg, np = (mu - r) / 2;

  for (int i = 0; i + 1 < r; ++i) {
    if ((i < kn) != (i + 1 < kn)) continue;
    int c = base.g[i][i + 1];
    if (c == 0) {
      Frame f = base;
      f.swap(i, i + 1);
      emit(f);
    }
    if ((c == 1 || c == -1) && base.kind[i] == base.kind[i + 1] + 1) {
      for (int t = 0; t <= np; ++t) {
        Frame f = base;
        stack_pairs(f, r, t, i);
        int a = i + 2 * t;
        f.alpha(a);
        f.kind[a] = kUpper;
        f.kind[a + 1] = kLower;
        settle_top(f);
        f.neg = i < kn ? kn - 2 : kn;
        emit(f);
      }
    }
  }

  for (int sp = 0; sp < np; ++sp)
    for (int j = 0; j <= r; ++j) {
      Frame f = base;
      stack_pairs(f, r, sp + 1, j);
      int a = j + 2 * sp;
      if (f.g[a][a + 1] != 1 && f.g[a][a + 1] != -1) continue;
      f.beta(a);
      int sg = f.tau_sign(a, a, a);
      for (int q = 0; q < 2; ++q) {
        if (cfg.birth == BirthRule::conjugation && (sg == 0 || q != (sg == 1 ? 1 : 0))) continue;
        Frame h = f;
        h.kind[a] = static_cast<uint8_t>(q + 1);
        h.kind[a + 1] = static_cast<uint8_t>(q);
        settle_top(h);
        if (j <= kn) {
          h.neg = kn + 2;
          emit(h);
        }
        if (j >= kn) {
          h.neg = kn;
          emit(h);
        }
      }
    }

  if (cfg.complex_swap == ComplexSwapRule::block_pairs)
    for (int i = r; i + 3 < mu; i += 2) {
      Frame f = base;
      pair_swap_left(f, i);
      emit(f);
      Frame h = base;
      pair_swap_right(h, i);
      emit(h);
    }

  if (with_main) {
    if (kn > 0) {
      Frame f = base;
      f.neg = kn - 1;
      emit(f);
    }
    if (kn < r) {
      Frame f = base;
      f.neg = kn + 1;
      emit(f);
    }
  }
}

}  // namespace vm
