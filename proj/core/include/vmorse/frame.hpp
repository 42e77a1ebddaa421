#pragma once

#include "vmorse/state.hpp"

namespace vm {

// Mutable working copy of a state carrying the complex conjugation tau as an
// integer matrix (column j is the image of cycle j). Braid moves act on the
// Gram matrix and on tau together, so conjugation data survives any sequence
// of moves.
//
// Standard conjugation: for a real slot i, tau(e_i) = (-1)^inertia R(e_i),
// where R applies reflections in the cycles above i in increasing order. For a
// pair (c, cbar) at slots (i, i+1), tau(e_c) = conj[i] R(e_cbar) and
// tau(e_cbar) = conj[i+1] R(e_c), R taken over the slots above i+1.
struct Frame {
  int mu = 0;
  int neg = 0;
  int g[kMaxMu][kMaxMu];
  int tau[kMaxMu][kMaxMu];
  uint8_t kind[kMaxMu];

  // cycle v <- v + <v,u> u
  void reflect(int u, int v);
  void swap(int i, int j);
  // (u, v) at (i, i+1) -> (h_u v, u)
  void alpha(int i) { reflect(i, i + 1); swap(i, i + 1); }
  // (u, v) at (i, i+1) -> (v, h_v u); inverse of alpha
  void beta(int i) { reflect(i + 1, i); swap(i, i + 1); }
  // real at i, pair at i+1 -> pair at i, real at i+2
  void pair_down(int i) { beta(i); alpha(i + 1); }
  // pair at i, real at i+2 -> real at i, pair at i+1
  void pair_up(int i) { beta(i + 1); alpha(i); }

  // Sign s with tau(e_col) = s R_{>from}(e_src), or 0 if none.
  int tau_sign(int col, int from, int src) const;
  bool in_bound(int m) const;
  int real_count() const;
};

Frame expand(const Morsification& s);
// Copies the Gram matrix, kinds and neg into out and reads pair signs off tau.
// Returns false if an entry does not fit 16 bits.
bool pack(const Frame& f, Morsification& out);
// tau is an involution preserving the form.
bool conjugation_ok(const Frame& f);
// Search pair signs making the standard conjugation consistent. Leaves them 0
// when there is none.
bool resolve_conjugation(Morsification& s);

}  // namespace vm
