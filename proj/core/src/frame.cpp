#include "vmorse/frame.hpp"

#include <cstdlib>
#include <utility>

namespace vm {

namespace {

// x <- R_{>i}(x): reflect in cycles i+1, ..., mu-1 in turn.
void reflect_above(const Frame& f, int i, int* x) {
  for (int j = i + 1; j < f.mu; ++j) {
    int d = 0;
    for (int m = 0; m < f.mu; ++m) d += f.g[j][m] * x[m];
    x[j] += d;
  }
}

}  // namespace

void Frame::reflect(int u, int v) {
  int c = g[v][u];
  if (!c) return;
  for (int j = 0; j < mu; ++j) tau[u][j] -= c * tau[v][j];
  for (int j = 0; j < mu; ++j) tau[j][v] += c * tau[j][u];
  int row[kMaxMu];
  for (int j = 0; j < mu; ++j) row[j] = g[v][j] + c * g[u][j];
  row[v] = -2;
  for (int j = 0; j < mu; ++j) g[v][j] = g[j][v] = row[j];
}

void Frame::swap(int i, int j) {
  for (int x = 0; x < mu; ++x) {
    std::swap(g[i][x], g[j][x]);
    std::swap(tau[i][x], tau[j][x]);
  }
  for (int x = 0; x < mu; ++x) {
    std::swap(g[x][i], g[x][j]);
    std::swap(tau[x][i], tau[x][j]);
  }
  std::swap(kind[i], kind[j]);
}

int Frame::tau_sign(int col, int from, int src) const {
  int x[kMaxMu] = {0};
  x[src] = 1;
  reflect_above(*this, from, x);
  int sg = 0;
  for (int m = 0; m < mu; ++m) {
    if (x[m] == 0 && tau[m][col] == 0) continue;
    if (x[m] == tau[m][col]) {
      if (sg == -1) return 0;
      sg = 1;
    } else if (x[m] == -tau[m][col]) {
      if (sg == 1) return 0;
      sg = -1;
    } else {
      return 0;
    }
  }
  return sg;
}

bool Frame::in_bound(int m) const {
  for (int i = 0; i < mu; ++i)
    for (int j = i + 1; j < mu; ++j)
      if (std::abs(g[i][j]) > m) return false;
  return true;
}

int Frame::real_count() const {
  int r = 0;
  for (int i = 0; i < mu; ++i) r += is_real(kind[i]);
  return r;
}

Frame expand(const Morsification& s) {
  Frame f;
  f.mu = s.mu;
  f.neg = s.neg;
  for (int i = 0; i < s.mu; ++i) {
    f.kind[i] = s.kind[i];
    for (int j = 0; j < s.mu; ++j) f.g[i][j] = s.g[i][j];
  }
  for (int i = 0; i < s.mu; ++i) {
    int x[kMaxMu] = {0};
    int sg;
    if (is_real(s.kind[i])) {
      x[i] = 1;
      reflect_above(f, i, x);
      sg = (s.kind[i] & 1) ? -1 : 1;
    } else if (s.kind[i] == kUpper) {
      x[i + 1] = 1;
      reflect_above(f, i + 1, x);
      sg = s.conj[i];
    } else {
      x[i - 1] = 1;
      reflect_above(f, i, x);
      sg = s.conj[i];
    }
    for (int m = 0; m < s.mu; ++m) f.tau[m][i] = sg * x[m];
  }
  return f;
}

bool pack(const Frame& f, Morsification& out) {
  out.mu = f.mu;
  out.neg = f.neg;
  for (int i = 0; i < f.mu; ++i)
    for (int j = 0; j < f.mu; ++j) {
      int v = f.g[i][j];
      if (v < -32768 || v > 32767) return false;
      out.g[i][j] = static_cast<int16_t>(v);
    }
  for (int i = 0; i < f.mu; ++i) {
    out.kind[i] = f.kind[i];
    out.conj[i] = 0;
  }
  for (int i = 0; i + 1 < f.mu; ++i)
    if (f.kind[i] == kUpper) {
      out.conj[i] = static_cast<int8_t>(f.tau_sign(i, i + 1, i + 1));
      out.conj[i + 1] = static_cast<int8_t>(f.tau_sign(i + 1, i + 1, i));
    }
  return true;
}

bool conjugation_ok(const Frame& f) {
  const int n = f.mu;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long a = 0;
      for (int m = 0; m < n; ++m) a += static_cast<long>(f.tau[i][m]) * f.tau[m][j];
      if (a != (i == j)) return false;
      long b = 0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) b += static_cast<long>(f.tau[p][i]) * f.g[p][q] * f.tau[q][j];
      if (b != f.g[i][j]) return false;
    }
  return true;
}

bool resolve_conjugation(Morsification& s) {
  int slots[kMaxMu];
  int n = 0;
  for (int i = 0; i < s.mu; ++i)
    if (!is_real(s.kind[i])) slots[n++] = i;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int b = 0; b < n; ++b) s.conj[slots[b]] = (mask >> b) & 1 ? -1 : 1;
    if (conjugation_ok(expand(s))) return true;
  }
  for (int b = 0; b < n; ++b) s.conj[slots[b]] = 0;
  return false;
}

}  // namespace vm
