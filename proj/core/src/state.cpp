#include "vmorse/state.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "vmorse/frame.hpp"

namespace vm {

int Morsification::real_count() const {
  int r = 0;
  for (int i = 0; i < mu; ++i) r += is_real(kind[i]);
  return r;
}

void check_state(const Morsification& s) {
  if (s.mu < 1 || s.mu > kMaxMu) throw StateError("mu out of range");
  if (s.neg < 0 || s.neg > s.mu) throw StateError("negative slot count out of range");
  for (int i = 0; i < s.mu; ++i) {
    if (s.g[i][i] != -2) throw StateError("diagonal entry " + std::to_string(i + 1) + " is not -2");
    for (int j = 0; j < i; ++j)
      if (s.g[i][j] != s.g[j][i])
        throw StateError("matrix not symmetric at (" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ")");
  }
  for (int i = 0; i < s.mu; ++i) {
    if (s.kind[i] > kLower) throw StateError("bad kind at slot " + std::to_string(i + 1));
    if (s.kind[i] == kUpper) {
      if (i + 1 >= s.mu || s.kind[i + 1] != kLower) throw StateError("unpaired complex point at slot " + std::to_string(i + 1));
      if ((i < s.neg) != (i + 1 < s.neg)) throw StateError("pair at slot " + std::to_string(i + 1) + " straddles the zero level");
      ++i;
    } else if (s.kind[i] == kLower) {
      throw StateError("unpaired complex point at slot " + std::to_string(i + 1));
    }
  }
}

Morsification validate_state(const std::vector<std::vector<int>>& matrix,
                             const std::vector<PointAttr>& points) {
  Morsification s;
  const int mu = static_cast<int>(matrix.size());
  if (mu < 1 || mu > kMaxMu) throw StateError("mu must be in 1.." + std::to_string(kMaxMu));
  if (static_cast<int>(points.size()) != mu) throw StateError("point count does not match matrix size");
  s.mu = mu;
  for (int i = 0; i < mu; ++i) {
    if (static_cast<int>(matrix[i].size()) != mu) throw StateError("row " + std::to_string(i + 1) + " has wrong length");
    for (int j = 0; j < mu; ++j) {
      int v = matrix[i][j];
      if (v < -32768 || v > 32767) throw StateError("entry out of range in row " + std::to_string(i + 1));
      s.g[i][j] = static_cast<int16_t>(v);
    }
  }
  bool seen_pos = false;
  for (int i = 0; i < mu; ++i) {
    const PointAttr& p = points[i];
    if (p.negative && seen_pos) throw StateError("value signs not monotone at slot " + std::to_string(i + 1));
    if (!p.negative) seen_pos = true;
    if (p.negative) s.neg = i + 1;
    if (p.real) {
      if (p.inertia < 0 || p.inertia > 2) throw StateError("inertia out of range at slot " + std::to_string(i + 1));
      s.kind[i] = static_cast<uint8_t>(p.inertia);
    }
  }
  for (int i = 0; i < mu; ++i) {
    if (points[i].real) continue;
    if (i + 1 >= mu || points[i + 1].real) throw StateError("unpaired complex point at slot " + std::to_string(i + 1));
    if (points[i].negative != points[i + 1].negative) throw StateError("pair members differ in sign at slot " + std::to_string(i + 1));
    s.kind[i] = kUpper;
    s.kind[i + 1] = kLower;
    ++i;
  }
  check_state(s);
  if (s.real_count() < mu) resolve_conjugation(s);
  return s;
}

int compute_ind(const Morsification& s) {
  int r = 0;
  for (int i = 0; i < s.neg; ++i)
    if (is_real(s.kind[i])) r += (s.kind[i] % 2 == 0) ? 1 : -1;
  return r;
}

int negative_count(const Morsification& s) {
  int r = 0;
  for (int i = 0; i < s.neg; ++i) r += is_real(s.kind[i]);
  return r;
}

int entry_bound(const Morsification& s) {
  int m = 0;
  for (int i = 0; i < s.mu; ++i)
    for (int j = i + 1; j < s.mu; ++j) m = std::max(m, std::abs(int(s.g[i][j])));
  return m;
}

int64_t gram_determinant(const Morsification& s) {
  const int n = s.mu;
  __int128 a[kMaxMu][kMaxMu];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = s.g[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(a[k][j], a[p][j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return static_cast<int64_t>(sign * a[n - 1][n - 1]);
}

void negate_cycle(Morsification& s, int i) {
  for (int j = 0; j < s.mu; ++j)
    if (j != i) {
      s.g[i][j] = static_cast<int16_t>(-s.g[i][j]);
      s.g[j][i] = static_cast<int16_t>(-s.g[j][i]);
    }
  // tau(e_c) = conj R(e_cbar): negating either member flips both signs
  if (s.kind[i] == kUpper) {
    s.conj[i] = static_cast<int8_t>(-s.conj[i]);
    s.conj[i + 1] = static_cast<int8_t>(-s.conj[i + 1]);
  } else if (s.kind[i] == kLower) {
    s.conj[i] = static_cast<int8_t>(-s.conj[i]);
    s.conj[i - 1] = static_cast<int8_t>(-s.conj[i - 1]);
  }
}

void apply_gauge(Morsification& s, Gauge gauge) {
  if (gauge == Gauge::none) return;
  int sg[kMaxMu] = {0};
  int q[kMaxMu];
  for (int root = 0; root < s.mu; ++root) {
    if (sg[root]) continue;
    sg[root] = 1;
    int head = 0, tail = 0;
    q[tail++] = root;
    while (head < tail) {
      int u = q[head++];
      for (int v = 0; v < s.mu; ++v)
        if (!sg[v] && s.g[u][v]) {
          sg[v] = (s.g[u][v] > 0 ? 1 : -1) * sg[u];
          q[tail++] = v;
        }
    }
  }
  for (int i = 0; i < s.mu; ++i)
    for (int j = 0; j < s.mu; ++j) s.g[i][j] = static_cast<int16_t>(s.g[i][j] * sg[i] * sg[j]);
  for (int i = 0; i + 1 < s.mu; ++i)
    if (s.kind[i] == kUpper) {
      int f = sg[i] * sg[i + 1];
      s.conj[i] = static_cast<int8_t>(s.conj[i] * f);
      s.conj[i + 1] = static_cast<int8_t>(s.conj[i + 1] * f);
    }
}

Key encode_key(const Morsification& s) {
  Key k;
  k.b[0] = static_cast<uint8_t>(s.mu);
  k.b[1] = static_cast<uint8_t>(s.neg);
  for (int i = 0; i < s.mu; ++i) k.b[2 + i / 2] |= static_cast<uint8_t>(s.kind[i] << (4 * (i % 2)));
  int p = 7;
  for (int i = 0; i < s.mu; ++i)
    for (int j = i + 1; j < s.mu; ++j) {
      int v = s.g[i][j];
      if (v < -128 || v > 127) throw StateError("entry outside the 8-bit key range; use the wide encoding");
      k.b[p++] = static_cast<uint8_t>(static_cast<int8_t>(v));
    }
  return k;
}

Key canonical_key(const Morsification& s, Gauge gauge) {
  if (gauge == Gauge::none) return encode_key(s);
  Morsification t = s;
  apply_gauge(t, gauge);
  return encode_key(t);
}

std::vector<uint8_t> encode_wide(const Morsification& s) {
  std::vector<uint8_t> out;
  out.push_back(static_cast<uint8_t>(s.mu));
  out.push_back(static_cast<uint8_t>(s.neg));
  for (int i = 0; i < s.mu; ++i) out.push_back(s.kind[i]);
  for (int i = 0; i < s.mu; ++i)
    for (int j = i + 1; j < s.mu; ++j) {
      uint16_t v = static_cast<uint16_t>(s.g[i][j]);
      out.push_back(static_cast<uint8_t>(v & 0xff));
      out.push_back(static_cast<uint8_t>(v >> 8));
    }
  return out;
}

uint32_t conj_bits(const Morsification& s) {
  uint32_t r = 0;
  for (int i = 0; i < s.mu; ++i) {
    uint32_t c = s.conj[i] == 1 ? 1u : s.conj[i] == -1 ? 2u : 0u;
    r |= c << (2 * i);
  }
  return r;
}

Morsification decode_key(const Key& k, uint32_t conj) {
  Morsification s;
  s.mu = k.b[0];
  s.neg = k.b[1];
  if (s.mu < 1 || s.mu > kMaxMu) throw StateError("bad key");
  for (int i = 0; i < s.mu; ++i) {
    s.kind[i] = (k.b[2 + i / 2] >> (4 * (i % 2))) & 0xf;
    s.g[i][i] = -2;
    uint32_t c = (conj >> (2 * i)) & 3u;
    s.conj[i] = c == 1 ? 1 : c == 2 ? -1 : 0;
  }
  int p = 7;
  for (int i = 0; i < s.mu; ++i)
    for (int j = i + 1; j < s.mu; ++j) {
      int16_t v = static_cast<int8_t>(k.b[p++]);
      s.g[i][j] = s.g[j][i] = v;
    }
  return s;
}

std::string describe(const Morsification& s) {
  static const char* names[] = {"max", "saddle", "min", "c", "cbar"};
  std::ostringstream os;
  os << "mu " << s.mu << "  negative slots " << s.neg << "  Ind " << compute_ind(s) << "\n";
  for (int i = 0; i < s.mu; ++i) {
    for (int j = 0; j < s.mu; ++j) {
      os.width(4);
      os << s.g[i][j];
    }
    os << "   " << names[s.kind[i]] << (i < s.neg ? " -" : " +") << "\n";
  }
  return os.str();
}

}  // namespace vm
