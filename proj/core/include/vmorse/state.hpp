#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vm {

constexpr int kMaxMu = 10;

// Per-slot kind. Real kinds equal the positive inertia index.
enum Kind : uint8_t { kMax = 0, kSaddle = 1, kMin = 2, kUpper = 3, kLower = 4 };

inline bool is_real(uint8_t k) { return k <= kMin; }

enum class Gauge : uint8_t { none, greedy };

class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PointAttr {
  bool real = true;
  int inertia = 1;  // ignored for complex members
  bool negative = false;
};

// One virtual morsification. Slots are ordered by (real part of) critical
// value; slots [0, neg) carry negative values. A conjugate pair occupies two
// adjacent slots (kUpper then kLower). conj holds the sign relating the pair's
// conjugation to the standard one (see frame.hpp); 0 means unresolved.
struct Morsification {
  int mu = 0;
  int neg = 0;
  std::array<std::array<int16_t, kMaxMu>, kMaxMu> g{};
  std::array<uint8_t, kMaxMu> kind{};
  std::array<int8_t, kMaxMu> conj{};

  bool operator==(const Morsification&) const = default;

  int real_count() const;
  int pair_count() const { return (mu - real_count()) / 2; }
};

Morsification validate_state(const std::vector<std::vector<int>>& matrix,
                             const std::vector<PointAttr>& points);
void check_state(const Morsification& s);  // throws StateError

// Ind: over real points with negative value, even inertia minus odd inertia.
int compute_ind(const Morsification& s);
// Number of real points with negative value. The sign of a pair's real part
// is not an invariant of a class (see rules.hpp), so pairs are not counted.
int negative_count(const Morsification& s);
int entry_bound(const Morsification& s);

// Exact determinant by fraction-free elimination.
int64_t gram_determinant(const Morsification& s);

// Negate cycle i (row and column i); pair conjugation signs follow.
void negate_cycle(Morsification& s, int i);
// Sign-gauge normal form: spanning-forest sweep from slot 0 making every tree
// edge positive. Two states related by cycle negations get the same result.
void apply_gauge(Morsification& s, Gauge gauge);

// 64-byte key. Layout (docs/formats.md): mu, neg, kind nibbles (5 bytes),
// upper triangle as int8 row by row, zero padding.
struct Key {
  std::array<uint8_t, 64> b{};
  bool operator==(const Key&) const = default;
  auto operator<=>(const Key&) const = default;
};

struct KeyHash {
  size_t operator()(const Key& k) const {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(k.b.data()), k.b.size()));
  }
};

// Key of s after the gauge is applied. Throws StateError on entries outside
// the signed 8-bit range.
Key canonical_key(const Morsification& s, Gauge gauge);
// Key of s as is (no gauge step).
Key encode_key(const Morsification& s);
// 16-bit variant for states that do not fit the 8-bit key.
std::vector<uint8_t> encode_wide(const Morsification& s);

// Conjugation signs packed two bits per slot.
uint32_t conj_bits(const Morsification& s);
Morsification decode_key(const Key& k, uint32_t conj = 0);

std::string describe(const Morsification& s);

}  // namespace vm
