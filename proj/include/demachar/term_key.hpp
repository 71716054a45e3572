#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>

#include <absl/hash/hash.h>

#include "demachar/common.hpp"
#include "demachar/root_system.hpp"

namespace demachar {

/// Characters are keyed by (weight, grade) packed into 16 bytes: one signed
/// byte per fundamental coordinate plus a 16-bit grade.  All hot loops run on
/// these keys; Weight/Coords appear only at API boundaries.
inline constexpr int kMaxPackRank = 14;

struct TermKey {
  std::array<std::int8_t, kMaxPackRank> w{};
  std::int16_t grade = 0;

  friend bool operator==(const TermKey& a, const TermKey& b) {
    return std::memcmp(&a, &b, sizeof(TermKey)) == 0;
  }
};
static_assert(sizeof(TermKey) == 16);

struct TermKeyHash {
  std::size_t operator()(const TermKey& k) const {
    std::uint64_t lo, hi;
    std::memcpy(&lo, &k, 8);
    std::memcpy(&hi, reinterpret_cast<const char*>(&k) + 8, 8);
    return absl::Hash<std::pair<std::uint64_t, std::uint64_t>>{}({lo, hi});
  }
};

inline std::int8_t pack_coord(Int v) {
  if (v < -128 || v > 127)
    throw BudgetError("weight coordinate exceeds character engine range");
  return static_cast<std::int8_t>(v);
}

inline std::int16_t pack_grade(Int g) {
  if (g < -32768 || g > 32767)
    throw BudgetError("grade exceeds character engine range");
  return static_cast<std::int16_t>(g);
}

inline TermKey pack_term(const Weight& w, Int grade) {
  if (w.rank() > kMaxPackRank)
    throw BudgetError("rank exceeds character engine limit");
  TermKey k;
  for (int i = 0; i < w.rank(); ++i) k.w[i] = pack_coord(w.c[i]);
  k.grade = pack_grade(grade);
  return k;
}

inline Weight unpack_weight(const TermKey& k, int rank) {
  Weight w = Weight::zero(rank);
  for (int i = 0; i < rank; ++i) w.c[i] = k.w[i];
  return w;
}

/// Step vector for walking root strings: weight delta per application plus a
/// grade delta (only the affine node moves the grade).
struct KeyDelta {
  std::array<std::int32_t, kMaxPackRank> w{};
  Int grade = 0;
  int rank = 0;
};

/// key - k * delta; range violations are detected branch-free and reported
/// once at the end.
inline TermKey shift_key(const TermKey& key, const KeyDelta& d, Int k) {
  TermKey out = key;
  std::int32_t kk = static_cast<std::int32_t>(k);
  std::int32_t bad = 0;
  for (int i = 0; i < d.rank; ++i) {
    std::int32_t v = static_cast<std::int32_t>(key.w[i]) - kk * d.w[i];
    bad |= (v + 128) & ~255;
    out.w[i] = static_cast<std::int8_t>(v);
  }
  Int g = static_cast<Int>(key.grade) - k * d.grade;
  if (bad != 0 || g < -32768 || g > 32767 || k != static_cast<Int>(kk))
    throw BudgetError("weight coordinate exceeds character engine range");
  out.grade = static_cast<std::int16_t>(g);
  return out;
}

}  // namespace demachar
