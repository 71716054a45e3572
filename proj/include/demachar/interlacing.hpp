#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "demachar/root_system.hpp"

namespace demachar {

/// An interlacing pair in canonical order: part1 carries the block containing
/// the largest support index (for type D with spin support, that is the spin
/// block).  Supports of the two parts alternate strictly, and in type D all
/// spin support lives in one part.
struct InterlacingPair {
  Weight part1;
  Weight part2;

  Weight sum() const { return part1 + part2; }
  friend bool operator==(const InterlacingPair&, const InterlacingPair&) = default;
};

/// Names the first violated clause of the interlacing definition, or nothing
/// when the pair is interlacing.  Accepts the parts in either order.
inline std::optional<std::string> interlacing_violation(const RootSystem& rs,
                                                        const Weight& a,
                                                        const Weight& b) {
  int n = rs.rank();
  if (a.rank() != n || b.rank() != n) throw DomainError("weight rank mismatch");
  if (!rs.dominant(a) || !rs.dominant(b)) return "parts must be dominant";
  Weight sum = a + b;
  if (!rs.is_multiplicity_free(sum))
    return "part sum must have coordinates in {0,1}";
  bool type_d = rs.series() == Series::D;
  if (type_d) {
    Int spin_a = a.c[n - 2] + a.c[n - 1];
    Int spin_b = b.c[n - 2] + b.c[n - 1];
    if (spin_a + spin_b > 0 && spin_a != 0 && spin_b != 0)
      return "spin support must lie in a single part";
  }
  const Weight* parts[2] = {&a, &b};
  for (int r = 0; r < 2; ++r) {
    const Weight& mine = *parts[r];
    const Weight& other = *parts[1 - r];
    for (int i = 1; i <= n; ++i) {
      if (mine.c[i - 1] != 1) continue;
      for (int j = i + 1; j <= n; ++j) {
        if (mine.c[j - 1] != 1) continue;
        if (type_d && i == n - 1 && j == n) continue;
        bool separated = false;
        for (int s = i + 1; s < j && !separated; ++s)
          separated = other.c[s - 1] == 1;
        if (!separated)
          return "support indices " + std::to_string(i) + " and " + std::to_string(j) +
                 " of one part have no separator in the other";
      }
    }
  }
  return std::nullopt;
}

/// Direct check of the defining conditions; the brute-force oracle for
/// interlace_decompose.
inline bool verify_interlacing(const RootSystem& rs, const Weight& a, const Weight& b) {
  return !interlacing_violation(rs, a, b).has_value();
}

/// Splits a multiplicity-free dominant weight into its interlacing pair:
/// support indices form blocks (the two spin indices merge into one block
/// when both are present), blocks are assigned alternately from the largest
/// down, part1 first.
inline InterlacingPair interlace_decompose(const RootSystem& rs, const Weight& lambda) {
  int n = rs.rank();
  if (lambda.rank() != n) throw DomainError("weight rank mismatch");
  if (!rs.is_multiplicity_free(lambda))
    throw DomainError("weight must be dominant with coordinates in {0,1}");

  std::vector<std::vector<int>> blocks;  // descending by position
  bool type_d = rs.series() == Series::D;
  bool merged_spin =
      type_d && lambda.c[n - 2] == 1 && lambda.c[n - 1] == 1;
  if (merged_spin) blocks.push_back({n - 1, n});
  for (int i = n; i >= 1; --i) {
    if (lambda.c[i - 1] != 1) continue;
    if (merged_spin && (i == n - 1 || i == n)) continue;
    blocks.push_back({i});
  }
  InterlacingPair pair{Weight::zero(n), Weight::zero(n)};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Weight& part = (b % 2 == 0) ? pair.part1 : pair.part2;
    for (int i : blocks[b]) part.c[i - 1] = 1;
  }
  if (!verify_interlacing(rs, pair.part1, pair.part2))
    throw InternalError("interlacing decomposition failed its own check");
  return pair;
}

/// Puts a verified pair into canonical order.
inline InterlacingPair canonical_pair(const RootSystem& rs, const Weight& a,
                                      const Weight& b) {
  if (!verify_interlacing(rs, a, b)) throw DomainError("pair is not interlacing");
  int top = 0;
  for (int i = rs.rank(); i >= 1; --i) {
    if (a.c[i - 1] == 1) { top = 1; break; }
    if (b.c[i - 1] == 1) { top = 2; break; }
  }
  if (top == 2) return {b, a};
  return {a, b};
}

/// The distinguished root along which the flag recursion descends, with its
/// defining indices: beta(pprime, p+1) where p is maximal with
/// part1(h_{p+1}) = 1, p <= n-2, and pprime <= p is maximal with
/// (part1 - part2)(h_{pprime} + ... + h_p) = 0.
struct FlagRoot {
  RootVec root;
  int p = 0;
  int pprime = 0;
};

/// Absent exactly when the pair admits no descent: type A always; lambda = 0;
/// lambda with spin pairing 1; and the ladder weights
/// omega_{i-1} + omega_i (+ omega_n when i = n-1).
inline std::optional<FlagRoot> flag_root(const RootSystem& rs,
                                         const InterlacingPair& pair) {
  int n = rs.rank();
  if (rs.series() == Series::A) return std::nullopt;
  Weight lambda = pair.sum();
  if (lambda.is_zero()) return std::nullopt;
  Int spin = lambda.c[n - 2] + lambda.c[n - 1];
  if (spin == 1) return std::nullopt;
  // ladder weights omega_{i-1} + omega_i + delta_{i+1,n} omega_n, 1 <= i <= n-1
  for (int i = 1; i <= n - 1; ++i) {
    Weight ladder = Weight::zero(n);
    if (i >= 2) ladder.c[i - 2] = 1;
    ladder.c[i - 1] = 1;
    if (i + 1 == n) ladder.c[n - 1] = 1;
    if (lambda == ladder) return std::nullopt;
  }

  int p = 0;
  for (int q = n - 2; q >= 1; --q)
    if (pair.part1.c[q] == 1) { p = q; break; }  // part1(h_{q+1}) == 1
  if (p == 0) throw InternalError("flag root: index p does not exist");

  int pprime = 0;
  Int partial = 0;
  for (int q = p; q >= 1; --q) {
    partial += pair.part1.c[q - 1] - pair.part2.c[q - 1];
    if (partial == 0) { pprime = q; break; }
  }
  if (pprime == 0) throw InternalError("flag root: index p' does not exist");

  FlagRoot fr{rs.beta(pprime, p + 1), p, pprime};
  Int d = (pprime == p) ? 1 : 0;
  if (rs.pairing(pair.part1, fr.root) != 3 - d ||
      rs.pairing(pair.part2, fr.root) != 1 - d)
    throw InternalError("flag root pairing identities violated");
  return fr;
}

/// All beta roots on which the two parts' pairings differ by exactly 2,
/// by direct enumeration.  Empty in type A and exactly when flag_root is
/// absent.
inline std::vector<RootVec> gap_two_roots(const RootSystem& rs,
                                          const InterlacingPair& pair) {
  std::vector<RootVec> out;
  if (rs.series() == Series::A) return out;
  Weight diff = pair.part1 - pair.part2;
  for (int i = 1; i <= rs.rank() - 1; ++i)
    for (int j = i + 1; j <= rs.rank() - 1; ++j) {
      RootVec b = rs.beta(i, j);
      Int v = rs.pairing(diff, b);
      if (v == 2 || v == -2) out.push_back(b);
    }
  return out;
}

/// One descent of the flag recursion: the dominant weight nu that is peeled
/// from both parts, and the reduced pair (part1 - beta - nu, part2 - nu) in
/// canonical order.
struct FlagDescent {
  Weight nu;
  InterlacingPair next;
};

inline FlagDescent flag_descent(const RootSystem& rs, const InterlacingPair& pair) {
  auto fr = flag_root(rs, pair);
  if (!fr) throw DomainError("pair admits no flag descent");
  int n = rs.rank();
  int p = fr->p, pp = fr->pprime;
  Weight nu = Weight::zero(n);
  if (pp >= 2) nu.c[pp - 2] = pair.part2.c[pp - 2];  // part2(h_{p'-1}) omega_{p'-1}
  if (pp != p) nu.c[p - 1] = pair.part2.c[p - 1];    // (1-delta) part2(h_p) omega_p
  Weight reduced1 = pair.part1 - rs.root_to_weight(fr->root);
  if (!rs.dominant(reduced1))
    throw InternalError("part1 minus the flag root is not dominant");
  Weight next1 = reduced1 - nu;
  Weight next2 = pair.part2 - nu;
  if (!verify_interlacing(rs, next1, next2))
    throw InternalError("flag descent did not produce an interlacing pair");
  return {nu, canonical_pair(rs, next1, next2)};
}

}  // namespace demachar
