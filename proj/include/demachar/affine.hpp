#pragma once

#include <utility>
#include <vector>

#include "demachar/root_system.hpp"

namespace demachar {

/// Affine weight (finite part, level, degree): the finite part in fundamental
/// coordinates, level = coefficient of the affine fundamental weight at node
/// 0, degree = coefficient of the null root delta.
struct AffineWeight {
  Weight finite;
  Int level = 0;
  Int degree = 0;

  friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
};

/// Pairing with the affine coroot h_i, 0 <= i <= rank.  Node 0 pairs as
/// level - finite(h_theta); the degree never enters.
inline Int affine_pairing(const RootSystem& rs, const AffineWeight& lam, int node) {
  if (node < 0 || node > rs.rank()) throw DomainError("affine node out of range");
  if (lam.finite.rank() != rs.rank()) throw DomainError("weight rank mismatch");
  if (node == 0) return lam.level - rs.pairing(lam.finite, rs.highest_root());
  return lam.finite.c[node - 1];
}

/// Affine simple reflection.  Node 0 uses alpha_0 = -theta + delta, so it
/// moves both the finite part and the degree; the level is always fixed.
inline AffineWeight affine_reflect(const RootSystem& rs, int node,
                                   const AffineWeight& lam) {
  Int m = affine_pairing(rs, lam, node);
  if (m == 0) return lam;
  AffineWeight out = lam;
  if (node == 0) {
    Weight theta_wt = rs.root_to_weight(rs.highest_root());
    out.finite = out.finite + m * theta_wt;
    out.degree -= m;
  } else {
    out.finite = rs.reflect(node, out.finite);
  }
  return out;
}

inline bool affine_dominant(const RootSystem& rs, const AffineWeight& lam) {
  for (int i = 0; i <= rs.rank(); ++i)
    if (affine_pairing(rs, lam, i) < 0) return false;
  return true;
}

enum class TieBreak { LeastNode, GreatestNode };

struct DemazureWord {
  AffineWeight dominant;
  std::vector<int> word;  // application order: extremal = s_{w[0]} ... s_{w[T-1]} dominant
};

/// Straightens the extremal weight (w0 lambda, level, 0) to its dominant
/// representative, recording the reflection nodes in application order.  The
/// recorded word is reduced; the tie-breaking rule only selects among
/// currently-negative nodes and does not change the word length.
inline DemazureWord demazure_word(const RootSystem& rs, Int level, const Weight& lambda,
                                  TieBreak tie = TieBreak::LeastNode) {
  if (level < 1) throw DomainError("level must be positive");
  if (!rs.dominant(lambda)) throw DomainError("weight must be dominant");
  AffineWeight cur{rs.longest_element_image(lambda), level, 0};
  std::vector<int> word;
  constexpr long iteration_cap = 10'000'000;
  for (long step = 0; step < iteration_cap; ++step) {
    int pick = -1;
    if (tie == TieBreak::LeastNode) {
      for (int i = 0; i <= rs.rank(); ++i)
        if (affine_pairing(rs, cur, i) < 0) { pick = i; break; }
    } else {
      for (int i = rs.rank(); i >= 0; --i)
        if (affine_pairing(rs, cur, i) < 0) { pick = i; break; }
    }
    if (pick < 0) return {cur, std::move(word)};
    cur = affine_reflect(rs, pick, cur);
    word.push_back(pick);
  }
  throw InternalError("dominance straightening did not terminate");
}

}  // namespace demachar
