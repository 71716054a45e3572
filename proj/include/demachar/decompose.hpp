#pragma once

#include <algorithm>
#include <vector>

#include "demachar/freudenthal.hpp"

namespace demachar {

struct IrredComponent {
  Weight highest_weight;
  Int mult = 0;
};

struct GradeDecomposition {
  Int grade = 0;
  std::vector<IrredComponent> components;
};

struct CharacterDecomposition {
  Int dimension = 0;
  std::vector<GradeDecomposition> grades;
};

/// v -> 1 specialization plus highest-weight peeling of every grade slice
/// against the Freudenthal oracle.  Peeling order: maximal dominant weight by
/// (scaled height, then lexicographic coordinates), a fixed linear extension
/// of the dominance order.  A residue that cannot reach zero means the input
/// was not a module character.
inline CharacterDecomposition specialize_and_decompose(
    const RootSystem& rs, const GradedCharacter& f,
    std::size_t budget = kDefaultTermBudget) {
  if (f.rank() != rs.rank()) throw DomainError("character rank mismatch");
  CharacterDecomposition out;
  out.dimension = f.dimension();
  if (f.empty()) return out;

  auto peel_key_less = [&](const Weight& a, const Weight& b) {
    Int ha = rs.scaled_height(a), hb = rs.scaled_height(b);
    if (ha != hb) return ha < hb;
    return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(),
                                        b.c.end());
  };

  Int lo = f.min_grade(), hi = f.max_grade();
  for (Int g = lo; g <= hi; ++g) {
    GradedCharacter slice(rs.rank());
    for (const auto& [k, m] : f.terms())
      if (k.grade == g) {
        TermKey k0 = k;
        k0.grade = 0;
        slice.add(k0, m);
      }
    if (slice.empty()) continue;

    GradeDecomposition gd;
    gd.grade = g;
    while (!slice.empty()) {
      bool found = false;
      Weight best;
      for (const auto& [k, m] : slice.terms()) {
        if (m < 0) throw DomainError("not a module character: negative multiplicity");
        Weight w = unpack_weight(k, rs.rank());
        if (!rs.dominant(w)) continue;
        if (!found || peel_key_less(best, w)) {
          best = w;
          found = true;
        }
      }
      if (!found)
        throw DomainError("not a module character: no dominant weight in residue");
      Int m = slice.at(best, 0);
      auto irred = ClassicalCache::instance().get(rs, best, budget);
      accumulate(slice, *irred, 0, -m);
      if (!slice.nonnegative())
        throw DomainError("not a module character: peeling went negative");
      gd.components.push_back({best, m});
    }
    out.grades.push_back(std::move(gd));
  }
  return out;
}

}  // namespace demachar
