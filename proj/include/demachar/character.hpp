#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "demachar/term_key.hpp"

namespace demachar {

using TermMap = absl::flat_hash_map<TermKey, Int, TermKeyHash>;

/// One exported term of a character, in API (unpacked) form.
struct Term {
  Weight weight;
  Int grade = 0;
  Int mult = 0;
};

/// Canonical term order: (grade, weight lexicographic).  Serialization and
/// "first violation" reporting both use it.
inline bool term_order_less(const Term& a, const Term& b) {
  if (a.grade != b.grade) return a.grade < b.grade;
  return std::lexicographical_compare(a.weight.c.begin(), a.weight.c.end(),
                                      b.weight.c.begin(), b.weight.c.end());
}

/// Sparse integer combination of (weight, grade) pairs.  Zero multiplicities
/// are never stored.  Ring operations may produce negative coefficients;
/// module characters are the nonnegative, per-grade Weyl-symmetric ones.
class GradedCharacter {
 public:
  explicit GradedCharacter(int rank) : rank_(rank) {
    if (rank > kMaxPackRank) throw BudgetError("rank exceeds character engine limit");
  }

  int rank() const { return rank_; }
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add(const TermKey& k, Int mult) {
    if (mult == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, mult);
    if (!inserted) {
      it->second = checked_add(it->second, mult);
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const Weight& w, Int grade, Int mult) { add(pack_term(w, grade), mult); }

  Int at(const TermKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? 0 : it->second;
  }

  Int at(const Weight& w, Int grade) const {
    if (w.rank() != rank_) throw DomainError("weight rank mismatch");
    for (Int c : w.c)
      if (c < -128 || c > 127) return 0;
    if (grade < -32768 || grade > 32767) return 0;
    return at(pack_term(w, grade));
  }

  Int dimension() const {
    Int s = 0;
    for (const auto& [k, m] : terms_) s = checked_add(s, m);
    return s;
  }

  bool nonnegative() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return kv.second >= 0; });
  }

  Int min_grade() const {
    if (terms_.empty()) throw DomainError("empty character has no grades");
    Int g = 32767;
    for (const auto& [k, m] : terms_) g = std::min<Int>(g, k.grade);
    return g;
  }

  Int max_grade() const {
    if (terms_.empty()) throw DomainError("empty character has no grades");
    Int g = -32768;
    for (const auto& [k, m] : terms_) g = std::max<Int>(g, k.grade);
    return g;
  }

  /// Terms with the given grade, as unpacked weight -> multiplicity pairs.
  std::vector<Term> grade_slice(Int grade) const {
    std::vector<Term> out;
    for (const auto& [k, m] : terms_)
      if (k.grade == grade) out.push_back({unpack_weight(k, rank_), k.grade, m});
    return out;
  }

  std::vector<Term> sorted_terms() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [k, m] : terms_)
      out.push_back({unpack_weight(k, rank_), k.grade, m});
    std::sort(out.begin(), out.end(), term_order_less);
    return out;
  }

  void reserve(std::size_t n) { terms_.reserve(n); }

  friend bool operator==(const GradedCharacter& a, const GradedCharacter& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

 private:
  int rank_;
  TermMap terms_;
};

inline GradedCharacter unit_character(int rank) {
  GradedCharacter f(rank);
  f.add(Weight::zero(rank), 0, 1);
  return f;
}

/// f + v^shift * scale * g, accumulated into f.
inline void accumulate(GradedCharacter& f, const GradedCharacter& g, Int shift = 0,
                       Int scale = 1) {
  if (f.rank() != g.rank()) throw DomainError("character rank mismatch");
  for (const auto& [k, m] : g.terms()) {
    TermKey shifted = k;
    shifted.grade = pack_grade(static_cast<Int>(k.grade) + shift);
    f.add(shifted, checked_mul(m, scale));
  }
}

/// Adds s to every grade; invertible.
inline GradedCharacter grade_shift(Int s, const GradedCharacter& f) {
  GradedCharacter out(f.rank());
  out.reserve(f.term_count());
  accumulate(out, f, s);
  return out;
}

/// Convolution in both weight and grade (the character of a tensor product
/// of graded modules).  Aborts with BudgetError if the result would exceed
/// `budget` terms, or - since the pair work is |f| * |g| regardless of the
/// output size - if that pair count exceeds the work cap (by default 128
/// pair operations per budgeted term).  The convolution runs blocked by
/// grade so the accumulation maps stay small.
inline GradedCharacter char_product(const GradedCharacter& f, const GradedCharacter& g,
                                    std::size_t budget = kDefaultTermBudget,
                                    std::size_t work_cap = 0) {
  if (f.rank() != g.rank()) throw DomainError("character rank mismatch");
  int rank = f.rank();
  if (f.empty() || g.empty()) return GradedCharacter(rank);
  if (work_cap == 0) work_cap = 128 * budget;
  if (static_cast<double>(f.term_count()) * static_cast<double>(g.term_count()) >
      static_cast<double>(work_cap))
    throw BudgetError("character product exceeds work cap");

  auto slice_by_grade = [&](const GradedCharacter& h) {
    std::map<Int, std::vector<std::pair<TermKey, Int>>> slices;
    for (const auto& [k, m] : h.terms()) {
      TermKey k0 = k;
      k0.grade = 0;
      slices[k.grade].push_back({k0, m});
    }
    return slices;
  };
  auto fs = slice_by_grade(f);
  auto gs = slice_by_grade(g);

  GradedCharacter out(rank);
  TermMap block;
  for (Int d = fs.begin()->first + gs.begin()->first;
       d <= fs.rbegin()->first + gs.rbegin()->first; ++d) {
    block.clear();
    for (const auto& [a, fa] : fs) {
      auto it = gs.find(d - a);
      if (it == gs.end()) continue;
      for (const auto& [kf, mf] : fa) {
        for (const auto& [kg, mg] : it->second) {
          TermKey k;
          for (int i = 0; i < rank; ++i)
            k.w[i] = pack_coord(static_cast<Int>(kf.w[i]) + kg.w[i]);
          k.grade = 0;
          auto [slot, inserted] = block.try_emplace(k, 0);
          slot->second = checked_add(slot->second, checked_mul(mf, mg));
        }
      }
    }
    for (const auto& [k, m] : block) {
      if (m == 0) continue;
      TermKey kk = k;
      kk.grade = pack_grade(d);
      out.add(kk, m);
    }
    if (out.term_count() > budget)
      throw BudgetError("character product exceeds term budget");
  }
  return out;
}

/// First coordinate (in canonical term order) where `a <= b` fails, if any.
inline std::optional<Term> first_exceeding(const GradedCharacter& a,
                                           const GradedCharacter& b) {
  if (a.rank() != b.rank()) throw DomainError("character rank mismatch");
  std::optional<Term> worst;
  for (const auto& [k, m] : a.terms()) {
    if (m <= b.at(k)) continue;
    Term t{unpack_weight(k, a.rank()), k.grade, m};
    if (!worst || term_order_less(t, *worst)) worst = t;
  }
  return worst;
}

/// Multiplicities are constant on Weyl orbits within every grade.
inline bool weyl_symmetric_per_grade(const RootSystem& rs, const GradedCharacter& f) {
  for (const auto& [k, m] : f.terms()) {
    Weight w = unpack_weight(k, rs.rank());
    for (int i = 1; i <= rs.rank(); ++i) {
      if (f.at(rs.reflect(i, w), k.grade) != m) return false;
    }
  }
  return true;
}

}  // namespace demachar
