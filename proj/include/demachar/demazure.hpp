#pragma once

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "demachar/affine.hpp"
#include "demachar/character.hpp"
#include "demachar/freudenthal.hpp"

namespace demachar {

/// Character of a single affine level: sparse (finite weight, degree) terms.
/// The intermediate representation while Demazure operators are applied;
/// reinterpreted as a GradedCharacter (grade = degree) at the end.
struct AffineCharacter {
  int rank = 0;
  Int level = 0;
  TermMap terms;

  Int at(const TermKey& k) const {
    auto it = terms.find(k);
    return it == terms.end() ? 0 : it->second;
  }
  void add(const TermKey& k, Int mult) {
    if (mult == 0) return;
    auto [it, inserted] = terms.try_emplace(k, mult);
    if (!inserted) {
      it->second = checked_add(it->second, mult);
      if (it->second == 0) terms.erase(it);
    }
  }
};

namespace detail {

/// Terms as a flat array with unique keys; the operator pipeline lives on
/// this representation to keep the hot path free of hashing.
using TermVec = std::vector<std::pair<TermKey, Int>>;

/// Walk data for the alpha_i string through a monomial: the step vector and
/// the coroot pairing, both cheap to evaluate on packed keys.  The weight
/// delta is kept as its nonzero entries (Cartan rows have at most four; the
/// affine step moves at most two coordinates).
struct NodeContext {
  KeyDelta delta;  // key - delta = e^{weight - alpha_i}
  std::array<std::pair<std::int8_t, std::int8_t>, kMaxPackRank> sparse{};
  int nnz = 0;
  std::array<Int, kMaxPackRank> theta_coroot{};
  int finite_index = -1;  // >= 0 for finite nodes
  Int level = 0;
  int rank = 0;

  Int pairing(const TermKey& k) const {
    if (finite_index >= 0) return k.w[finite_index];
    Int s = 0;
    for (int i = 0; i < rank; ++i) s += theta_coroot[i] * k.w[i];
    return level - s;
  }

  /// key - times * delta via the sparse entries; range violations reported
  /// branch-free.
  TermKey step(const TermKey& k, Int times) const {
    TermKey out = k;
    std::int32_t kk = static_cast<std::int32_t>(times);
    std::int32_t bad = 0;
    for (int s = 0; s < nnz; ++s) {
      auto [idx, d] = sparse[s];
      std::int32_t v = static_cast<std::int32_t>(out.w[idx]) - kk * d;
      bad |= (v + 128) & ~255;
      out.w[idx] = static_cast<std::int8_t>(v);
    }
    Int g = static_cast<Int>(k.grade) - times * delta.grade;
    if (bad != 0 || g < -32768 || g > 32767 || times != static_cast<Int>(kk))
      throw BudgetError("weight coordinate exceeds character engine range");
    out.grade = static_cast<std::int16_t>(g);
    return out;
  }
};

inline NodeContext make_node_context(const RootSystem& rs, int node, Int level) {
  NodeContext ctx;
  ctx.rank = rs.rank();
  ctx.level = level;
  if (node == 0) {
    const RootVec& theta = rs.highest_root();
    Weight theta_wt = rs.root_to_weight(theta);
    for (int i = 0; i < rs.rank(); ++i) {
      ctx.theta_coroot[i] = theta.c[i];
      ctx.delta.w[i] = static_cast<std::int32_t>(-theta_wt.c[i]);
    }
    ctx.delta.grade = 1;  // subtracting alpha_0 adds theta and lowers the degree
  } else {
    ctx.finite_index = node - 1;
    for (int j = 0; j < rs.rank(); ++j)
      ctx.delta.w[j] = static_cast<std::int32_t>(rs.cartan(node, j + 1));
  }
  ctx.delta.rank = rs.rank();
  for (int j = 0; j < rs.rank(); ++j)
    if (ctx.delta.w[j] != 0)
      ctx.sparse[ctx.nnz++] = {static_cast<std::int8_t>(j),
                               static_cast<std::int8_t>(ctx.delta.w[j])};
  return ctx;
}

struct LineEntry {
  std::uint64_t h;  // fixed-seed mix of id, for bucketing and fast compare
  TermKey id;       // canonical point of the alpha_i string (pairing 0 or 1)
  std::int32_t m;   // pairing of the original term
  std::int32_t r;   // pairing of id (0 or 1)
  Int c;
};

inline std::uint64_t mix_key(const TermKey& k) {
  std::uint64_t a, b;
  std::memcpy(&a, &k, 8);
  std::memcpy(&b, reinterpret_cast<const char*>(&k) + 8, 8);
  std::uint64_t x = a * 0x9e3779b97f4a7c15ull ^ (b + 0xbf58476d1ce4e5b9ull);
  x ^= x >> 31;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 29;
  return x;
}

inline bool line_entry_less(const LineEntry& a, const LineEntry& b) {
  if (a.h != b.h) return a.h < b.h;
  int cmp = std::memcmp(&a.id, &b.id, sizeof(TermKey));
  if (cmp != 0) return cmp < 0;
  return a.m < b.m;
}

/// One Demazure-operator pass over a term array.  Terms are grouped into
/// alpha_i strings: a counting sort on a 16-bit hash prefix followed by tiny
/// in-bucket sorts, then each string is resolved with a difference array
/// over its positions.  The pass is free of hash-table lookups and never
/// emits duplicate keys.
inline TermVec operator_pass(const RootSystem& rs, int node, const TermVec& f,
                             Int level, std::size_t budget) {
  NodeContext ctx = make_node_context(rs, node, level);
  constexpr int kBucketBits = 13;
  constexpr int kBuckets = 1 << kBucketBits;
  thread_local std::vector<LineEntry> scratch, entries;
  thread_local std::vector<std::uint32_t> counts, cursor;
  scratch.resize(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) {
    const auto& [k, c] = f[t];
    Int m = ctx.pairing(k);
    Int r = ((m % 2) + 2) % 2;
    TermKey id = ctx.step(k, (m - r) / 2);
    scratch[t] = {mix_key(id), id, static_cast<std::int32_t>(m),
                  static_cast<std::int32_t>(r), c};
  }
  counts.assign(kBuckets + 1, 0);
  for (const LineEntry& e : scratch) ++counts[(e.h >> (64 - kBucketBits)) + 1];
  for (int bkt = 0; bkt < kBuckets; ++bkt) counts[bkt + 1] += counts[bkt];
  entries.resize(scratch.size());
  cursor.assign(counts.begin(), counts.end() - 1);
  for (const LineEntry& e : scratch) entries[cursor[e.h >> (64 - kBucketBits)]++] = e;
  // second radix level: scatter each bucket by the next 8 hash bits back
  // into `scratch` slots, after which only hash ties need comparison sorting
  {
    constexpr int kSubBits = 8;
    std::array<std::uint32_t, (1 << kSubBits) + 1> sub{};
    auto sub_digit = [](std::uint64_t h) {
      return (h >> (64 - kBucketBits - kSubBits)) & ((1u << kSubBits) - 1);
    };
    for (int bkt = 0; bkt < kBuckets; ++bkt) {
      std::uint32_t begin = counts[bkt], end = counts[bkt + 1];
      if (end - begin <= 1) {
        if (end - begin == 1) scratch[begin] = entries[begin];
        continue;
      }
      if (end - begin <= 24) {
        std::sort(entries.begin() + begin, entries.begin() + end, line_entry_less);
        std::copy(entries.begin() + begin, entries.begin() + end, scratch.begin() + begin);
        continue;
      }
      sub.fill(0);
      for (std::uint32_t t = begin; t < end; ++t) ++sub[sub_digit(entries[t].h) + 1];
      for (std::size_t s = 0; s + 1 < sub.size(); ++s) sub[s + 1] += sub[s];
      for (std::uint32_t t = begin; t < end; ++t)
        scratch[begin + sub[sub_digit(entries[t].h)]++] = entries[t];
      std::uint32_t run = begin;
      while (run < end) {
        std::uint32_t stop = run + 1;
        while (stop < end && sub_digit(scratch[stop].h) == sub_digit(scratch[run].h))
          ++stop;
        if (stop - run > 1)
          std::sort(scratch.begin() + run, scratch.begin() + stop, line_entry_less);
        run = stop;
      }
    }
    std::swap(entries, scratch);
  }

  TermVec out;
  out.reserve(f.size() + f.size() / 2);
  std::vector<Int> diff;
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i;
    while (j < entries.size() && entries[j].h == entries[i].h &&
           std::memcmp(&entries[j].id, &entries[i].id, sizeof(TermKey)) == 0)
      ++j;
    Int lo = 0, hi = -2;
    bool any = false;
    for (std::size_t t = i; t < j; ++t) {
      Int m = entries[t].m, a, b;
      if (m >= 0) { a = -m; b = m; }
      else if (m == -1) continue;
      else { a = m + 2; b = -m - 2; }
      if (!any) { lo = a; hi = b; any = true; }
      else { lo = std::min(lo, a); hi = std::max(hi, b); }
    }
    if (any) {
      std::size_t slots = static_cast<std::size_t>((hi - lo) / 2 + 1);
      diff.assign(slots + 1, 0);
      for (std::size_t t = i; t < j; ++t) {
        Int m = entries[t].m, a, b, v;
        if (m >= 0) { a = -m; b = m; v = entries[t].c; }
        else if (m == -1) continue;
        else { a = m + 2; b = -m - 2; v = -entries[t].c; }
        diff[(a - lo) / 2] = checked_add(diff[(a - lo) / 2], v);
        diff[(b - lo) / 2 + 1] = checked_add(diff[(b - lo) / 2 + 1], -v);
      }
      Int run = 0;
      TermKey key = ctx.step(entries[i].id, (entries[i].r - lo) / 2);
      for (std::size_t s = 0; s < slots; ++s) {
        run = checked_add(run, diff[s]);
        if (run != 0) out.push_back({key, run});
        if (s + 1 < slots) key = ctx.step(key, -1);
      }
      if (out.size() > budget) throw BudgetError("character exceeds term budget");
    }
    i = j;
  }
  return out;
}

}  // namespace detail

/// Demazure operator at a node, by the string-sum rule with
/// m = affine pairing: m >= 0 contributes e^{L - k alpha_i} for k = 0..m,
/// m = -1 contributes nothing, m <= -2 contributes -e^{L + k alpha_i} for
/// k = 1..-m-1.  Linear, idempotent.
inline AffineCharacter demazure_operator(const RootSystem& rs, int node,
                                         const AffineCharacter& f,
                                         std::size_t budget = kDefaultTermBudget) {
  if (node < 0 || node > rs.rank()) throw DomainError("affine node out of range");
  if (f.rank != rs.rank()) throw DomainError("character rank mismatch");
  detail::TermVec in(f.terms.begin(), f.terms.end());
  detail::TermVec result = detail::operator_pass(rs, node, in, f.level, budget);
  AffineCharacter out;
  out.rank = f.rank;
  out.level = f.level;
  out.terms.reserve(result.size());
  for (const auto& [k, c] : result) out.terms.emplace(k, c);
  return out;
}

/// ch D(level, lambda): straighten to the dominant endpoint, apply the
/// operator word to its monomial, and reinterpret degree as grade.
/// Guarantees: multiplicity 1 at (lambda, 0), all grades >= 0, grade-0 slice
/// equal to the classical character of lambda.
inline GradedCharacter demazure_char(const RootSystem& rs, Int level,
                                     const Weight& lambda,
                                     std::size_t budget = kDefaultTermBudget,
                                     TieBreak tie = TieBreak::LeastNode) {
  DemazureWord dw = demazure_word(rs, level, lambda, tie);
  // Admission check: every grade slice is supported on weights of
  // V(lambda) and grades run 0..top, so weight count times grade count
  // bounds the term count from above.  Skipping on the projection keeps
  // over-budget requests from paying for a partial computation; it can
  // reject a computation that would have fit, never admit one that will
  // not.
  Int weights = weight_support_count(rs, lambda, budget);
  Int projected = checked_mul(weights, dw.dominant.degree + 1);
  if (static_cast<std::size_t>(projected) > budget)
    throw BudgetError("projected term count " + std::to_string(projected) +
                      " exceeds budget " + std::to_string(budget));
  detail::TermVec f{{pack_term(dw.dominant.finite, dw.dominant.degree), 1}};
  for (auto it = dw.word.rbegin(); it != dw.word.rend(); ++it)
    f = detail::operator_pass(rs, *it, f, level, budget);

  GradedCharacter out(rs.rank());
  out.reserve(f.size());
  for (const auto& [k, m] : f) {
    if (k.grade < 0) throw InternalError("negative grade in Demazure character");
    if (m <= 0) throw InternalError("negative multiplicity in Demazure character");
    out.add(k, m);
  }
  if (out.at(lambda, 0) != 1)
    throw InternalError("Demazure character misses its highest weight");
  return out;
}

namespace detail {

/// Diagram automorphisms as node permutations (image[i-1] = sigma(i)):
/// the identity and the weight-reversal for A_n, the spin swap for D_n, and
/// the full symmetric group on the three outer nodes for D_4.  Demazure
/// characters transport along them by relabeling weights, which the
/// character cache uses to store one representative per orbit.
inline std::vector<std::vector<int>> diagram_automorphisms(Series series, int rank) {
  std::vector<int> id(rank);
  for (int i = 0; i < rank; ++i) id[i] = i + 1;
  std::vector<std::vector<int>> out{id};
  if (series == Series::A) {
    std::vector<int> rev(rank);
    for (int i = 0; i < rank; ++i) rev[i] = rank - i;
    if (rev != id) out.push_back(rev);
    return out;
  }
  if (rank == 4) {
    // permutations of the outer nodes 1, 3, 4 around the trivalent node 2
    int outer[3] = {1, 3, 4};
    int perm[3] = {0, 1, 2};
    std::sort(perm, perm + 3);
    std::vector<int> base = id;
    do {
      std::vector<int> g = base;
      for (int s = 0; s < 3; ++s) g[outer[s] - 1] = outer[perm[s]];
      if (g != id) out.push_back(g);
    } while (std::next_permutation(perm, perm + 3));
    return out;
  }
  std::vector<int> swap_spin = id;
  std::swap(swap_spin[rank - 2], swap_spin[rank - 1]);
  out.push_back(swap_spin);
  return out;
}

inline Weight apply_automorphism(const std::vector<int>& g, const Weight& w) {
  Weight out = Weight::zero(w.rank());
  for (int i = 0; i < w.rank(); ++i) out.c[g[i] - 1] = w.c[i];
  return out;
}

inline std::vector<int> inverse_automorphism(const std::vector<int>& g) {
  std::vector<int> inv(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) inv[g[i] - 1] = static_cast<int>(i) + 1;
  return inv;
}

}  // namespace detail

/// Process-wide memo for Demazure characters keyed by (series, rank, level,
/// weight) up to diagram automorphism.  Entries are evicted oldest-first once
/// the total stored term count passes the cap.
class DemazureCache {
 public:
  using Key = std::tuple<char, int, Int, Coords>;

  std::shared_ptr<const GradedCharacter> get(const RootSystem& rs, Int level,
                                             const Weight& lambda,
                                             std::size_t budget = kDefaultTermBudget) {
    // canonical representative of the automorphism orbit
    const auto& autos = automorphisms(rs);
    const std::vector<int>* chosen = &autos[0];
    Weight canonical = lambda;
    for (const auto& g : autos) {
      Weight image = detail::apply_automorphism(g, lambda);
      if (image.c < canonical.c) {
        canonical = image;
        chosen = &g;
      }
    }
    Key key{series_letter(rs.series()), rs.rank(), level, canonical.c};
    std::shared_ptr<const GradedCharacter> stored;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto over = over_budget_.find(key);
      if (over != over_budget_.end() && over->second <= budget)
        throw BudgetError("character exceeds term budget");
      auto it = entries_.find(key);
      if (it != entries_.end()) stored = it->second;
    }
    if (!stored) {
      try {
        stored = std::make_shared<const GradedCharacter>(
            demazure_char(rs, level, canonical, budget));
      } catch (const BudgetError&) {
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = over_budget_.try_emplace(key, budget);
        if (!inserted) it->second = std::min(it->second, budget);
        throw;
      }
      std::lock_guard<std::mutex> lock(mu_);
      auto [it, inserted] = entries_.try_emplace(key, stored);
      if (inserted) {
        order_.push_back(key);
        stored_terms_ += stored->term_count();
        while (stored_terms_ > term_cap_ && order_.size() > 1) {
          auto victim = entries_.find(order_.front());
          order_.erase(order_.begin());
          if (victim != entries_.end()) {
            stored_terms_ -= victim->second->term_count();
            entries_.erase(victim);
          }
        }
      } else {
        stored = it->second;
      }
    }
    if (stored->term_count() > budget)
      throw BudgetError("character exceeds term budget");
    if (canonical == lambda) return stored;
    // transport back: ch D(level, lambda) = g^{-1} applied to the stored
    // character of g(lambda)
    std::vector<int> inv = detail::inverse_automorphism(*chosen);
    auto remapped = std::make_shared<GradedCharacter>(rs.rank());
    remapped->reserve(stored->term_count());
    for (const auto& [k, m] : stored->terms()) {
      Weight w = unpack_weight(k, rs.rank());
      remapped->add(detail::apply_automorphism(inv, w), k.grade, m);
    }
    return remapped;
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    entries_.clear();
    over_budget_.clear();
    order_.clear();
    stored_terms_ = 0;
  }

  static DemazureCache& instance() {
    static DemazureCache cache;
    return cache;
  }

 private:
  const std::vector<std::vector<int>>& automorphisms(const RootSystem& rs) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::pair{series_letter(rs.series()), rs.rank()};
    auto it = autos_.find(key);
    if (it == autos_.end())
      it = autos_.emplace(key, detail::diagram_automorphisms(rs.series(), rs.rank()))
               .first;
    return it->second;
  }

  std::mutex mu_;
  std::map<Key, std::shared_ptr<const GradedCharacter>> entries_;
  std::map<Key, std::size_t> over_budget_;  // least budget known to fail
  std::map<std::pair<char, int>, std::vector<std::vector<int>>> autos_;
  std::vector<Key> order_;
  std::size_t stored_terms_ = 0;
  std::size_t term_cap_ = 20'000'000;
};

inline std::shared_ptr<const GradedCharacter> demazure_char_cached(
    const RootSystem& rs, Int level, const Weight& lambda,
    std::size_t budget = kDefaultTermBudget) {
  return DemazureCache::instance().get(rs, level, lambda, budget);
}

}  // namespace demachar
