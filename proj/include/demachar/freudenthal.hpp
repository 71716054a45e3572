#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <absl/container/flat_hash_set.h>
#include <boost/multiprecision/cpp_int.hpp>

#include "demachar/character.hpp"

namespace demachar {

/// dim V(lambda) by the Weyl product formula.  The running product is kept in
/// arbitrary precision; the result must fit a 64-bit integer.
inline Int weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  if (!rs.dominant(lambda)) throw DomainError("weight must be dominant");
  using Big = boost::multiprecision::cpp_int;
  Weight rho = Weight::zero(rs.rank());
  for (auto& v : rho.c) v = 1;
  Weight lr = lambda + rho;
  Big num = 1, den = 1;
  for (const RootVec& a : rs.positive_roots()) {
    num *= rs.pairing(lr, a);
    den *= rs.pairing(rho, a);
  }
  Big d = num / den;
  if (num % den != 0) throw InternalError("Weyl dimension not integral");
  if (d > std::numeric_limits<Int>::max())
    throw BudgetError("dimension exceeds 64-bit range");
  return static_cast<Int>(d);
}

namespace detail {

inline Weight dominant_representative(const RootSystem& rs, Weight w) {
  for (int guard = 0; guard < 100000000; ++guard) {
    int neg = -1;
    for (int i = 0; i < rs.rank(); ++i)
      if (w.c[i] < 0) { neg = i + 1; break; }
    if (neg < 0) return w;
    w = rs.reflect(neg, w);
  }
  throw InternalError("dominant straightening did not terminate");
}

/// All dominant mu with lambda - mu in Q+, by direct enumeration of the
/// root-coordinate box 0 <= k <= invCartan * lambda.
inline std::vector<Weight> dominant_weights_below(const RootSystem& rs,
                                                  const Weight& lambda,
                                                  std::size_t budget) {
  int n = rs.rank();
  Coords box = rs.scaled_root_coords(lambda);
  Int den = rs.root_coord_scale();
  std::vector<Int> kmax(n);
  for (int i = 0; i < n; ++i) kmax[i] = box[i] / den;  // floor; box >= 0
  std::vector<Weight> out;
  Coords k(n, 0);
  Weight mu = lambda;
  std::size_t visited = 0;
  // odometer over the box; mu tracked incrementally
  for (;;) {
    if (++visited > budget * 8 + 1024)
      throw BudgetError("weight enumeration exceeds budget");
    if (rs.dominant(mu)) out.push_back(mu);
    int pos = 0;
    while (pos < n && k[pos] == kmax[pos]) {
      // reset coordinate: mu += k[pos] * alpha_pos
      for (int j = 0; j < n; ++j) mu.c[j] += k[pos] * rs.cartan(pos + 1, j + 1);
      k[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
    ++k[pos];
    for (int j = 0; j < n; ++j) mu.c[j] -= rs.cartan(pos + 1, j + 1);
  }
  return out;
}

}  // namespace detail

inline Int weyl_group_order(Series series, int rank) {
  Int f = 1;
  int top = series == Series::A ? rank + 1 : rank;
  for (int i = 2; i <= top; ++i) f = checked_mul(f, i);
  if (series == Series::D)
    for (int i = 0; i < rank - 1; ++i) f = checked_mul(f, 2);
  return f;
}

/// |W . w| = |W| / |W_J| with J the set of nodes where w vanishes; the
/// stabilizer order is the product over connected components of J.
inline Int weyl_orbit_size(const RootSystem& rs, const Weight& w) {
  int n = rs.rank();
  std::vector<bool> in(n + 1, false), seen(n + 1, false);
  for (int i = 1; i <= n; ++i) in[i] = w.c[i - 1] == 0;
  Int stabilizer = 1;
  for (int i = 1; i <= n; ++i) {
    if (!in[i] || seen[i]) continue;
    std::vector<int> comp, stack{i};
    seen[i] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      auto try_edge = [&](int u) {
        if (u >= 1 && u <= n && in[u] && !seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      };
      if (rs.series() == Series::A) {
        try_edge(v - 1);
        try_edge(v + 1);
      } else {
        if (v <= n - 2) {
          try_edge(v - 1);
          if (v <= n - 3) try_edge(v + 1);
        }
        if (v == n - 2) {
          try_edge(n - 1);
          try_edge(n);
        }
        if (v >= n - 1) try_edge(n - 2);
      }
    }
    int spin_nodes = 0;
    for (int v : comp) spin_nodes += (rs.series() == Series::D && v >= n - 1);
    int k = static_cast<int>(comp.size());
    // a component is a D piece exactly when it holds both spin nodes
    Series piece = (rs.series() == Series::D && spin_nodes == 2) ? Series::D : Series::A;
    stabilizer = checked_mul(stabilizer, weyl_group_order(piece, k));
  }
  return weyl_group_order(rs.series(), n) / stabilizer;
}

/// Number of weights of V(lambda) (support size of the classical character),
/// by orbit counting over the dominant weights below lambda.  Much cheaper
/// than the character itself; used for exact term-count projections.
inline Int weight_support_count(const RootSystem& rs, const Weight& lambda,
                                std::size_t budget = kDefaultTermBudget) {
  Int total = 0;
  for (const Weight& w : detail::dominant_weights_below(rs, lambda, budget))
    total = checked_add(total, weyl_orbit_size(rs, w));
  return total;
}

/// Weight multiplicities of the irreducible V(lambda) by the Freudenthal
/// recursion, as a grade-0 GradedCharacter.  This is the independent oracle
/// for grade-0 slices of Demazure characters: it shares no code with the
/// Demazure operator path.
inline GradedCharacter classical_character(const RootSystem& rs, const Weight& lambda,
                                           std::size_t budget = kDefaultTermBudget) {
  if (!rs.dominant(lambda)) throw DomainError("weight must be dominant");
  int n = rs.rank();
  Weight rho = Weight::zero(n);
  for (auto& v : rho.c) v = 1;

  std::vector<Weight> dom = detail::dominant_weights_below(rs, lambda, budget);
  // Order by decreasing scaled height so every mu + k*alpha needed by the
  // recursion is already known.
  std::sort(dom.begin(), dom.end(), [&](const Weight& a, const Weight& b) {
    return rs.scaled_height(a) > rs.scaled_height(b);
  });

  std::map<Coords, Int> mult;
  mult[lambda.c] = 1;
  auto lookup = [&](const Weight& w) -> Int {
    Weight d = detail::dominant_representative(rs, w);
    auto it = mult.find(d.c);
    return it == mult.end() ? 0 : it->second;
  };

  for (const Weight& mu : dom) {
    if (mu == lambda) continue;
    Int num = 0;
    for (const RootVec& a : rs.positive_roots()) {
      Weight w = mu;
      Weight a_wt = rs.root_to_weight(a);
      for (Int k = 1;; ++k) {
        w = w + a_wt;
        if (!rs.qplus_geq(lambda, w)) break;
        Int m = lookup(w);
        if (m != 0) num = checked_add(num, checked_mul(m, rs.pairing(w, a)));
      }
    }
    if (num == 0) {
      mult[mu.c] = 0;
      continue;
    }
    // ((lambda+rho,lambda+rho) - (mu+rho,mu+rho)) = sum_i k_i (lambda+mu+2rho)(h_i)
    // with k the root coordinates of lambda - mu.
    Coords k_scaled = rs.scaled_root_coords(lambda - mu);
    Int den_scale = rs.root_coord_scale();
    Weight s = lambda + mu + 2 * rho;
    Int denom = 0;
    for (int i = 0; i < n; ++i) {
      if (k_scaled[i] % den_scale != 0)
        throw InternalError("weight difference not in the root lattice");
      denom = checked_add(denom, checked_mul(k_scaled[i] / den_scale, s.c[i]));
    }
    if (denom == 0 || (2 * num) % denom != 0)
      throw InternalError("Freudenthal recursion not integral");
    mult[mu.c] = (2 * num) / denom;
  }

  // Expand Weyl orbits of the dominant multiplicities.
  GradedCharacter out(n);
  absl::flat_hash_set<TermKey, TermKeyHash> seen;
  std::vector<Weight> stack;
  for (const auto& [coords, m] : mult) {
    if (m == 0) continue;
    seen.clear();
    stack.clear();
    Weight start(coords);
    stack.push_back(start);
    seen.insert(pack_term(start, 0));
    while (!stack.empty()) {
      Weight w = stack.back();
      stack.pop_back();
      out.add(w, 0, m);
      if (out.term_count() > budget)
        throw BudgetError("character exceeds term budget");
      for (int i = 1; i <= n; ++i) {
        Weight r = rs.reflect(i, w);
        if (seen.insert(pack_term(r, 0)).second) stack.push_back(r);
      }
    }
  }
  return out;
}

/// Shared classical-character memo (the oracle is reused heavily by the
/// decomposition peeler).
class ClassicalCache {
 public:
  std::shared_ptr<const GradedCharacter> get(const RootSystem& rs, const Weight& lambda,
                                             std::size_t budget = kDefaultTermBudget) {
    std::tuple<char, int, Coords> key{series_letter(rs.series()), rs.rank(), lambda.c};
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = entries_.find(key);
      if (it != entries_.end()) return it->second;
    }
    auto computed = std::make_shared<const GradedCharacter>(
        classical_character(rs, lambda, budget));
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.try_emplace(key, computed).first->second;
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    entries_.clear();
  }

  static ClassicalCache& instance() {
    static ClassicalCache cache;
    return cache;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<char, int, Coords>, std::shared_ptr<const GradedCharacter>> entries_;
};

}  // namespace demachar
