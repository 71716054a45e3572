#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "demachar/gendem.hpp"

namespace demachar {

/// A multiplicity-free product of fundamental spectral factors: node i with
/// integer q-exponent r stands for the factor at spectral parameter q^r.
/// Factors are kept sorted with strictly increasing nodes.
struct DrinfeldFactor {
  int node = 0;
  Int q_exp = 0;
  friend bool operator==(const DrinfeldFactor&, const DrinfeldFactor&) = default;
};

struct DrinfeldMonomial {
  std::vector<DrinfeldFactor> factors;

  bool well_formed() const {
    for (std::size_t i = 1; i < factors.size(); ++i)
      if (factors[i - 1].node >= factors[i].node) return false;
    return true;
  }
  friend bool operator==(const DrinfeldMonomial&, const DrinfeldMonomial&) = default;
};

namespace detail {

/// Chain position of a node for exponent-gap purposes.  In type D the spin
/// node n sits at the same distance from the chain as n-1, so it folds to
/// position n-1; gaps between the two spin nodes themselves never go through
/// this function.
inline int chain_position(const RootSystem& rs, int node) {
  if (rs.series() == Series::D && node == rs.rank()) return rs.rank() - 1;
  return node;
}

}  // namespace detail

/// Membership in the admissible family: consecutive exponent gaps are
/// +-(position gap + 2) with strictly alternating signs; when the monomial
/// ends with both spin nodes, those two factors instead carry equal
/// exponents and the alternating chain stops before them.  The identity and
/// all single factors are members.
inline bool is_admissible(const RootSystem& rs, const DrinfeldMonomial& m) {
  if (!m.well_formed()) throw DomainError("monomial factors must have strictly increasing nodes");
  for (const auto& f : m.factors)
    if (f.node < 1 || f.node > rs.rank()) throw DomainError("monomial node out of range");
  std::size_t k = m.factors.size();
  if (k <= 1) return true;

  bool spin_tail = rs.series() == Series::D &&
                   m.factors[k - 2].node == rs.rank() - 1 &&
                   m.factors[k - 1].node == rs.rank();
  std::size_t chain = spin_tail ? k - 1 : k;
  if (spin_tail && m.factors[k - 2].q_exp != m.factors[k - 1].q_exp) return false;

  int prev_sign = 0;
  for (std::size_t j = 0; j + 1 < chain; ++j) {
    Int gap = detail::chain_position(rs, m.factors[j + 1].node) -
              detail::chain_position(rs, m.factors[j].node) + 2;
    Int d = m.factors[j].q_exp - m.factors[j + 1].q_exp;
    int sign;
    if (d == gap) sign = 1;
    else if (d == -gap) sign = -1;
    else return false;
    if (prev_sign != 0 && sign == prev_sign) return false;
    prev_sign = sign;
  }
  return true;
}

inline Weight monomial_weight(const RootSystem& rs, const DrinfeldMonomial& m) {
  Weight w = Weight::zero(rs.rank());
  for (const auto& f : m.factors) {
    if (f.node < 1 || f.node > rs.rank()) throw DomainError("monomial node out of range");
    w.c[f.node - 1] += 1;
  }
  return w;
}

/// Splits a member along the interlacing decomposition of its weight: the
/// factors at part1's support form the first output.  The two outputs merge
/// back to the input (the monoid is free on its factors).
inline std::pair<DrinfeldMonomial, DrinfeldMonomial> factorize(
    const RootSystem& rs, const DrinfeldMonomial& m) {
  if (!is_admissible(rs, m)) throw DomainError("monomial is not a member of the family");
  InterlacingPair pair = interlace_decompose(rs, monomial_weight(rs, m));
  DrinfeldMonomial m1, m2;
  for (const auto& f : m.factors) {
    if (pair.part1.c[f.node - 1] == 1) m1.factors.push_back(f);
    else m2.factors.push_back(f);
  }
  return {m1, m2};
}

/// Graded character of the classical limit of the member: depends only on
/// the weight (the spectral parameters decide membership, nothing else).
inline GradedCharacter graded_limit_char(const RootSystem& rs, const DrinfeldMonomial& m,
                                         std::size_t budget = kDefaultTermBudget,
                                         int jobs = 1) {
  if (!is_admissible(rs, m)) throw DomainError("monomial is not a member of the family");
  InterlacingPair pair = interlace_decompose(rs, monomial_weight(rs, m));
  return generalized_demazure_char(rs, pair, Weight::zero(rs.rank()), budget, jobs);
}

/// Height function on the Dynkin nodes defining a bipartite orientation:
/// adjacent chain values differ by exactly 1, values two apart agree, and
/// the two spin values agree.
struct HeightFunction {
  Coords xi;  // xi[i-1] = value at node i
};

inline bool is_bipartite(const RootSystem& rs, const HeightFunction& h) {
  int n = rs.rank();
  if (static_cast<int>(h.xi.size()) != n) throw DomainError("height function rank mismatch");
  auto adjacent_ok = [&](int a, int b) {
    Int d = h.xi[a - 1] - h.xi[b - 1];
    return d == 1 || d == -1;
  };
  if (rs.series() == Series::A) {
    for (int i = 1; i < n; ++i)
      if (!adjacent_ok(i, i + 1)) return false;
    return true;
  }
  for (int i = 1; i <= n - 2; ++i)
    if (!adjacent_ok(i, i + 1)) return false;
  if (n >= 2 && !adjacent_ok(rs.rank() - 2, rs.rank())) return false;
  if (h.xi[n - 2] != h.xi[n - 1]) return false;
  for (int i = 1; i + 2 <= n - 1; ++i)
    if (h.xi[i - 1] != h.xi[i + 1]) return false;
  return true;
}

/// All members whose factor nodes are exactly the support of the interval
/// root alpha and whose exponent at node s is xi(s) +- 1.  Nonempty, with at
/// most two elements; beta-shaped roots are rejected.
inline std::vector<DrinfeldMonomial> cluster_monomials(const RootSystem& rs,
                                                       const HeightFunction& h,
                                                       const RootVec& alpha) {
  if (!is_bipartite(rs, h)) throw DomainError("height function is not bipartite");
  if (alpha.is_zero() || !rs.is_positive_root(alpha))
    throw DomainError("cluster roots must be positive roots");
  bool interval = false;
  for (int i = 1; i <= rs.rank() && !interval; ++i)
    for (int j = i; j <= rs.rank() && !interval; ++j)
      interval = rs.alpha(i, j) == alpha;
  if (!interval)
    throw DomainError("cluster labels exist only for interval-shaped roots");
  std::vector<int> nodes;
  for (int i = 1; i <= rs.rank(); ++i)
    if (alpha.c[i - 1] == 1) nodes.push_back(i);
  std::vector<DrinfeldMonomial> out;
  std::size_t combos = std::size_t{1} << nodes.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    DrinfeldMonomial m;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
      Int sign = (mask >> s) & 1 ? 1 : -1;
      m.factors.push_back({nodes[s], h.xi[nodes[s] - 1] + sign});
    }
    if (is_admissible(rs, m)) {
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
  }
  if (out.empty()) throw InternalError("cluster root admits no member labeling");
  return out;
}

}  // namespace demachar
