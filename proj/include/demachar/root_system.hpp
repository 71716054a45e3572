#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "demachar/common.hpp"

namespace demachar {

enum class Series : char { A = 'A', D = 'D' };

inline char series_letter(Series s) { return static_cast<char>(s); }

/// Weights live in fundamental-weight coordinates: c[i-1] = lambda(h_i).
struct Weight {
  Coords c;

  Weight() = default;
  explicit Weight(Coords coords) : c(std::move(coords)) {}
  static Weight zero(int rank) { return Weight(Coords(rank, 0)); }

  int rank() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](Int v) { return v == 0; });
  }
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// Root-lattice vectors in simple-root coordinates: c[i-1] = coefficient of
/// alpha_i.  The zero vector is a valid value (used by the interval-root
/// conventions) but is rejected wherever a positive root is required.
struct RootVec {
  Coords c;

  RootVec() = default;
  explicit RootVec(Coords coords) : c(std::move(coords)) {}
  static RootVec zero(int rank) { return RootVec(Coords(rank, 0)); }

  int rank() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](Int v) { return v == 0; });
  }
  friend bool operator==(const RootVec&, const RootVec&) = default;
};

inline Weight operator+(const Weight& a, const Weight& b) {
  if (a.rank() != b.rank()) throw DomainError("weight rank mismatch");
  Weight r = a;
  for (int i = 0; i < a.rank(); ++i) r.c[i] += b.c[i];
  return r;
}

inline Weight operator-(const Weight& a, const Weight& b) {
  if (a.rank() != b.rank()) throw DomainError("weight rank mismatch");
  Weight r = a;
  for (int i = 0; i < a.rank(); ++i) r.c[i] -= b.c[i];
  return r;
}

inline Weight operator*(Int k, const Weight& a) {
  Weight r = a;
  for (auto& v : r.c) v *= k;
  return r;
}

inline RootVec operator+(const RootVec& a, const RootVec& b) {
  if (a.rank() != b.rank()) throw DomainError("root rank mismatch");
  RootVec r = a;
  for (int i = 0; i < a.rank(); ++i) r.c[i] += b.c[i];
  return r;
}

/// Finite root-system data for the simply-laced series A_n (n >= 1) and
/// D_n (n >= 4).
///
/// Node numbering for D_n: 1 - 2 - ... - (n-2) is a chain, and both end
/// nodes n-1 and n ("spin nodes") attach to the trivalent node n-2.  The
/// positive roots are the interval roots alpha(i,j) together with, in type D,
/// the long-support roots beta(i,j); see docs/CONVENTIONS.md.
class RootSystem {
 public:
  RootSystem(Series series, int rank) : series_(series), rank_(rank) {
    if (series == Series::A && rank < 1)
      throw DomainError("type A requires rank >= 1");
    if (series == Series::D && rank < 4)
      throw DomainError("type D requires rank >= 4");
    if (rank > kMaxRank) throw DomainError("rank exceeds engine limit");
    build_cartan();
    build_positive_roots();
    build_inverse_cartan();
  }

  static constexpr int kMaxRank = 24;

  Series series() const { return series_; }
  int rank() const { return rank_; }

  /// Cartan matrix entry A_{ij} = alpha_j(h_i), 1-based.
  Int cartan(int i, int j) const { return cartan_[idx(i)][idx(j)]; }

  const std::vector<RootVec>& positive_roots() const { return positive_; }
  const RootVec& highest_root() const { return theta_; }

  /// Interval root alpha(i,j); returns the zero vector when i > j or when
  /// (i,j) = (n-1,n) in type D.  Indices one step outside 1..n are allowed
  /// for the i > j case so that telescoping identities read uniformly.
  RootVec alpha(int i, int j) const {
    if (i < 1 || i > rank_ + 1 || j < 0 || j > rank_)
      throw DomainError("interval root indices out of range");
    RootVec r = RootVec::zero(rank_);
    if (i > j) return r;
    if (series_ == Series::D) {
      if (i == rank_ - 1 && j == rank_) return r;
      if (j == rank_ && i <= rank_ - 2) {
        for (int s = i; s <= rank_ - 2; ++s) r.c[s - 1] = 1;
        r.c[rank_ - 1] = 1;
        return r;
      }
    }
    for (int s = i; s <= j; ++s) r.c[s - 1] = 1;
    return r;
  }

  /// Type-D root beta(i,j) = alpha_i+...+alpha_{j-1}
  /// + 2(alpha_j+...+alpha_{n-2}) + alpha_{n-1} + alpha_n, 1 <= i < j <= n-1.
  RootVec beta(int i, int j) const {
    if (series_ == Series::A) throw DomainError("beta roots exist only in type D");
    if (i < 1 || j > rank_ - 1 || i >= j)
      throw DomainError("beta root indices out of range");
    RootVec r = RootVec::zero(rank_);
    for (int s = i; s <= j - 1; ++s) r.c[s - 1] = 1;
    for (int s = j; s <= rank_ - 2; ++s) r.c[s - 1] = 2;
    r.c[rank_ - 2] = 1;
    r.c[rank_ - 1] = 1;
    return r;
  }

  bool is_positive_root(const RootVec& v) const {
    return std::find(positive_.begin(), positive_.end(), v) != positive_.end();
  }

  /// lambda(h_alpha) for alpha = sum c_i alpha_i: in the simply-laced case
  /// h_alpha = sum c_i h_i, so this is an integer dot product.
  Int pairing(const Weight& w, const RootVec& a) const {
    if (w.rank() != rank_ || a.rank() != rank_)
      throw DomainError("pairing rank mismatch");
    Int s = 0;
    for (int i = 0; i < rank_; ++i) s += w.c[i] * a.c[i];
    return s;
  }

  /// Simple reflection s_i(lambda) = lambda - lambda(h_i) alpha_i.
  Weight reflect(int i, const Weight& w) const {
    check_node(i);
    if (w.rank() != rank_) throw DomainError("weight rank mismatch");
    Weight r = w;
    Int m = w.c[i - 1];
    if (m == 0) return r;
    for (int j = 0; j < rank_; ++j) r.c[j] -= m * cartan_[idx(i)][j];
    return r;
  }

  bool dominant(const Weight& w) const {
    if (w.rank() != rank_) throw DomainError("weight rank mismatch");
    return std::all_of(w.c.begin(), w.c.end(), [](Int v) { return v >= 0; });
  }

  /// Dominant with every coordinate 0 or 1 (a multiplicity-free support sum).
  bool is_multiplicity_free(const Weight& w) const {
    if (w.rank() != rank_) throw DomainError("weight rank mismatch");
    return std::all_of(w.c.begin(), w.c.end(),
                       [](Int v) { return v == 0 || v == 1; });
  }

  Weight fundamental_weight(int i) const {
    check_node(i);
    Weight w = Weight::zero(rank_);
    w.c[i - 1] = 1;
    return w;
  }

  /// Image under the longest Weyl group element: -lambda composed with the
  /// diagram automorphism (identity for A_1 and D_n with n even; i -> n+1-i
  /// for A_n; the spin-node swap for D_n with n odd).
  Weight longest_element_image(const Weight& w) const {
    if (w.rank() != rank_) throw DomainError("weight rank mismatch");
    Weight r = Weight::zero(rank_);
    for (int j = 1; j <= rank_; ++j) r.c[j - 1] = -w.c[automorphism(j) - 1];
    return r;
  }

  /// The weight-coordinate image of a root-lattice vector: (Cartan)^T applied
  /// to the simple-root coordinates.
  Weight root_to_weight(const RootVec& a) const {
    if (a.rank() != rank_) throw DomainError("root rank mismatch");
    Weight w = Weight::zero(rank_);
    for (int j = 0; j < rank_; ++j) {
      Int s = 0;
      for (int i = 0; i < rank_; ++i) s += a.c[i] * cartan_[i][j];
      w.c[j] = s;
    }
    return w;
  }

  /// Root-lattice coordinates of a weight, scaled by root_coord_scale() so
  /// that everything stays an exact integer.
  Coords scaled_root_coords(const Weight& w) const {
    if (w.rank() != rank_) throw DomainError("weight rank mismatch");
    Coords out(rank_, 0);
    for (int i = 0; i < rank_; ++i) {
      Int s = 0;
      for (int j = 0; j < rank_; ++j) s += inv_cartan_num_[i][j] * w.c[j];
      out[i] = s;
    }
    return out;
  }
  Int root_coord_scale() const { return inv_cartan_den_; }

  /// True when a - b lies in the nonnegative root cone Q+.
  bool qplus_geq(const Weight& a, const Weight& b) const {
    Weight d = a - b;
    Coords rc = scaled_root_coords(d);
    return std::all_of(rc.begin(), rc.end(), [](Int v) { return v >= 0; });
  }

  /// Scaled root-coordinate height of a weight (height times
  /// root_coord_scale()); exact and order-isomorphic to the true height.
  Int scaled_height(const Weight& w) const {
    Coords rc = scaled_root_coords(w);
    Int s = 0;
    for (Int v : rc) s = checked_add(s, v);
    return s;
  }

  /// Unique (s, m) with value = level*(s-1) + m, 0 < m <= level; value 0
  /// gives (0, level).
  static std::pair<Int, Int> demazure_exponents(Int level, Int value) {
    if (level <= 0) throw DomainError("level must be positive");
    if (value < 0) throw DomainError("pairing must be nonnegative");
    if (value == 0) return {0, level};
    Int s = (value + level - 1) / level;
    Int m = value - level * (s - 1);
    return {s, m};
  }

  std::pair<Int, Int> demazure_exponents(Int level, const Weight& w,
                                         const RootVec& a) const {
    if (a.is_zero() || !is_positive_root(a))
      throw DomainError("demazure exponents require a positive root");
    return demazure_exponents(level, pairing(w, a));
  }

 private:
  static int idx(int i) { return i - 1; }

  void check_node(int i) const {
    if (i < 1 || i > rank_) throw DomainError("node index out of range");
  }

  int automorphism(int j) const {
    if (series_ == Series::A) return rank_ + 1 - j;
    if (rank_ % 2 == 0) return j;
    if (j == rank_ - 1) return rank_;
    if (j == rank_) return rank_ - 1;
    return j;
  }

  void build_cartan() {
    cartan_.assign(rank_, Coords(rank_, 0));
    for (int i = 0; i < rank_; ++i) cartan_[i][i] = 2;
    auto link = [&](int i, int j) {
      cartan_[idx(i)][idx(j)] = -1;
      cartan_[idx(j)][idx(i)] = -1;
    };
    if (series_ == Series::A) {
      for (int i = 1; i < rank_; ++i) link(i, i + 1);
    } else {
      for (int i = 1; i <= rank_ - 3; ++i) link(i, i + 1);
      link(rank_ - 2, rank_ - 1);
      link(rank_ - 2, rank_);
    }
  }

  void build_positive_roots() {
    positive_.clear();
    if (series_ == Series::A) {
      for (int i = 1; i <= rank_; ++i)
        for (int j = i; j <= rank_; ++j) positive_.push_back(alpha(i, j));
      theta_ = alpha(1, rank_);
      return;
    }
    for (int i = 1; i <= rank_; ++i)
      for (int j = i; j <= rank_; ++j)
        if (!(i == rank_ - 1 && j == rank_)) positive_.push_back(alpha(i, j));
    for (int i = 1; i <= rank_ - 1; ++i)
      for (int j = i + 1; j <= rank_ - 1; ++j) positive_.push_back(beta(i, j));
    theta_ = beta(1, 2);
  }

  void build_inverse_cartan() {
    // Fraction-free inversion; Cartan determinants here are tiny (n+1 or 4),
    // but intermediate minors are computed in arbitrary precision.
    using Big = boost::multiprecision::cpp_int;
    int n = rank_;
    std::vector<std::vector<Big>> m(n, std::vector<Big>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = cartan_[i][j];
      m[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = col; r < n; ++r)
        if (m[r][col] != 0) { piv = r; break; }
      if (piv < 0) throw InternalError("singular Cartan matrix");
      std::swap(m[col], m[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        Big f = m[r][col], p = m[col][col];
        if (f == 0) continue;
        for (int c2 = 0; c2 < 2 * n; ++c2) m[r][c2] = m[r][c2] * p - f * m[col][c2];
      }
    }
    // After full elimination each row reads m[i][i] * x_i = rhs; normalize to
    // a common positive denominator.
    Big lcm = 1;
    for (int i = 0; i < n; ++i) {
      Big d = m[i][i];
      if (d < 0) d = -d;
      lcm = boost::multiprecision::lcm(lcm, d);
    }
    inv_cartan_num_.assign(n, Coords(n, 0));
    for (int i = 0; i < n; ++i) {
      Big scale = lcm / m[i][i];
      for (int j = 0; j < n; ++j) {
        Big v = m[i][n + j] * scale;
        if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
          throw InternalError("inverse Cartan entry out of range");
        inv_cartan_num_[i][j] = static_cast<Int>(v);
      }
    }
    if (lcm > std::numeric_limits<Int>::max())
      throw InternalError("inverse Cartan denominator out of range");
    inv_cartan_den_ = static_cast<Int>(lcm);
  }

  Series series_;
  int rank_;
  std::vector<Coords> cartan_;
  std::vector<RootVec> positive_;
  RootVec theta_;
  std::vector<Coords> inv_cartan_num_;
  Int inv_cartan_den_ = 1;
};

}  // namespace demachar
