#include <doctest.h>

#include "demachar/drinfeld.hpp"

using namespace demachar;

namespace {

DrinfeldMonomial mono(std::initializer_list<std::pair<int, Int>> factors) {
  DrinfeldMonomial m;
  for (auto [node, exp] : factors) m.factors.push_back({node, exp});
  return m;
}

}  // namespace

TEST_CASE("identity and single factors are members") {
  RootSystem d7(Series::D, 7);
  CHECK(is_admissible(d7, DrinfeldMonomial{}));
  for (int i = 1; i <= 7; ++i)
    for (Int r : {-5, 0, 3}) CHECK(is_admissible(d7, mono({{i, r}})));
}

TEST_CASE("exponent gaps are pinned for pairs") {
  RootSystem d7(Series::D, 7);
  CHECK(is_admissible(d7, mono({{2, 0}, {5, 5}})));
  CHECK(is_admissible(d7, mono({{2, 0}, {5, -5}})));
  CHECK_FALSE(is_admissible(d7, mono({{2, 0}, {5, 4}})));
  CHECK_FALSE(is_admissible(d7, mono({{2, 0}, {5, 0}})));
}

TEST_CASE("signs must alternate along the chain") {
  RootSystem d7(Series::D, 7);
  CHECK(is_admissible(d7, mono({{1, 0}, {2, -3}, {3, 0}})));
  CHECK_FALSE(is_admissible(d7, mono({{1, 0}, {2, -3}, {3, -6}})));
  CHECK(is_admissible(d7, mono({{2, 0}, {3, 3}, {5, -1}, {6, 2}})));
  CHECK_FALSE(is_admissible(d7, mono({{2, 0}, {3, 3}, {5, -1}, {6, -4}})));
}

TEST_CASE("spin tail carries equal exponents") {
  RootSystem d4(Series::D, 4);
  CHECK(is_admissible(d4, mono({{3, 2}, {4, 2}})));
  CHECK_FALSE(is_admissible(d4, mono({{3, 2}, {4, 5}})));
  CHECK(is_admissible(d4, mono({{1, 0}, {3, 4}, {4, 4}})));
  CHECK(is_admissible(d4, mono({{2, 0}, {3, 3}, {4, 3}})));
  CHECK_FALSE(is_admissible(d4, mono({{2, 0}, {3, 3}, {4, -3}})));
}

TEST_CASE("monomial weights") {
  RootSystem d7(Series::D, 7);
  CHECK(monomial_weight(d7, DrinfeldMonomial{}).is_zero());
  Weight w = monomial_weight(d7, mono({{2, 0}, {5, 5}}));
  CHECK(w.c == Coords{0, 1, 0, 0, 1, 0, 0});
}

TEST_CASE("malformed monomials are rejected") {
  RootSystem d4(Series::D, 4);
  CHECK_THROWS_AS(is_admissible(d4, mono({{2, 0}, {2, 3}})), DomainError);
  CHECK_THROWS_AS(is_admissible(d4, mono({{0, 0}})), DomainError);
}

TEST_CASE("factorization splits along the interlacing parts") {
  RootSystem d7(Series::D, 7);
  // member with weight omega_2+omega_3+omega_5+omega_6+omega_7
  DrinfeldMonomial m = mono({{2, 0}, {3, -3}, {5, 1}, {6, -2}, {7, -2}});
  REQUIRE(is_admissible(d7, m));
  auto [m1, m2] = factorize(d7, m);
  CHECK(monomial_weight(d7, m1).c == Coords{0, 0, 1, 0, 0, 1, 1});
  CHECK(monomial_weight(d7, m2).c == Coords{0, 1, 0, 0, 1, 0, 0});
  // round trip: the factor multisets merge back to the input
  DrinfeldMonomial merged;
  std::merge(m1.factors.begin(), m1.factors.end(), m2.factors.begin(), m2.factors.end(),
             std::back_inserter(merged.factors),
             [](const DrinfeldFactor& a, const DrinfeldFactor& b) { return a.node < b.node; });
  CHECK(merged == m);

  auto [i1, i2] = factorize(d7, DrinfeldMonomial{});
  CHECK(i1.factors.empty());
  CHECK(i2.factors.empty());

  DrinfeldMonomial single = mono({{4, 9}});
  auto [s1, s2] = factorize(d7, single);
  CHECK(s1 == single);
  CHECK(s2.factors.empty());
}

TEST_CASE("graded limit depends only on the weight") {
  RootSystem d4(Series::D, 4);
  DrinfeldMonomial a = mono({{1, 0}, {2, 3}});
  DrinfeldMonomial b = mono({{1, 7}, {2, 4}});
  REQUIRE(is_admissible(d4, a));
  REQUIRE(is_admissible(d4, b));
  CHECK(graded_limit_char(d4, a) == graded_limit_char(d4, b));
}

TEST_CASE("graded limit of the worked D4 member") {
  RootSystem d4(Series::D, 4);
  DrinfeldMonomial m = mono({{1, 0}, {3, 4}, {4, 4}});
  REQUIRE(is_admissible(d4, m));
  GradedCharacter expect(4);
  accumulate(expect, *demazure_char_cached(d4, 2, Weight({1, 0, 1, 1})));
  accumulate(expect, *demazure_char_cached(d4, 2, Weight({2, 0, 0, 0})), 1);
  CHECK(graded_limit_char(d4, m) == expect);
  CHECK(graded_limit_char(d4, DrinfeldMonomial{}) == unit_character(4));
}

TEST_CASE("bipartite height functions") {
  RootSystem d4(Series::D, 4);
  CHECK(is_bipartite(d4, HeightFunction{{0, 1, 0, 0}}));
  CHECK(is_bipartite(d4, HeightFunction{{2, 1, 2, 2}}));
  CHECK_FALSE(is_bipartite(d4, HeightFunction{{0, 1, 2, 2}}));
  CHECK_FALSE(is_bipartite(d4, HeightFunction{{0, 1, 0, 2}}));
  RootSystem d6(Series::D, 6);
  CHECK(is_bipartite(d6, HeightFunction{{0, 1, 0, 1, 0, 0}}));
  CHECK_FALSE(is_bipartite(d6, HeightFunction{{0, 1, 2, 1, 0, 0}}));
}

TEST_CASE("cluster labels for single-node roots") {
  RootSystem d4(Series::D, 4);
  HeightFunction xi{{0, 1, 0, 0}};
  auto ms = cluster_monomials(d4, xi, d4.alpha(2, 2));
  REQUIRE(ms.size() == 2);
  for (const auto& m : ms) {
    CHECK(m.factors.size() == 1);
    CHECK(m.factors[0].node == 2);
    CHECK((m.factors[0].q_exp == 0 || m.factors[0].q_exp == 2));
  }
}

TEST_CASE("cluster labels filter by membership") {
  RootSystem d4(Series::D, 4);
  HeightFunction xi{{0, 1, 0, 0}};
  auto ms = cluster_monomials(d4, xi, d4.alpha(1, 2));
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].factors[0].q_exp == -1);  // xi(1) - 1
  CHECK(ms[0].factors[1].q_exp == 2);   // xi(2) + 1

  for (const auto& alpha :
       {d4.alpha(1, 3), d4.alpha(1, 4), d4.alpha(2, 4), d4.alpha(2, 3)}) {
    auto out = cluster_monomials(d4, xi, alpha);
    CHECK(!out.empty());
    CHECK(out.size() <= 2);
    for (const auto& m : out) {
      CHECK(is_admissible(d4, m));
      Weight w = monomial_weight(d4, m);
      Weight expect = Weight::zero(4);
      for (int i = 0; i < 4; ++i) expect.c[i] = alpha.c[i] == 1 ? 1 : 0;
      CHECK(w == expect);
    }
  }
}

TEST_CASE("beta-shaped cluster roots are rejected") {
  RootSystem d4(Series::D, 4);
  HeightFunction xi{{0, 1, 0, 0}};
  CHECK_THROWS_AS(cluster_monomials(d4, xi, d4.beta(1, 2)), DomainError);
  CHECK_THROWS_AS(cluster_monomials(d4, xi, d4.beta(1, 3)), DomainError);
  CHECK_THROWS_AS(cluster_monomials(d4, xi, RootVec::zero(4)), DomainError);
}
