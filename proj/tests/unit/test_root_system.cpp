#include <doctest.h>

#include "demachar/freudenthal.hpp"
#include "demachar/root_system.hpp"

using namespace demachar;

TEST_CASE("positive root counts") {
  CHECK(RootSystem(Series::D, 4).positive_roots().size() == 12);
  CHECK(RootSystem(Series::A, 3).positive_roots().size() == 6);
  // n(n+1)/2 in type A, n(n-1) in type D
  for (int n = 1; n <= 12; ++n)
    CHECK(RootSystem(Series::A, n).positive_roots().size() ==
          static_cast<std::size_t>(n * (n + 1) / 2));
  for (int n = 4; n <= 12; ++n)
    CHECK(RootSystem(Series::D, n).positive_roots().size() ==
          static_cast<std::size_t>(n * (n - 1)));
}

TEST_CASE("rank guards") {
  CHECK_THROWS_AS(RootSystem(Series::D, 3), DomainError);
  CHECK_THROWS_AS(RootSystem(Series::A, 0), DomainError);
}

TEST_CASE("highest root of D4 is beta(1,2) with coords (1,2,1,1)") {
  RootSystem rs(Series::D, 4);
  CHECK(rs.highest_root().c == Coords{1, 2, 1, 1});
  CHECK(rs.highest_root() == rs.beta(1, 2));
  RootSystem a3(Series::A, 3);
  CHECK(a3.highest_root().c == Coords{1, 1, 1});
}

TEST_CASE("interval root conventions") {
  RootSystem rs(Series::D, 5);
  CHECK(rs.alpha(3, 2).is_zero());
  CHECK(rs.alpha(4, 5).is_zero());  // (n-1, n) is excluded by convention
  CHECK(rs.alpha(2, 5).c == Coords{0, 1, 1, 0, 1});
  CHECK(rs.alpha(2, 4).c == Coords{0, 1, 1, 1, 0});
  CHECK(rs.beta(2, 3).c == Coords{0, 1, 2, 1, 1});
}

TEST_CASE("pairing against coroots") {
  RootSystem rs(Series::D, 4);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      CHECK(rs.pairing(rs.fundamental_weight(i), rs.alpha(j, j)) == (i == j ? 1 : 0));
  CHECK(rs.pairing(rs.fundamental_weight(2), rs.beta(1, 2)) == 2);
  Weight w34 = rs.fundamental_weight(3) + rs.fundamental_weight(4);
  CHECK(rs.pairing(w34, rs.beta(2, 3)) == 2);
}

TEST_CASE("theta dominates every positive root pairing") {
  for (auto [series, lo, hi] : {std::tuple{Series::A, 1, 6}, std::tuple{Series::D, 4, 7}}) {
    for (int n = lo; n <= hi; ++n) {
      RootSystem rs(series, n);
      Weight rho = Weight::zero(n);
      for (auto& v : rho.c) v = 1;
      Weight probe = rho + rs.fundamental_weight(1);
      for (const RootVec& a : rs.positive_roots())
        CHECK(rs.pairing(probe, rs.highest_root()) >= rs.pairing(probe, a));
    }
  }
}

TEST_CASE("simple reflections are involutions") {
  RootSystem rs(Series::D, 5);
  Weight w({3, -1, 2, 0, 5});
  for (int i = 1; i <= 5; ++i) CHECK(rs.reflect(i, rs.reflect(i, w)) == w);
  Weight fixed({1, 0, 2, 1, 1});
  CHECK(rs.reflect(2, fixed) == fixed);  // zero pairing leaves it unchanged
}

TEST_CASE("reflection of omega_1 in D4") {
  RootSystem rs(Series::D, 4);
  CHECK(rs.reflect(1, rs.fundamental_weight(1)).c == Coords{-1, 1, 0, 0});
}

TEST_CASE("longest element image") {
  RootSystem d4(Series::D, 4);
  CHECK(d4.longest_element_image(d4.fundamental_weight(1)).c == Coords{-1, 0, 0, 0});
  RootSystem d5(Series::D, 5);
  CHECK(d5.longest_element_image(d5.fundamental_weight(4)).c == Coords{0, 0, 0, 0, -1});
  CHECK(d5.longest_element_image(d5.fundamental_weight(2)).c == Coords{0, -1, 0, 0, 0});
  RootSystem a3(Series::A, 3);
  CHECK(a3.longest_element_image(a3.fundamental_weight(1)).c == Coords{0, 0, -1});
  RootSystem a1(Series::A, 1);
  CHECK(a1.longest_element_image(a1.fundamental_weight(1)).c == Coords{-1});
}

TEST_CASE("demazure exponents") {
  CHECK(RootSystem::demazure_exponents(2, 5) == std::pair<Int, Int>{3, 1});
  CHECK(RootSystem::demazure_exponents(1, 7) == std::pair<Int, Int>{7, 1});
  CHECK(RootSystem::demazure_exponents(2, 0) == std::pair<Int, Int>{0, 2});
  CHECK(RootSystem::demazure_exponents(3, 6) == std::pair<Int, Int>{2, 3});
  CHECK_THROWS_AS(RootSystem::demazure_exponents(0, 1), DomainError);
  // reconstruction: value = level*(s-1) + m with 0 < m <= level
  for (Int level = 1; level <= 4; ++level)
    for (Int v = 0; v <= 20; ++v) {
      auto [s, m] = RootSystem::demazure_exponents(level, v);
      CHECK(level * (s - 1) + m == v);
      CHECK(m > 0);
      CHECK(m <= level);
    }
}

TEST_CASE("classical character basics") {
  RootSystem a1(Series::A, 1);
  CHECK(classical_character(a1, Weight::zero(1)).dimension() == 1);
  for (Int m = 1; m <= 6; ++m)
    CHECK(classical_character(a1, Weight({m})).dimension() == m + 1);
  RootSystem d4(Series::D, 4);
  CHECK(classical_character(d4, d4.fundamental_weight(1)).dimension() == 8);
  CHECK(weyl_dimension(d4, d4.fundamental_weight(1)) == 8);
  CHECK(weyl_dimension(d4, d4.fundamental_weight(2)) == 28);
  CHECK_THROWS_AS(classical_character(d4, Weight({1, -1, 0, 0})), DomainError);
}

TEST_CASE("Freudenthal agrees with the Weyl dimension formula") {
  // two independent code paths
  RootSystem d4(Series::D, 4);
  for (Coords c : {Coords{1, 0, 0, 0}, Coords{0, 1, 0, 0}, Coords{1, 0, 1, 1},
                   Coords{2, 0, 0, 0}, Coords{1, 1, 0, 0}, Coords{0, 0, 1, 1},
                   Coords{2, 1, 1, 0}}) {
    Weight w(c);
    CHECK(classical_character(d4, w).dimension() == weyl_dimension(d4, w));
  }
  RootSystem a3(Series::A, 3);
  for (Coords c : {Coords{1, 0, 0}, Coords{1, 1, 1}, Coords{2, 0, 2}, Coords{3, 1, 0}}) {
    Weight w(c);
    CHECK(classical_character(a3, w).dimension() == weyl_dimension(a3, w));
  }
}

TEST_CASE("classical characters are Weyl symmetric") {
  RootSystem d4(Series::D, 4);
  GradedCharacter f = classical_character(d4, Weight({1, 1, 0, 0}));
  CHECK(weyl_symmetric_per_grade(d4, f));
}
