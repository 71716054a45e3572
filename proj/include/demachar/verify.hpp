#pragma once

#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "demachar/drinfeld.hpp"
#include "demachar/gendem.hpp"

namespace demachar {

struct VerifyCase {
  std::string name;
  std::function<std::string()> run;  // empty string = pass, otherwise failure detail
};

struct VerifyResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyOptions {
  int rank_lo = 4;
  int rank_hi = 8;
  std::size_t budget = kDefaultTermBudget;
  int jobs = 1;
};

class UnknownSuite : public std::runtime_error {
 public:
  explicit UnknownSuite(const std::string& s) : std::runtime_error("unknown suite: " + s) {}
};

namespace verify_detail {

inline std::vector<Weight> binary_weights(int rank) {
  std::vector<Weight> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << rank); ++mask) {
    Weight w = Weight::zero(rank);
    for (int i = 0; i < rank; ++i)
      if ((mask >> i) & 1) w.c[i] = 1;
    out.push_back(w);
  }
  return out;
}

inline std::vector<Weight> bounded_weights(int rank, Int max_coord) {
  std::vector<Weight> out;
  Weight w = Weight::zero(rank);
  for (;;) {
    out.push_back(w);
    int pos = 0;
    while (pos < rank && w.c[pos] == max_coord) w.c[pos++] = 0;
    if (pos == rank) return out;
    ++w.c[pos];
  }
}

inline std::string coords_str(const Coords& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

/// Exhaustive bipartitions of the support of lambda; counts interlacing
/// splits up to swap.
inline int interlacing_split_count(const RootSystem& rs, const Weight& lambda) {
  std::vector<int> support;
  for (int i = 1; i <= rs.rank(); ++i)
    if (lambda.c[i - 1] == 1) support.push_back(i);
  if (support.empty()) return 1;
  int count = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << support.size()); ++mask) {
    if ((mask & 1) == 0) continue;  // fix the side of the first support index
    Weight a = Weight::zero(rs.rank()), b = Weight::zero(rs.rank());
    for (std::size_t s = 0; s < support.size(); ++s)
      ((mask >> s) & 1 ? a : b).c[support[s] - 1] = 1;
    if (verify_interlacing(rs, a, b)) ++count;
  }
  return count;
}

inline void add_interlacing_cases(std::vector<VerifyCase>& cases, const VerifyOptions& opt) {
  int lo = std::max(4, opt.rank_lo), hi = std::min(10, opt.rank_hi);
  for (int n = lo; n <= hi; ++n) {
    cases.push_back({"interlacing/D" + std::to_string(n) + "/decompose-unique", [n] {
      RootSystem rs(Series::D, n);
      for (const Weight& lam : binary_weights(n)) {
        InterlacingPair pair = interlace_decompose(rs, lam);
        if (!verify_interlacing(rs, pair.part1, pair.part2))
          return "decomposition fails verification at " + coords_str(lam.c);
        if (interlacing_split_count(rs, lam) != 1)
          return "split not unique at " + coords_str(lam.c);
      }
      return std::string();
    }});
    cases.push_back({"interlacing/D" + std::to_string(n) + "/pairing-gap-bounds", [n] {
      RootSystem rs(Series::D, n);
      for (const Weight& lam : binary_weights(n)) {
        InterlacingPair pair = interlace_decompose(rs, lam);
        Weight diff = pair.part1 - pair.part2;
        bool spin_one = lam.c[n - 2] + lam.c[n - 1] == 1;
        for (int i = 1; i <= n; ++i)
          for (int j = i; j <= n; ++j) {
            RootVec a = rs.alpha(i, j);
            if (a.is_zero()) continue;
            if (std::abs(rs.pairing(diff, a)) > 1)
              return "interval-root gap exceeds 1 at " + coords_str(lam.c);
          }
        for (const RootVec& a : rs.positive_roots()) {
          Int v = std::abs(rs.pairing(diff, a));
          if (v > 2) return "root gap exceeds 2 at " + coords_str(lam.c);
          if (spin_one && v > 1)
            return "spin-one root gap exceeds 1 at " + coords_str(lam.c);
        }
      }
      return std::string();
    }});
    cases.push_back({"interlacing/D" + std::to_string(n) + "/gap-two-closed-form", [n] {
      RootSystem rs(Series::D, n);
      for (const Weight& lam : binary_weights(n)) {
        InterlacingPair pair = interlace_decompose(rs, lam);
        std::vector<RootVec> direct = gap_two_roots(rs, pair);
        auto fr = flag_root(rs, pair);
        if (fr.has_value() != !direct.empty())
          return "flag-root presence disagrees with the gap-two set at " +
                 coords_str(lam.c);
        if (!fr) continue;
        Weight diff = pair.part1 - pair.part2;
        std::vector<RootVec> closed;
        for (int i = 1; i <= n - 1; ++i)
          for (int j = i + 1; j <= n - 1; ++j) {
            RootVec b = rs.beta(i, j);
            RootVec predicted =
                rs.alpha(i, fr->pprime - 1) + fr->root + rs.alpha(j, fr->p);
            if (!(b == predicted)) continue;
            if (rs.pairing(diff, rs.alpha(i, fr->pprime - 1)) != 0) continue;
            if (rs.pairing(diff, rs.alpha(j, fr->p)) != 0) continue;
            closed.push_back(b);
          }
        if (!(direct == closed))
          return "closed characterization mismatch at " + coords_str(lam.c);
        bool contains = false;
        for (const RootVec& b : direct) contains |= b == fr->root;
        if (!contains) return "flag root missing from its own set at " + coords_str(lam.c);
      }
      return std::string();
    }});
    cases.push_back({"interlacing/D" + std::to_string(n) + "/descent-interlacing", [n] {
      RootSystem rs(Series::D, n);
      for (const Weight& lam : binary_weights(n)) {
        InterlacingPair pair = interlace_decompose(rs, lam);
        if (!flag_root(rs, pair)) continue;
        FlagDescent d = flag_descent(rs, pair);
        if (!verify_interlacing(rs, d.next.part1, d.next.part2))
          return "descent not interlacing at " + coords_str(lam.c);
      }
      return std::string();
    }});
  }
  for (int k = 1; k <= 4; ++k) {
    cases.push_back({"interlacing/A" + std::to_string(k) + "/no-flag-root", [k] {
      RootSystem rs(Series::A, k);
      for (const Weight& lam : binary_weights(k)) {
        InterlacingPair pair = interlace_decompose(rs, lam);
        if (!verify_interlacing(rs, pair.part1, pair.part2))
          return "type A decomposition fails at " + coords_str(lam.c);
        if (flag_root(rs, pair) || !gap_two_roots(rs, pair).empty())
          return "type A pair has a flag root at " + coords_str(lam.c);
      }
      return std::string();
    }});
  }
}

inline void add_engine_cases(std::vector<VerifyCase>& cases, const VerifyOptions& opt) {
  std::vector<std::pair<Series, int>> systems;
  for (int k = 1; k <= 3; ++k) systems.push_back({Series::A, k});
  for (int n = std::max(4, opt.rank_lo); n <= std::min(6, opt.rank_hi); ++n)
    systems.push_back({Series::D, n});

  for (auto [series, n] : systems) {
    std::string tag = std::string(1, series_letter(series)) + std::to_string(n);
    Int max_coord = (series == Series::A || n == 4) ? 2 : 1;
    std::size_t budget = opt.budget;

    cases.push_back({"engine/" + tag + "/grade0-freudenthal", [series, n, max_coord, budget] {
      RootSystem rs(series, n);
      for (const Weight& lam : bounded_weights(n, max_coord))
        for (Int level : {1, 2}) {
          GradedCharacter f = demazure_char(rs, level, lam, budget);
          GradedCharacter slice(n);
          for (const auto& [k, m] : f.terms())
            if (k.grade == 0) slice.add(k, m);
          if (!(slice == *ClassicalCache::instance().get(rs, lam, budget)))
            return "grade-0 slice mismatch at level " + std::to_string(level) + ", " +
                   coords_str(lam.c);
          if (!weyl_symmetric_per_grade(rs, f))
            return "character not Weyl symmetric at " + coords_str(lam.c);
        }
      return std::string();
    }});
    cases.push_back({"engine/" + tag + "/tiebreak-independence", [series, n, max_coord, budget] {
      RootSystem rs(series, n);
      for (const Weight& lam : bounded_weights(n, max_coord))
        for (Int level : {1, 2}) {
          auto least = demazure_word(rs, level, lam, TieBreak::LeastNode);
          auto greatest = demazure_word(rs, level, lam, TieBreak::GreatestNode);
          if (least.word.size() != greatest.word.size())
            return "word lengths differ at " + coords_str(lam.c);
          if (!(demazure_char(rs, level, lam, budget, TieBreak::LeastNode) ==
                demazure_char(rs, level, lam, budget, TieBreak::GreatestNode)))
            return "characters differ by tie-break at " + coords_str(lam.c);
        }
      return std::string();
    }});
    cases.push_back({"engine/" + tag + "/classical-collapse", [series, n, budget] {
      RootSystem rs(series, n);
      for (const Weight& lam : binary_weights(n)) {
        Int level = std::max<Int>(1, rs.pairing(lam, rs.highest_root()));
        GradedCharacter f = demazure_char(rs, level, lam, budget);
        if (!(f == *ClassicalCache::instance().get(rs, lam, budget)))
          return "high-level character is not classical at " + coords_str(lam.c);
      }
      return std::string();
    }});
    cases.push_back({"engine/" + tag + "/operator-idempotence", [series, n] {
      RootSystem rs(series, n);
      std::mt19937_64 rng(0xD46 + n);
      std::uniform_int_distribution<Int> coord(-4, 4), deg(0, 5), mult(-3, 3);
      for (int trial = 0; trial < 100; ++trial) {
        AffineCharacter f;
        f.rank = n;
        f.level = 2;
        for (int t = 0; t < 10; ++t) {
          Weight w = Weight::zero(n);
          for (auto& v : w.c) v = coord(rng);
          f.add(pack_term(w, deg(rng)), mult(rng));
        }
        int node = static_cast<int>(rng() % (n + 1));
        AffineCharacter once = demazure_operator(rs, node, f);
        if (!(demazure_operator(rs, node, once).terms == once.terms))
          return std::string("operator not idempotent on a random character");
      }
      return std::string();
    }});
  }

  cases.push_back({"engine/A1/hand-character", [] {
    RootSystem a1(Series::A, 1);
    GradedCharacter f = demazure_char(a1, 1, Weight({2}));
    bool ok = f.term_count() == 4 && f.at(Weight({2}), 0) == 1 &&
              f.at(Weight({0}), 0) == 1 && f.at(Weight({-2}), 0) == 1 &&
              f.at(Weight({0}), 1) == 1;
    return ok ? std::string() : std::string("A1 level-1 character of 2*omega is wrong");
  }});

  for (auto [series, n] : {std::pair{Series::D, 4}, std::pair{Series::A, 3}}) {
    if (series == Series::D && (4 < opt.rank_lo || 4 > opt.rank_hi)) continue;
    std::string tag = std::string(1, series_letter(series)) + std::to_string(n);
    std::size_t budget = opt.budget;
    cases.push_back({"engine/" + tag + "/level1-multiplicativity", [series, n, budget] {
      RootSystem rs(series, n);
      Coords fund(n);
      for (int i = 1; i <= n; ++i)
        fund[i - 1] = demazure_char(rs, 1, rs.fundamental_weight(i), budget).dimension();
      for (const Weight& lam : bounded_weights(n, 2)) {
        Int expect = 1;
        for (int i = 0; i < n; ++i)
          for (Int rep = 0; rep < lam.c[i]; ++rep) expect = checked_mul(expect, fund[i]);
        if (demazure_char(rs, 1, lam, budget).dimension() != expect)
          return "level-1 dimension not multiplicative at " + coords_str(lam.c);
      }
      return std::string();
    }});
  }
}

inline void add_main_theorem_cases(std::vector<VerifyCase>& cases, const VerifyOptions& opt) {
  for (int n = std::max(4, opt.rank_lo); n <= std::min(5, opt.rank_hi); ++n) {
    for (const Weight& lam : binary_weights(n)) {
      std::size_t budget = opt.budget;
      int jobs = 1;  // case-level parallelism comes from the runner
      cases.push_back({"main/D" + std::to_string(n) + "/consistency/" + coords_str(lam.c),
                       [n, lam, budget, jobs] {
        RootSystem rs(Series::D, n);
        InterlacingPair pair = interlace_decompose(rs, lam);
        int checked = 0, skipped = 0;
        for (const Weight& nu : binary_weights(n)) {
          try {
            ConsistencyReport rep = consistency_report(rs, pair, nu, budget, jobs);
            if (!rep.pass)
              return "consistency failed at nu=" + coords_str(nu.c);
            ++checked;
          } catch (const BudgetError&) {
            ++skipped;
          }
        }
        if (checked == 0) return std::string("every nu exceeded the budget");
        return std::string();
      }});
    }
  }
  for (int k = 1; k <= 3; ++k) {
    std::size_t budget = opt.budget;
    cases.push_back({"main/A" + std::to_string(k) + "/one-step-degeneration", [k, budget] {
      RootSystem rs(Series::A, k);
      for (const Weight& lam : binary_weights(k)) {
        InterlacingPair pair = interlace_decompose(rs, lam);
        for (const Weight& nu : binary_weights(k)) {
          Weight mu = lam + 2 * nu;
          if (flag_sequence(rs, mu).steps.size() != 1)
            return "type A flag has more than one step at " + coords_str(lam.c);
          if (!(generalized_demazure_char(rs, pair, nu, budget) ==
                *demazure_char_cached(rs, 2, mu, budget)))
            return "type A character is not the level-two character at " +
                   coords_str(lam.c);
        }
      }
      return std::string();
    }});
  }
  for (int n = std::max(4, opt.rank_lo); n <= std::min(6, opt.rank_hi); ++n) {
    std::size_t budget = opt.budget;
    cases.push_back({"main/D" + std::to_string(n) + "/demiso-one-step", [n, budget] {
      RootSystem rs(Series::D, n);
      for (const Weight& lam : binary_weights(n)) {
        InterlacingPair pair = interlace_decompose(rs, lam);
        bool demiso = !flag_root(rs, pair).has_value();
        for (Coords nu_c : {Coords(n, 0), Coords(n, 1)}) {
          Weight nu(nu_c);
          std::size_t steps = flag_sequence(rs, lam + 2 * nu).steps.size();
          if (demiso && steps != 1)
            return "isomorphism case has a multi-step flag at " + coords_str(lam.c);
          if (!demiso && steps < 2)
            return "non-isomorphism case has a one-step flag at " + coords_str(lam.c);
        }
      }
      return std::string();
    }});
  }
}

inline void add_drinfeld_cases(std::vector<VerifyCase>& cases, const VerifyOptions& opt) {
  std::size_t budget = opt.budget;
  cases.push_back({"drinfeld/D4/wt-image-exhaustive", [] {
    RootSystem rs(Series::D, 4);
    std::set<Coords> image;
    // all admissible monomials with exponents |r| <= 8
    std::vector<std::vector<int>> supports;
    for (std::size_t mask = 1; mask < 16; ++mask) {
      std::vector<int> nodes;
      for (int i = 0; i < 4; ++i)
        if ((mask >> i) & 1) nodes.push_back(i + 1);
      supports.push_back(nodes);
    }
    image.insert(Coords(4, 0));  // the identity
    for (const auto& nodes : supports) {
      std::vector<Int> exps(nodes.size(), -8);
      for (;;) {
        DrinfeldMonomial m;
        for (std::size_t s = 0; s < nodes.size(); ++s)
          m.factors.push_back({nodes[s], exps[s]});
        if (is_admissible(rs, m)) image.insert(monomial_weight(rs, m).c);
        std::size_t pos = 0;
        while (pos < exps.size() && exps[pos] == 8) exps[pos++] = -8;
        if (pos == exps.size()) break;
        ++exps[pos];
      }
    }
    std::size_t expected = 16;
    if (image.size() != expected)
      return std::string("weight image does not equal the binary weights");
    return std::string();
  }});
  cases.push_back({"drinfeld/D4/factorize-roundtrip", [] {
    RootSystem rs(Series::D, 4);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<Int> start(-6, 6);
    int found = 0;
    for (int trial = 0; trial < 4000; ++trial) {
      DrinfeldMonomial m;
      Int r = start(rng);
      std::size_t mask = 1 + rng() % 15;
      std::vector<int> nodes;
      for (int i = 0; i < 4; ++i)
        if ((mask >> i) & 1) nodes.push_back(i + 1);
      for (std::size_t s = 0; s < nodes.size(); ++s)
        m.factors.push_back({nodes[s], start(rng)});
      if (!is_admissible(rs, m)) continue;
      ++found;
      auto [m1, m2] = factorize(rs, m);
      std::vector<DrinfeldFactor> merged;
      std::merge(m1.factors.begin(), m1.factors.end(), m2.factors.begin(),
                 m2.factors.end(), std::back_inserter(merged),
                 [](const DrinfeldFactor& a, const DrinfeldFactor& b) {
                   return a.node < b.node;
                 });
      if (!(merged == m.factors)) return std::string("factorize does not round-trip");
      InterlacingPair pair = interlace_decompose(rs, monomial_weight(rs, m));
      if (!(monomial_weight(rs, m1) == pair.part1) ||
          !(monomial_weight(rs, m2) == pair.part2))
        return std::string("factor weights are not the canonical parts");
      (void)r;
    }
    if (found < 50) return std::string("sampler produced too few members");
    return std::string();
  }});
  cases.push_back({"drinfeld/D4/wt-only-dependence", [budget] {
    RootSystem rs(Series::D, 4);
    for (const Weight& lam : binary_weights(4)) {
      // three members with this weight, different spectral parameters
      std::vector<int> nodes;
      for (int i = 1; i <= 4; ++i)
        if (lam.c[i - 1] == 1) nodes.push_back(i);
      std::vector<DrinfeldMonomial> members;
      for (Int base : {-3, 0, 5}) {
        for (int sign : {1, -1}) {
          DrinfeldMonomial m;
          Int r = base;
          int s = sign;
          for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
            m.factors.push_back({nodes[idx], r});
            if (idx + 1 < nodes.size()) {
              bool spin_pair = nodes[idx] == 3 && nodes[idx + 1] == 4;
              Int gap = spin_pair ? 0
                                  : std::min(nodes[idx + 1], 3) - std::min(nodes[idx], 3) + 2;
              r -= s * gap;
              s = -s;
            }
          }
          if (is_admissible(rs, m)) members.push_back(m);
        }
      }
      if (members.size() < 2) continue;
      GradedCharacter first = graded_limit_char(rs, members[0], budget);
      for (std::size_t i = 1; i < members.size(); ++i)
        if (!(graded_limit_char(rs, members[i], budget) == first))
          return "graded limit depends on spectral parameters at " + coords_str(lam.c);
    }
    return std::string();
  }});
  for (int n = std::max(4, opt.rank_lo); n <= std::min(6, opt.rank_hi); ++n) {
    cases.push_back({"drinfeld/D" + std::to_string(n) + "/cluster-monomials", [n] {
      RootSystem rs(Series::D, n);
      for (Int base : {0, 1}) {
        HeightFunction xi{Coords(n)};
        for (int i = 1; i <= n - 1; ++i) xi.xi[i - 1] = (i + base) % 2;
        xi.xi[n - 1] = xi.xi[n - 2];
        if (!is_bipartite(rs, xi)) return std::string("test height function invalid");
        for (int i = 1; i <= n; ++i)
          for (int j = i; j <= n; ++j) {
            RootVec a = rs.alpha(i, j);
            if (a.is_zero()) continue;
            auto ms = cluster_monomials(rs, xi, a);
            if (ms.empty() || ms.size() > 2)
              return "cluster set size out of range for alpha(" + std::to_string(i) +
                     "," + std::to_string(j) + ")";
            for (const auto& m : ms) {
              if (!is_admissible(rs, m)) return std::string("cluster monomial not a member");
              Weight w = monomial_weight(rs, m);
              for (int s = 0; s < n; ++s)
                if (w.c[s] != (a.c[s] == 1 ? 1 : 0))
                  return std::string("cluster monomial has the wrong weight");
            }
          }
      }
      return std::string();
    }});
  }
}

}  // namespace verify_detail

inline std::vector<std::string> suite_names() {
  return {"interlacing", "demazure-engine", "main-theorem", "drinfeld", "all"};
}

inline std::vector<VerifyResult> run_suite(const std::string& suite,
                                           const VerifyOptions& opt) {
  std::vector<VerifyCase> cases;
  bool known = false;
  if (suite == "interlacing" || suite == "all") {
    verify_detail::add_interlacing_cases(cases, opt);
    known = true;
  }
  if (suite == "demazure-engine" || suite == "all") {
    verify_detail::add_engine_cases(cases, opt);
    known = true;
  }
  if (suite == "main-theorem" || suite == "all") {
    verify_detail::add_main_theorem_cases(cases, opt);
    known = true;
  }
  if (suite == "drinfeld" || suite == "all") {
    verify_detail::add_drinfeld_cases(cases, opt);
    known = true;
  }
  if (!known) throw UnknownSuite(suite);

  std::vector<VerifyResult> results(cases.size());
  detail::parallel_for(cases.size(), opt.jobs, [&](std::size_t i) {
    VerifyResult r;
    r.name = cases[i].name;
    try {
      r.detail = cases[i].run();
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results[i] = std::move(r);
  });
  return results;
}

}  // namespace demachar
