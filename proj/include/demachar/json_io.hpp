#pragma once

#include <string>

#include <json.hpp>

#include "demachar/drinfeld.hpp"
#include "demachar/gendem.hpp"

namespace demachar {

/// All emitted JSON uses insertion-ordered objects and canonically sorted
/// arrays, so identical inputs always serialize to identical bytes.
using Json = nlohmann::ordered_json;

inline Json coords_json(const Coords& c) { return Json(c); }

inline Coords coords_from_json(const Json& j, int rank) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw DomainError("expected an array of length rank");
  Coords c;
  for (const auto& v : j) c.push_back(v.get<Int>());
  return c;
}

/// {"rank":n,"series":"D","terms":[{"wt":[...],"grade":g,"mult":m},...]}
/// with terms sorted by (grade, weight lexicographic).
inline Json character_json(const RootSystem& rs, const GradedCharacter& f) {
  Json j;
  j["rank"] = rs.rank();
  j["series"] = std::string(1, series_letter(rs.series()));
  Json terms = Json::array();
  for (const Term& t : f.sorted_terms()) {
    Json term;
    term["wt"] = coords_json(t.weight.c);
    term["grade"] = t.grade;
    term["mult"] = t.mult;
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline GradedCharacter character_from_json(const RootSystem& rs, const Json& j) {
  GradedCharacter f(rs.rank());
  for (const auto& term : j.at("terms"))
    f.add(Weight(coords_from_json(term.at("wt"), rs.rank())), term.at("grade").get<Int>(),
          term.at("mult").get<Int>());
  return f;
}

/// Flag decomposition: steps with mu, pair, beta (root coordinates), r, R.
inline Json flag_json(const RootSystem& rs, const FlagDecomposition& flag) {
  Json steps = Json::array();
  for (const FlagStep& st : flag.steps) {
    Json s;
    s["mu"] = coords_json(st.mu.c);
    s["pair"] = Json::array({coords_json(st.pair.part1.c), coords_json(st.pair.part2.c)});
    s["beta"] = st.beta ? coords_json(st.beta->c) : Json(nullptr);
    s["r"] = st.r;
    s["R"] = st.R;
    steps.push_back(std::move(s));
  }
  Json j;
  j["steps"] = std::move(steps);
  return j;
}

/// {"factors":[{"node":i,"q_exp":r},...]}
inline Json monomial_json(const DrinfeldMonomial& m) {
  Json factors = Json::array();
  for (const auto& f : m.factors) {
    Json fj;
    fj["node"] = f.node;
    fj["q_exp"] = f.q_exp;
    factors.push_back(std::move(fj));
  }
  Json j;
  j["factors"] = std::move(factors);
  return j;
}

inline Json decomposition_json(const CharacterDecomposition& d) {
  Json grades = Json::array();
  for (const auto& g : d.grades) {
    Json gj;
    gj["grade"] = g.grade;
    Json comps = Json::array();
    for (const auto& c : g.components) {
      Json cj;
      cj["wt"] = coords_json(c.highest_weight.c);
      cj["mult"] = c.mult;
      comps.push_back(std::move(cj));
    }
    gj["components"] = std::move(comps);
    grades.push_back(std::move(gj));
  }
  Json j;
  j["dimension"] = d.dimension;
  j["grades"] = std::move(grades);
  return j;
}

inline Json check_outcome_json(const CheckOutcome& c) {
  Json j;
  j["pass"] = c.pass;
  if (!c.pass) j["violation"] = c.detail;
  return j;
}

inline Json consistency_json(const ConsistencyReport& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["dimension"] = rep.dimension;
  j["flag_length"] = rep.flag_length;
  j["dimension_additivity"] = check_outcome_json(rep.dimension_additivity);
  j["sandwich_lower"] = check_outcome_json(rep.sandwich_lower);
  j["sandwich_upper"] = check_outcome_json(rep.sandwich_upper);
  j["recursion_closed_form"] = check_outcome_json(rep.recursion_closed_form);
  j["grade0_classical"] = check_outcome_json(rep.grade0_classical);
  return j;
}

inline std::string render(const Json& j) { return j.dump() + "\n"; }

}  // namespace demachar
