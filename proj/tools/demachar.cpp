// Command-line front end: exact graded characters of Demazure and
// generalized Demazure modules for the current algebras of types A and D,
// with canonical JSON output, a content-addressed result cache, and the
// library's verification suites.
//
// Exit codes: 0 success, 1 a requested check or suite failed, 2 usage or
// parse error, 3 domain error (invalid mathematical input), 4 resource
// budget or engine capacity exceeded.

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "demachar/cache.hpp"
#include "demachar/decompose.hpp"
#include "demachar/json_io.hpp"
#include "demachar/verify.hpp"
#include "demachar/version.hpp"

namespace {

using namespace demachar;

struct CommonOptions {
  std::string series = "D";
  int rank = 4;
  std::size_t budget = kDefaultTermBudget;
  int jobs = 1;
  bool no_cache = false;
};

Series parse_series(const std::string& s) {
  if (s == "A" || s == "a") return Series::A;
  if (s == "D" || s == "d") return Series::D;
  throw DomainError("series must be A or D");
}

Coords parse_coords(const std::string& text, int rank, const std::string& what) {
  Coords out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError(what + ": '" + item + "' is not an integer");
    }
  }
  if (static_cast<int>(out.size()) != rank)
    throw DomainError(what + " must list exactly " + std::to_string(rank) +
                      " comma-separated integers");
  return out;
}

void emit(const std::string& bytes) {
  std::fwrite(bytes.data(), 1, bytes.size(), stdout);
  std::fflush(stdout);
}

/// Runs `compute` unless the cache already holds the result; `key` must
/// determine the output bytes completely.
int with_cache(const CommonOptions& common, const std::string& key,
               const std::function<std::string()>& compute) {
  if (!common.no_cache) {
    ResultCache cache = ResultCache::from_environment();
    if (auto hit = cache.get(key)) {
      emit(*hit);
      return 0;
    }
    std::string bytes = compute();
    cache.put(key, bytes);
    emit(bytes);
    return 0;
  }
  emit(compute());
  return 0;
}

Json summary_json(const RootSystem& rs, const GradedCharacter& f, std::size_t budget) {
  CharacterDecomposition d = specialize_and_decompose(rs, f, budget);
  Json j;
  j["dimension"] = d.dimension;
  j["term_count"] = f.term_count();
  j["top_grade"] = f.empty() ? 0 : f.max_grade();
  j["decomposition"] = decomposition_json(d)["grades"];
  return j;
}

int run_char(const CommonOptions& common, const std::string& weight_text, Int level) {
  RootSystem rs(parse_series(common.series), common.rank);
  Weight lambda(parse_coords(weight_text, common.rank, "--weight"));
  if (!rs.dominant(lambda)) throw DomainError("--weight must be dominant");
  if (level < 1) throw DomainError("--level must be at least 1");
  std::string key = std::string(kEngineVersion) + "|char|series=" + common.series +
                    "|rank=" + std::to_string(common.rank) +
                    "|level=" + std::to_string(level) + "|weight=" + weight_text +
                    "|budget=" + std::to_string(common.budget);
  return with_cache(common, key, [&] {
    GradedCharacter f = demazure_char(rs, level, lambda, common.budget);
    Json j;
    j["command"] = "char";
    j["series"] = common.series;
    j["rank"] = common.rank;
    j["level"] = level;
    j["weight"] = coords_json(lambda.c);
    j["character"] = character_json(rs, f);
    j["summary"] = summary_json(rs, f, common.budget);
    return render(j);
  });
}

int run_gendem(const CommonOptions& common, const std::string& l1_text,
               const std::string& l2_text, const std::string& nu_text, bool check) {
  RootSystem rs(parse_series(common.series), common.rank);
  Weight l1(parse_coords(l1_text, common.rank, "--lambda1"));
  Weight l2(parse_coords(l2_text, common.rank, "--lambda2"));
  Weight nu(parse_coords(nu_text, common.rank, "--nu"));
  if (!rs.dominant(nu)) throw DomainError("--nu must be dominant");
  if (auto why = interlacing_violation(rs, l1, l2))
    throw DomainError("pair is not interlacing: " + *why);
  InterlacingPair pair = canonical_pair(rs, l1, l2);

  std::string key = std::string(kEngineVersion) + "|gendem|series=" + common.series +
                    "|rank=" + std::to_string(common.rank) + "|lambda1=" + l1_text +
                    "|lambda2=" + l2_text + "|nu=" + nu_text +
                    "|check=" + (check ? "1" : "0") +
                    "|budget=" + std::to_string(common.budget);
  bool pass = true;
  int rc = with_cache(common, key, [&] {
    Weight mu = pair.sum() + 2 * nu;
    FlagDecomposition flag = flag_sequence(rs, mu);
    GradedCharacter f = generalized_demazure_char(rs, pair, nu, common.budget, common.jobs);
    Json j;
    j["command"] = "gendem";
    j["series"] = common.series;
    j["rank"] = common.rank;
    j["lambda1"] = coords_json(pair.part1.c);
    j["lambda2"] = coords_json(pair.part2.c);
    j["nu"] = coords_json(nu.c);
    j["flag"] = flag_json(rs, flag);
    j["character"] = character_json(rs, f);
    j["summary"] = summary_json(rs, f, common.budget);
    if (check) {
      ConsistencyReport rep = consistency_report(rs, pair, nu, common.budget, common.jobs);
      pass = rep.pass;
      j["check"] = consistency_json(rep);
    }
    return render(j);
  });
  if (rc != 0) return rc;
  return pass ? 0 : 1;
}

int run_decompose(const CommonOptions& common, const std::string& weight_text) {
  RootSystem rs(parse_series(common.series), common.rank);
  Weight lambda(parse_coords(weight_text, common.rank, "--weight"));
  if (!rs.is_multiplicity_free(lambda))
    throw DomainError("--weight must be dominant with coordinates in {0,1}");
  InterlacingPair pair = interlace_decompose(rs, lambda);
  Json j;
  j["command"] = "decompose";
  j["series"] = common.series;
  j["rank"] = common.rank;
  j["weight"] = coords_json(lambda.c);
  j["pair"] = Json::array({coords_json(pair.part1.c), coords_json(pair.part2.c)});
  auto fr = flag_root(rs, pair);
  if (fr) {
    Json b;
    b["root"] = coords_json(fr->root.c);
    b["p"] = fr->p;
    b["pprime"] = fr->pprime;
    j["beta"] = std::move(b);
    FlagDescent d = flag_descent(rs, pair);
    j["nu0"] = coords_json(d.nu.c);
    j["next_pair"] =
        Json::array({coords_json(d.next.part1.c), coords_json(d.next.part2.c)});
  } else {
    j["beta"] = nullptr;
    j["nu0"] = nullptr;
    j["next_pair"] = nullptr;
  }
  Json gap = Json::array();
  for (const RootVec& b : gap_two_roots(rs, pair)) gap.push_back(coords_json(b.c));
  j["gap_two_roots"] = std::move(gap);
  j["flag"] = flag_json(rs, flag_sequence(rs, lambda));
  emit(render(j));
  return 0;
}

DrinfeldMonomial parse_monomial(const std::string& text) {
  DrinfeldMonomial m;
  if (text.empty() || text == "1") return m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw DomainError("--factors entries must look like node:exponent");
    try {
      int node = std::stoi(item.substr(0, colon));
      Int exp = std::stoll(item.substr(colon + 1));
      m.factors.push_back({node, exp});
    } catch (const std::exception&) {
      throw DomainError("--factors entries must look like node:exponent");
    }
  }
  if (!m.well_formed())
    throw DomainError("--factors nodes must be strictly increasing");
  return m;
}

int run_drinfeld(const CommonOptions& common, const std::string& factors_text,
                 bool with_char, const std::string& cluster_text,
                 const std::string& xi_text) {
  RootSystem rs(parse_series(common.series), common.rank);
  Json j;
  j["command"] = "drinfeld";
  j["series"] = common.series;
  j["rank"] = common.rank;

  if (!cluster_text.empty()) {
    if (xi_text.empty()) throw DomainError("--cluster requires --xi");
    std::stringstream ss(cluster_text);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw DomainError("--cluster expects i,j");
    int i = 0, jj = 0;
    try {
      i = std::stoi(a);
      jj = std::stoi(b);
    } catch (const std::exception&) {
      throw DomainError("--cluster expects integer i,j");
    }
    HeightFunction xi{parse_coords(xi_text, common.rank, "--xi")};
    RootVec alpha = rs.alpha(i, jj);
    auto ms = cluster_monomials(rs, xi, alpha);
    Json cluster;
    cluster["alpha"] = coords_json(alpha.c);
    cluster["xi"] = coords_json(xi.xi);
    Json arr = Json::array();
    for (const auto& m : ms) arr.push_back(monomial_json(m));
    cluster["monomials"] = std::move(arr);
    j["cluster"] = std::move(cluster);
    emit(render(j));
    return 0;
  }

  DrinfeldMonomial m = parse_monomial(factors_text);
  bool member = is_admissible(rs, m);
  Weight wt = monomial_weight(rs, m);
  j["factors"] = monomial_json(m)["factors"];
  j["member"] = member;
  j["wt"] = coords_json(wt.c);
  if (member) {
    auto [m1, m2] = factorize(rs, m);
    j["parts"] = Json::array({monomial_json(m1), monomial_json(m2)});
  } else {
    j["parts"] = nullptr;
  }
  if (with_char) {
    if (!member) throw DomainError("--char requires a member of the admissible family");
    GradedCharacter f = graded_limit_char(rs, m, common.budget, common.jobs);
    j["character"] = character_json(rs, f);
    j["summary"] = summary_json(rs, f, common.budget);
  }
  emit(render(j));
  return 0;
}

std::pair<int, int> parse_rank_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw DomainError("--ranks expects N or LO..HI");
  }
}

int run_verify(const CommonOptions& common, const std::string& suite,
               const std::string& ranks_text) {
  auto [lo, hi] = parse_rank_range(ranks_text);
  VerifyOptions opt;
  opt.rank_lo = lo;
  opt.rank_hi = hi;
  opt.budget = common.budget;
  opt.jobs = common.jobs;
  std::vector<VerifyResult> results = run_suite(suite, opt);
  bool pass = true;
  Json arr = Json::array();
  for (const VerifyResult& r : results) {
    pass = pass && r.pass;
    Json c;
    c["name"] = r.name;
    c["pass"] = r.pass;
    if (!r.pass) c["counterexample"] = r.detail;
    arr.push_back(std::move(c));
  }
  Json j;
  j["command"] = "verify";
  j["suite"] = suite;
  j["ranks"] = Json::array({lo, hi});
  j["pass"] = pass;
  j["cases"] = std::move(arr);
  emit(render(j));
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact graded characters of (generalized) Demazure modules"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* sub, bool cached) {
    sub->add_option("--series", common.series, "Root-system series: A or D")
        ->capture_default_str();
    sub->add_option("--rank", common.rank, "Rank of the root system")
        ->capture_default_str();
    sub->add_option("--budget", common.budget, "Sparse-term budget per character")
        ->capture_default_str();
    sub->add_option("--jobs", common.jobs, "Worker threads for independent subtasks")
        ->capture_default_str();
    if (cached)
      sub->add_flag("--no-cache", common.no_cache, "Bypass the result cache");
  };

  auto* char_cmd = app.add_subcommand("char", "Graded character of a Demazure module");
  std::string weight_text;
  Int level = 1;
  char_cmd->add_option("--level", level, "Level of the Demazure module")->required();
  char_cmd->add_option("--weight", weight_text, "Dominant weight, comma separated")
      ->required();
  add_common(char_cmd, true);

  auto* gendem_cmd =
      app.add_subcommand("gendem", "Flag decomposition and character of a generalized "
                                   "Demazure module");
  std::string l1_text, l2_text, nu_text;
  bool check = false;
  gendem_cmd->add_option("--lambda1", l1_text, "First part of the interlacing pair")
      ->required();
  gendem_cmd->add_option("--lambda2", l2_text, "Second part of the interlacing pair")
      ->required();
  gendem_cmd->add_option("--nu", nu_text, "Common dominant shift");
  gendem_cmd->add_flag("--check", check, "Run the consistency identities");
  add_common(gendem_cmd, true);

  auto* decompose_cmd =
      app.add_subcommand("decompose", "Interlacing pair, descent data and flag of a "
                                      "multiplicity-free weight");
  std::string dec_weight;
  decompose_cmd->add_option("--weight", dec_weight, "Weight with coordinates in {0,1}")
      ->required();
  add_common(decompose_cmd, false);

  auto* drinfeld_cmd =
      app.add_subcommand("drinfeld", "Admissible spectral monomials and graded limits");
  std::string factors_text, cluster_text, xi_text;
  bool with_char = false;
  drinfeld_cmd->add_option("--factors", factors_text,
                           "Monomial as node:exp,node:exp,... ('1' = identity)");
  drinfeld_cmd->add_flag("--char", with_char, "Also compute the graded limit character");
  drinfeld_cmd->add_option("--cluster", cluster_text,
                           "Interval root i,j for cluster labeling");
  drinfeld_cmd->add_option("--xi", xi_text, "Bipartite height function values");
  add_common(drinfeld_cmd, false);

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::string suite, ranks_text = "4..8";
  verify_cmd->add_option("suite", suite, "Suite name")->required();
  verify_cmd->add_option("--ranks", ranks_text, "Type D rank range, e.g. 4..8")
      ->capture_default_str();
  add_common(verify_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*char_cmd) return run_char(common, weight_text, level);
    if (*gendem_cmd) {
      if (nu_text.empty()) {
        for (int i = 0; i < common.rank; ++i) nu_text += i ? ",0" : "0";
      }
      return run_gendem(common, l1_text, l2_text, nu_text, check);
    }
    if (*decompose_cmd) return run_decompose(common, dec_weight);
    if (*drinfeld_cmd)
      return run_drinfeld(common, factors_text, with_char, cluster_text, xi_text);
    if (*verify_cmd) return run_verify(common, suite, ranks_text);
  } catch (const UnknownSuite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
