#pragma once

#include <atomic>
#include <optional>
#include <thread>
#include <vector>

#include "demachar/decompose.hpp"
#include "demachar/demazure.hpp"
#include "demachar/interlacing.hpp"

namespace demachar {

struct ParitySplit {
  Weight half;     // floor(mu/2), entrywise
  Weight residue;  // mu - 2*half, entries in {0,1}
};

inline ParitySplit parity_split(const RootSystem& rs, const Weight& mu) {
  if (mu.rank() != rs.rank()) throw DomainError("weight rank mismatch");
  if (!rs.dominant(mu)) throw DomainError("weight must be dominant");
  ParitySplit out{Weight::zero(rs.rank()), Weight::zero(rs.rank())};
  for (int i = 0; i < rs.rank(); ++i) {
    out.half.c[i] = mu.c[i] / 2;
    out.residue.c[i] = mu.c[i] % 2;
  }
  return out;
}

/// Descent data of a dominant weight: the flag root of its parity residue and
/// the grade shift r = (part1 + half)(h_beta) - 1 contributed by one descent.
struct FlagStepData {
  RootVec beta;
  Int r = 0;
};

inline std::optional<FlagStepData> flag_step(const RootSystem& rs, const Weight& mu) {
  ParitySplit ps = parity_split(rs, mu);
  InterlacingPair pair = interlace_decompose(rs, ps.residue);
  auto fr = flag_root(rs, pair);
  if (!fr) return std::nullopt;
  Int r = rs.pairing(pair.part1 + ps.half, fr->root) - 1;
  if (r < 1) throw InternalError("flag grade shift must be positive");
  return FlagStepData{fr->root, r};
}

struct FlagStep {
  Weight mu;
  InterlacingPair pair;            // interlacing pair of res_2(mu)
  std::optional<RootVec> beta;     // absent exactly at the final step
  Int r = 0;                       // this step's shift (0 at the final step)
  Int R = 0;                       // cumulative shift, R_0 = 0
};

struct FlagDecomposition {
  std::vector<FlagStep> steps;
};

/// Iterates mu -> mu - beta until the flag root disappears.  Every
/// intermediate weight stays dominant and strictly decreases in the Q+
/// order; both are checked.
inline FlagDecomposition flag_sequence(const RootSystem& rs, const Weight& mu0) {
  FlagDecomposition out;
  Weight mu = mu0;
  Int total = 0;
  Int height_cap = rs.scaled_height(mu0) / rs.root_coord_scale() + 2;
  for (Int guard = 0; guard <= height_cap; ++guard) {
    if (!rs.dominant(mu))
      throw InternalError("flag sequence left the dominant cone");
    ParitySplit ps = parity_split(rs, mu);
    InterlacingPair pair = interlace_decompose(rs, ps.residue);
    auto step = flag_step(rs, mu);
    if (!step) {
      out.steps.push_back({mu, pair, std::nullopt, 0, total});
      return out;
    }
    out.steps.push_back({mu, pair, step->beta, step->r, total});
    total = checked_add(total, step->r);
    Weight next = mu - rs.root_to_weight(step->beta);
    if (!rs.qplus_geq(mu, next) || next == mu)
      throw InternalError("flag sequence must strictly decrease in Q+ order");
    mu = next;
  }
  throw InternalError("flag sequence exceeded its height bound");
}

namespace detail {

/// Runs fn(0..count-1) on up to `jobs` threads; exceptions are rethrown.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<std::size_t>(jobs, count);
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Graded character of the generalized Demazure module attached to an
/// interlacing pair and a dominant nu: the flag sum
/// sum_k v^{R_k} ch D(2, mu^k) over the flag sequence of mu = sum + 2 nu,
/// with cumulative shifts R_k.  Flag summands may be computed in parallel;
/// the result is exactly the sequential sum.
inline GradedCharacter generalized_demazure_char(const RootSystem& rs,
                                                 const InterlacingPair& pair,
                                                 const Weight& nu,
                                                 std::size_t budget = kDefaultTermBudget,
                                                 int jobs = 1) {
  if (!verify_interlacing(rs, pair.part1, pair.part2))
    throw DomainError("pair is not interlacing");
  if (!rs.dominant(nu)) throw DomainError("nu must be dominant");
  Weight mu = pair.sum() + 2 * nu;
  FlagDecomposition flag = flag_sequence(rs, mu);

  std::vector<std::shared_ptr<const GradedCharacter>> summands(flag.steps.size());
  detail::parallel_for(flag.steps.size(), jobs, [&](std::size_t k) {
    summands[k] = demazure_char_cached(rs, 2, flag.steps[k].mu, budget);
  });

  GradedCharacter out(rs.rank());
  for (std::size_t k = 0; k < flag.steps.size(); ++k) {
    accumulate(out, *summands[k], flag.steps[k].R);
    if (out.term_count() > budget)
      throw BudgetError("character exceeds term budget");
  }
  return out;
}

/// Direct recursive expansion of the one-step character identity
/// (shift s = (part1 + nu)(h_beta) - 1, recurse on the descent with
/// nu' = nu + descent.nu).  Used as the independent route in tests; must
/// agree exactly with the closed-form flag sum.
inline GradedCharacter generalized_demazure_char_recursive(
    const RootSystem& rs, const InterlacingPair& pair, const Weight& nu,
    std::size_t budget = kDefaultTermBudget) {
  if (!verify_interlacing(rs, pair.part1, pair.part2))
    throw DomainError("pair is not interlacing");
  Weight mu = pair.sum() + 2 * nu;
  auto base = demazure_char_cached(rs, 2, mu, budget);
  auto fr = flag_root(rs, pair);
  if (!fr) return *base;
  FlagDescent descent = flag_descent(rs, pair);
  Int shift = rs.pairing(pair.part1 + nu, fr->root) - 1;
  GradedCharacter rest = generalized_demazure_char_recursive(
      rs, descent.next, nu + descent.nu, budget);
  GradedCharacter out(rs.rank());
  accumulate(out, *base);
  accumulate(out, rest, shift);
  if (out.term_count() > budget)
    throw BudgetError("character exceeds term budget");
  return out;
}

struct CheckOutcome {
  bool pass = true;
  std::string detail;          // first violating coordinate, when applicable
};

/// Machine-checkable consistency identities for one (pair, nu) instance:
///  (a) dimension additivity across the flag,
///  (b) coefficientwise sandwich ch D(2, mu) <= gendem <= ch D(1, part1+nu)
///      * ch D(1, part2+nu),
///  (c) recursive expansion equals the closed-form flag sum exactly,
///  (d) grade-0 slice equals the classical character of mu.
struct ConsistencyReport {
  bool pass = true;
  CheckOutcome dimension_additivity;
  CheckOutcome sandwich_lower;
  CheckOutcome sandwich_upper;
  CheckOutcome recursion_closed_form;
  CheckOutcome grade0_classical;
  Int dimension = 0;
  std::size_t flag_length = 0;
};

inline std::string term_to_string(const Term& t) {
  std::string s = "(wt=[";
  for (int i = 0; i < t.weight.rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.weight.c[i]);
  }
  s += "], grade=" + std::to_string(t.grade) + ", mult=" + std::to_string(t.mult) + ")";
  return s;
}

inline ConsistencyReport consistency_report(const RootSystem& rs,
                                            const InterlacingPair& pair,
                                            const Weight& nu,
                                            std::size_t budget = kDefaultTermBudget,
                                            int jobs = 1) {
  ConsistencyReport rep;
  Weight mu = pair.sum() + 2 * nu;
  FlagDecomposition flag = flag_sequence(rs, mu);
  rep.flag_length = flag.steps.size();

  GradedCharacter gendem = generalized_demazure_char(rs, pair, nu, budget, jobs);
  rep.dimension = gendem.dimension();

  // (a) dimension additivity
  Int flag_dim = 0;
  for (const FlagStep& st : flag.steps)
    flag_dim = checked_add(flag_dim,
                           demazure_char_cached(rs, 2, st.mu, budget)->dimension());
  if (flag_dim != rep.dimension) {
    rep.dimension_additivity = {false, "flag dimension sum " + std::to_string(flag_dim) +
                                           " != " + std::to_string(rep.dimension)};
  }

  // (b) sandwich
  auto lower = demazure_char_cached(rs, 2, mu, budget);
  if (auto bad = first_exceeding(*lower, gendem)) {
    rep.sandwich_lower = {false, "lower bound exceeds character at " + term_to_string(*bad)};
  }
  GradedCharacter upper = char_product(*demazure_char_cached(rs, 1, pair.part1 + nu, budget),
                                       *demazure_char_cached(rs, 1, pair.part2 + nu, budget),
                                       budget);
  if (auto bad = first_exceeding(gendem, upper)) {
    rep.sandwich_upper = {false, "character exceeds tensor bound at " + term_to_string(*bad)};
  }

  // (c) recursion vs closed form
  GradedCharacter recursive = generalized_demazure_char_recursive(rs, pair, nu, budget);
  if (!(recursive == gendem)) {
    rep.recursion_closed_form = {false, "recursive expansion differs from flag sum"};
  }

  // (d) grade-0 slice
  GradedCharacter grade0(rs.rank());
  for (const auto& [k, m] : gendem.terms())
    if (k.grade == 0) grade0.add(k, m);
  auto classical = ClassicalCache::instance().get(rs, mu, budget);
  if (!(grade0 == *classical)) {
    rep.grade0_classical = {false, "grade-0 slice differs from the classical character"};
  }

  rep.pass = rep.dimension_additivity.pass && rep.sandwich_lower.pass &&
             rep.sandwich_upper.pass && rep.recursion_closed_form.pass &&
             rep.grade0_classical.pass;
  return rep;
}

}  // namespace demachar
