#pragma once

// Brute-force agreement checking between TOP denotations and the
// denotations of their BOT translations on small generated models.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chronos/model.hpp"
#include "chronos/top.hpp"
#include "chronos/top_eval.hpp"
#include "chronos/translate.hpp"

namespace chronos::equiv {

struct GenParams {
  int timeline_size = 8;  // upper bound; models draw a size up to this
  int atom_count = 3;
  int pred_count = 3;
  int max_arity = 2;
  int max_depth = 4;
  int max_periods_per_tuple = 2;
  int max_free_vars = 3;
  std::uint64_t seed = 1;
};

/// Throws Error when a bound is non-positive or beyond the enumerable range
/// (timeline 10, 4 atoms, 3 predicates, arity 2, depth 4, 2 periods).
void check_params(const GenParams& p);

/// A valid model with at least one complete and one gappy partitioning;
/// every predicate has a tuple with a non-empty extension.
TopModel gen_model(const GenParams& p);

/// A grammar-valid formula over m's vocabulary, depth <= max_depth and at
/// most max_free_vars variables. Temporal variables (binders, Part, At
/// terms) and entity variables (literal arguments) come from disjoint pools.
top::Formula gen_formula(const GenParams& p, const TopModel& m);

/// Independent seed for case `index` of a campaign.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

struct Verdict {
  bool agree = true;
  bool top_value = false;
  bool bot_value = false;
  std::optional<top::Witness> top_witness;
  std::optional<Assignment> bot_witness;
};

Verdict check_equivalence(const TopModel& m, TimePoint st, const top::Formula& f,
                          const TranslateOptions& options = {});

struct Case {
  std::uint64_t index = 0;
  TopModel model;
  TimePoint st = 0;
  top::Formula formula = top::Literal{};
};

Case make_case(const GenParams& p, std::uint64_t index);

struct Counterexample {
  std::uint64_t index = 0;
  TopModel model;
  TimePoint st = 0;
  top::Formula formula = top::Literal{};
  Verdict verdict;
};

/// Greedy shrinking: replace subformulas by their children (dropping
/// conjuncts), shorten the timeline, drop or narrow maximal periods, clear
/// culmination flags. Every accepted step still disagrees.
Counterexample shrink(const Counterexample& c, const TranslateOptions& options = {});

/// One-step shrink candidates of a formula.
std::vector<top::Formula> formula_shrinks(const top::Formula& f);

struct CampaignOptions {
  TranslateOptions translate;
  unsigned threads = 0;  // 0: hardware concurrency
  bool shrink = true;
};

struct Report {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<Counterexample> disagreements;

  /// One line per disagreement, then `cases=N disagreements=K`.
  std::string text() const;
};

Report run_campaign(const GenParams& p, std::size_t cases, const CampaignOptions& options = {});

}  // namespace chronos::equiv
