#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chronos/time.hpp"

namespace chronos {

/// A named atomic (non-temporal) individual.
struct Atom {
  std::string name;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Element of OBJS: an atom or a period.
using Object = std::variant<Atom, Period>;

std::string to_string(const Object& o);
inline bool is_period(const Object& o) { return std::holds_alternative<Period>(o); }
inline const Period* as_period(const Object& o) { return std::get_if<Period>(&o); }

using Tuple = std::vector<Object>;
using Assignment = std::map<std::string, Object>;

std::string to_string(const Tuple& t);
std::string to_string(const Assignment& g);

struct PredicateKey {
  std::string functor;
  std::size_t arity = 0;
  friend auto operator<=>(const PredicateKey&, const PredicateKey&) = default;
};

std::string to_string(const PredicateKey& k);

enum class PartitionKind { Complete, Gappy };

struct Partitioning {
  PartitionKind kind = PartitionKind::Complete;
  std::vector<Period> blocks;  // sorted by lo, pairwise disjoint

  bool contains(const Period& p) const;
  /// Index of the block starting at t, or -1.
  int block_starting_at(TimePoint t) const;

  friend bool operator==(const Partitioning&, const Partitioning&) = default;
};

/// Slices the timeline into consecutive blocks of `length` points.
Partitioning uniform_partitioning(const Timeline& timeline, int length);

struct ObjectDomain {
  std::vector<std::string> atoms;  // declaration order

  bool has_atom(const std::string& name) const;
  /// OBJS: atoms first, then every period by (lo, hi).
  std::vector<Object> objects(const Timeline& timeline) const;

  friend bool operator==(const ObjectDomain&, const ObjectDomain&) = default;
};

using PeriodExtension = std::map<Tuple, std::vector<Period>>;
using TruthExtension = std::map<Tuple, bool>;

struct TopModel {
  Timeline timeline;
  ObjectDomain domain;
  std::map<std::string, Object> consts;
  /// Maximal periods per argument tuple. Unlisted tuples denote no periods.
  std::map<PredicateKey, PeriodExtension> preds;
  /// Unlisted tuples denote F.
  std::map<PredicateKey, TruthExtension> culms;
  std::map<std::string, Partitioning> cparts;
  std::map<std::string, Partitioning> gparts;

  const std::vector<Period>& maximal_periods(const PredicateKey& key,
                                             const Tuple& args) const;
  bool culminates(const PredicateKey& key, const Tuple& args) const;
  /// Complete partitionings shadow gappy ones of the same name.
  const Partitioning* partitioning(const std::string& name) const;

  friend bool operator==(const TopModel&, const TopModel&) = default;
};

struct BotModel {
  Timeline timeline;
  ObjectDomain domain;
  std::map<std::string, Object> consts;
  std::map<PredicateKey, TruthExtension> preds;
  std::map<std::string, Partitioning> cparts;
  std::map<std::string, Partitioning> gparts;

  bool holds(const PredicateKey& key, const Tuple& args) const;
  const Partitioning* partitioning(const std::string& name) const;

  friend bool operator==(const BotModel&, const BotModel&) = default;
};

/// Functor renaming for culmination (eta1) and first-start-to-last-stop
/// (eta2) predicates.
struct EtaMapping {
  std::string culm_prefix = "cmp_";
  std::string span_prefix = "max_";

  std::string culm(const std::string& functor) const { return culm_prefix + functor; }
  std::string span(const std::string& functor) const { return span_prefix + functor; }
};

/// Returns (eta1(functor), eta2(functor)); throws EtaCollision if either
/// image is in `used`.
std::pair<std::string, std::string> eta(const std::string& functor,
                                        const std::set<std::string>& used,
                                        const EtaMapping& mapping = {});

/// The BOT model whose predicates carry an extra period argument ranging
/// over maximal periods, plus the eta1/eta2 predicates.
BotModel derive_bot_model(const TopModel& m, const EtaMapping& mapping = {});

enum class ViolationKind {
  InvalidPeriod,
  MergeablePeriods,
  ArityMismatch,
  UnknownObject,
  DuplicateAtom,
  OverlappingBlocks,
  IncompletePartitioning,
  CompleteGappyPartitioning,
  CulmWithoutPredicate,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string location;
};

std::vector<Violation> validate_model(const TopModel& m);

}  // namespace chronos
