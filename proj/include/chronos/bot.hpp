#pragma once

// BOT: first-order target language with point and period expressions.

#include <concepts>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chronos/box.hpp"
#include "chronos/ref.hpp"

namespace chronos::bot {

struct PeriodExpr;
struct PointExpr;

struct Beg {
  friend bool operator==(const Beg&, const Beg&) = default;
};
struct Now {
  friend bool operator==(const Now&, const Now&) = default;
};
struct End {
  friend bool operator==(const End&, const End&) = default;
};
struct Earliest {
  Box<PeriodExpr> of;
  friend bool operator==(const Earliest&, const Earliest&) = default;
};
struct Latest {
  Box<PeriodExpr> of;
  friend bool operator==(const Latest&, const Latest&) = default;
};
struct Succ {
  Box<PointExpr> of;
  friend bool operator==(const Succ&, const Succ&) = default;
};

struct PointExpr {
  using Node = std::variant<Beg, Now, End, Earliest, Latest, Succ>;
  Node node;

  template <class T>
    requires std::constructible_from<Node, T> && (!std::same_as<T, PointExpr>)
  PointExpr(T n) : node(std::move(n)) {}  // NOLINT(google-explicit-constructor)

  friend bool operator==(const PointExpr&, const PointExpr&) = default;
};

struct Interval {
  Box<PointExpr> lo, hi;
  bool lo_closed = true;
  bool hi_closed = true;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Intersect {
  Box<PeriodExpr> lhs, rhs;
  friend bool operator==(const Intersect&, const Intersect&) = default;
};

/// A constant or variable in period position. Grammar extension: the
/// translation rules need `intersect(lambda, tau)` with tau a term.
struct PeriodExpr {
  using Node = std::variant<Interval, Intersect, Ref>;
  Node node;

  template <class T>
    requires std::constructible_from<Node, T> && (!std::same_as<T, PeriodExpr>)
  PeriodExpr(T n) : node(std::move(n)) {}  // NOLINT(google-explicit-constructor)

  friend bool operator==(const PeriodExpr&, const PeriodExpr&) = default;
};

/// Argument of literals, eq, period and part. A period expression that is a
/// bare Ref is always stored as the Ref alternative.
struct Term {
  using Node = std::variant<Ref, PeriodExpr, PointExpr>;
  Node node;

  Term(Ref r) : node(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Term(PeriodExpr p);                  // NOLINT(google-explicit-constructor)
  Term(PointExpr p) : node(std::move(p)) {}  // NOLINT(google-explicit-constructor)

  friend bool operator==(const Term&, const Term&) = default;
};

/// Term in period position: Ref terms become TermRefs. Throws Error for a
/// point expression.
PeriodExpr as_period_expr(const Term& t);

struct Formula;

struct Literal {
  std::string functor;
  std::vector<Term> args;
  friend bool operator==(const Literal&, const Literal&) = default;
};
struct And {
  Box<Formula> lhs, rhs;
  friend bool operator==(const And&, const And&) = default;
};
struct Subper {
  PeriodExpr sub, super;
  friend bool operator==(const Subper&, const Subper&) = default;
};
struct Eq {
  Term lhs, rhs;
  friend bool operator==(const Eq&, const Eq&) = default;
};
struct IsPeriod {
  Term term;
  friend bool operator==(const IsPeriod&, const IsPeriod&) = default;
};
struct PartOf {
  std::string partition;
  Term term;
  friend bool operator==(const PartOf&, const PartOf&) = default;
};
struct Prec {
  PointExpr lhs, rhs;
  friend bool operator==(const Prec&, const Prec&) = default;
};

struct Formula {
  using Node = std::variant<Literal, And, Subper, Eq, IsPeriod, PartOf, Prec>;
  Node node;

  template <class T>
    requires std::constructible_from<Node, T> && (!std::same_as<T, Formula>)
  Formula(T n) : node(std::move(n)) {}  // NOLINT(google-explicit-constructor)

  template <class T>
  const T* get_if() const { return std::get_if<T>(&node); }

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Right-nested conjunction of the given atoms (at least one).
Formula conjoin(const std::vector<Formula>& conjuncts);

/// Leaves of the conjunction tree, left to right.
std::vector<Formula> conjuncts(const Formula& f);

/// Throws SyntaxError or ArityError.
Formula parse(std::string_view text);
std::string print(const Formula& f);
std::string print(const Term& t);
std::string print(const PeriodExpr& p);
std::string print(const PointExpr& p);

std::set<std::string> free_vars(const Formula& f);
std::vector<std::string> variables_in_order(const Formula& f);
std::vector<std::string> variables_in_order(const Term& t);
std::set<std::pair<std::string, std::size_t>> functors(const Formula& f);
std::set<std::string> partition_names(const Formula& f);

/// f and g are identical after a bijective renaming of variables outside
/// `fixed`; variables in `fixed` must match exactly.
bool alpha_equivalent(const Formula& f, const Formula& g, const std::set<std::string>& fixed = {});

}  // namespace chronos::bot
