#pragma once

// TOP: the tense-and-aspect meaning representation language.

#include <concepts>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chronos/box.hpp"
#include "chronos/ref.hpp"

namespace chronos::top {

using Term = Ref;

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

struct Part {
  std::string partition;
  std::string var;
  friend bool operator==(const Part&, const Part&) = default;
};

struct Pres {
  Box<Formula> body;
  friend bool operator==(const Pres&, const Pres&) = default;
};

struct Past {
  std::string var;
  Box<Formula> body;
  friend bool operator==(const Past&, const Past&) = default;
};

struct Perf {
  std::string var;
  Box<Formula> body;
  friend bool operator==(const Perf&, const Perf&) = default;
};

struct Culm {
  Literal literal;
  friend bool operator==(const Culm&, const Culm&) = default;
};

struct At {
  Term term;
  Box<Formula> body;
  friend bool operator==(const At&, const At&) = default;
};

struct Before {
  Term term;
  Box<Formula> body;
  friend bool operator==(const Before&, const Before&) = default;
};

struct After {
  Term term;
  Box<Formula> body;
  friend bool operator==(const After&, const After&) = default;
};

struct Fills {
  Box<Formula> body;
  friend bool operator==(const Fills&, const Fills&) = default;
};

struct NtenseVar {
  std::string var;
  Box<Formula> body;
  friend bool operator==(const NtenseVar&, const NtenseVar&) = default;
};

struct NtenseNow {
  Box<Formula> body;
  friend bool operator==(const NtenseNow&, const NtenseNow&) = default;
};

struct For {
  std::string partition;  // must name a complete partitioning
  int quantity = 1;
  Box<Formula> body;
  friend bool operator==(const For&, const For&) = default;
};

struct Formula {
  using Node = std::variant<Literal, And, Part, Pres, Past, Perf, Culm, At, Before, After, Fills,
                            NtenseVar, NtenseNow, For>;
  Node node;

  template <class T>
    requires std::constructible_from<Node, T> && (!std::same_as<T, Formula>)
  Formula(T n) : node(std::move(n)) {}  // NOLINT(google-explicit-constructor)

  template <class T>
  const T* get_if() const { return std::get_if<T>(&node); }

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Throws SyntaxError or ArityError.
Formula parse(std::string_view text);

/// Canonical text; parse(print(f)) == f.
std::string print(const Formula& f);

/// Every variable occurring in f. TOP has no binders, so all are free.
std::set<std::string> free_vars(const Formula& f);

/// Variables in order of first occurrence (pre-order, left to right).
std::vector<std::string> variables_in_order(const Formula& f);

/// Literal functors with their arities; throws ArityError on conflicts.
std::set<std::pair<std::string, std::size_t>> functors(const Formula& f);

/// Partitioning names referenced by Part and For.
std::set<std::string> partition_names(const Formula& f);

/// Number of operator nesting levels; a literal or Part has depth 1.
int depth(const Formula& f);

}  // namespace chronos::top
