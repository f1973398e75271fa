#pragma once

#include <compare>
#include <string>

namespace chronos {

/// A constant or variable occurrence. Variable names are stored without
/// the leading '?'.
struct Ref {
  enum class Kind { Constant, Variable };

  Kind kind = Kind::Constant;
  std::string name;

  static Ref constant(std::string n) { return {Kind::Constant, std::move(n)}; }
  static Ref variable(std::string n) { return {Kind::Variable, std::move(n)}; }

  bool is_variable() const { return kind == Kind::Variable; }
  std::string text() const { return is_variable() ? "?" + name : name; }

  friend auto operator<=>(const Ref&, const Ref&) = default;
};

}  // namespace chronos
