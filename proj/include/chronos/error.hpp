#pragma once

#include <stdexcept>
#include <string>

namespace chronos {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A functor used with two different arities inside one formula.
class ArityError : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable ?" + name) {}
};

class UnknownFunctor : public Error {
 public:
  UnknownFunctor(const std::string& functor, std::size_t arity)
      : Error("unknown functor " + functor + "/" + std::to_string(arity)) {}
};

class UnknownConstant : public Error {
 public:
  explicit UnknownConstant(const std::string& name) : Error("unknown constant " + name) {}
};

class UnknownPartitioning : public Error {
 public:
  explicit UnknownPartitioning(const std::string& name)
      : Error("unknown partitioning " + name) {}
};

/// An eta image (cmp_/max_ functor) is already in use.
class EtaCollision : public Error {
 public:
  explicit EtaCollision(const std::string& name)
      : Error("eta image " + name + " collides with an existing functor") {}
};

class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace chronos
