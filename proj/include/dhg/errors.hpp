#pragma once

#include <stdexcept>
#include <string>

namespace dhg {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input data that is well-formed but violates a model or netlist invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input text (JSON syntax, wrong field types).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line = 0, long column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  long line() const { return line_; }
  long column() const { return column_; }

 private:
  long line_;
  long column_;
};

class RootFindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoSignChangeError : public RootFindError {
 public:
  using RootFindError::RootFindError;
};

class NonConvergenceError : public RootFindError {
 public:
  using RootFindError::RootFindError;
};

// Runtime guard tripped during simulation (event budget, inconsistent state).
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dhg
