#pragma once

#include <stdexcept>
#include <string>

namespace assignkit {

/// Input file could not be parsed. CLI exit code 2.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// The problem has no feasible solution. CLI exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// A size or round guard was exceeded. CLI exit code 4.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// A protocol failed to converge within its round bound. CLI exit code 5.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace assignkit
