#pragma once

#include <stdexcept>
#include <string>

namespace ltorus {

// Bad user input (profile parameters out of range, malformed requests).
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// A solver produced results that violate an internal consistency contract
// (e.g. a chronological pair with no connecting root, or a non-monotone
// Busemann trace). Maps to exit code 3 in the CLI.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Requested stopping condition cannot be reached within the budget.
class UnreachableStop : public std::runtime_error {
 public:
  explicit UnreachableStop(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ltorus
