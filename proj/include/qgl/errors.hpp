#pragma once

#include <stdexcept>
#include <string>

namespace qgl {

// Shape disagreement between operands (dimensions, degrees, grids).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// An operation was called on an expansion with the wrong role
// (e.g. evaluating a distribution at a point).
class RoleError : public std::invalid_argument {
 public:
  explicit RoleError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the domain of an operation (negative time, bad step, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed external input (JSON documents, CLI configuration).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical refinement loop hit its cap without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A least-squares reconstruction had a rank-deficient design.
class SingularFitError : public std::runtime_error {
 public:
  explicit SingularFitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qgl
