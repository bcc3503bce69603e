#pragma once

#include <stdexcept>
#include <string>

namespace acfam {

/// Incompatible matrix dimensions.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation's documented precondition does not hold for its input.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Singular matrix passed where an invertible one is required.
struct InvertibilityError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Malformed scalar text or file contents.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Generic vector sampling exhausted its retry budget.
struct SamplingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A state that valid inputs cannot reach; signals a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace acfam
