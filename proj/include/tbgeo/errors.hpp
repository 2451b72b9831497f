// errors.hpp - exception hierarchy shared by all modules.
//
// Every failure mode that callers are expected to handle gets its own type so
// tests and the CLI can react to the *kind* of failure, not to message text.
#pragma once

#include <stdexcept>
#include <string>

namespace tbgeo {

// Base class so callers can catch "anything this library throws" in one net.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation requested outside a chart's declared domain.
struct DomainError : Error {
  using Error::Error;
};

// A derivative was requested beyond the depth a field supports, or with an
// invalid differentiation setup (e.g. unsupported stencil order).
struct OrderError : Error {
  using Error::Error;
};

// Metric (or lifted metric) numerically singular: condition number above the
// configured ceiling, or not positive definite where required.
struct SingularMetricError : Error {
  using Error::Error;
};

// Tensor operands whose dimensions disagree.
struct DimensionMismatchError : Error {
  using Error::Error;
};

// Catalog lookup with a name that is not registered.
struct UnknownEntryError : Error {
  using Error::Error;
};

// Construction parameters that violate a documented precondition
// (non-Riemannian (a,b,c), perturbation amplitude out of range, ...).
struct ParamError : Error {
  using Error::Error;
};

}  // namespace tbgeo
