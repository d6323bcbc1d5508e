#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

/// A point lies outside the validity domain of a metric or field.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// y = 0: the point is not on the slit tangent bundle.
class SlitBundleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The fundamental tensor failed to be positive definite.
class ConvexityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Degenerate flag (transverse edge parallel to the flagpole).
class FlagError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace finsler
