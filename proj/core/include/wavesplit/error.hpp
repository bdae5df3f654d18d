#pragma once

#include <stdexcept>
#include <string>

namespace wavesplit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called with arguments outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A pulse would reach the edge of the periodic domain within the requested
/// horizon, so the periodic grid no longer emulates the infinite line.
class WrapAroundError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Operation applied to a state of the wrong wave system.
class SystemMismatchError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace wavesplit
