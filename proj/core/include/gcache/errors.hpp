#pragma once

#include <stdexcept>
#include <string>

namespace gcache {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent input parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The integer scheme needs L | K and L | K*gamma. Raised when that fails so
/// callers can fall back to plan_memory_sharing().
class RoutingError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// A drawn channel is too ill-conditioned for zero-forcing; redraw.
class ChannelDegenerateError : public Error {
 public:
  using Error::Error;
};

/// Desired-signal coefficient at a receiver fell below the decoding floor.
class NumericalDegeneracyError : public Error {
 public:
  using Error::Error;
};

/// A scheme invariant was observed to be violated.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcache
