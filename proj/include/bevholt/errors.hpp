#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bevholt {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run or model configuration: bad grammar, wrong backend for a
/// construct, wrong arity. Messages are field-scoped where possible.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (zero growth rate, not an
/// equilibrium, zero state in a canonical coordinate, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A stated precondition does not hold; the message names the fallback
/// when there is one (e.g. the general closed form when A_j = 1).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The forbidden set was hit: a denominator A_n + B_n z_n vanished while
/// advancing the recurrence. Carries the step index n and the state z_n.
class SingularityError : public Error {
 public:
  SingularityError(std::size_t index, std::string state, const std::string& what)
      : Error(what), index_(index), state_(std::move(state)) {}

  std::size_t index() const noexcept { return index_; }
  const std::string& state() const noexcept { return state_; }

 private:
  std::size_t index_;
  std::string state_;
};

}  // namespace bevholt
