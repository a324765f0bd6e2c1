#pragma once

#include <stdexcept>
#include <string>

namespace ebits {

/// Malformed input: bad JSON, invalid dimensions, precondition violations on
/// user-supplied data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Schur-Weyl computation would exceed the configured amplitude budget or
/// the hard cap on the number of copies.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// POVM construction gave up after the configured number of fresh resamples.
class RetryExhausted : public std::runtime_error {
 public:
  RetryExhausted(const std::string& what, int attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

}  // namespace ebits
