#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mp2s {

// Base of every error raised by the library. The CLI maps these onto exit
// codes: input problems (InputError) are usage errors, the rest are runtime.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidParams : public InputError {
 public:
  using InputError::InputError;
};

class StateBudgetExceeded : public InputError {
 public:
  using InputError::InputError;
};

class InvalidStart : public InputError {
 public:
  using InputError::InputError;
};

class InvalidSize : public InputError {
 public:
  using InputError::InputError;
};

class NotPerfectSquare : public InputError {
 public:
  using InputError::InputError;
};

class InvalidSpec : public InputError {
 public:
  using InputError::InputError;
};

class DivisibilityError : public InputError {
 public:
  using InputError::InputError;
};

class EnumerationTooLarge : public InputError {
 public:
  using InputError::InputError;
};

class LayoutMismatch : public InputError {
 public:
  using InputError::InputError;
};

class TransitionUndefined : public Error {
 public:
  using Error::Error;
};

// delta produced a state outside the declared set or a mask of the wrong width.
class InvalidTransition : public Error {
 public:
  using Error::Error;
};

class IncompleteTrace : public Error {
 public:
  using Error::Error;
};

class Stall : public Error {
 public:
  Stall(std::uint64_t step, const std::string& what)
      : Error(what), step_(step) {}

  // Step count at which the loop was detected.
  std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t step_;
};

}  // namespace mp2s
