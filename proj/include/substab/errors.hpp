#pragma once

#include <stdexcept>
#include <string>

namespace substab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A malformed argument: bad parameters for a system, objective or generator.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition (e.g. a dependent set
/// passed where an independent one is required).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Enumeration-based operations refuse ground sets above the configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(int ground_size, int cap, const std::string& what)
      : Error(what + ": ground size " + std::to_string(ground_size) +
              " exceeds enumeration cap " + std::to_string(cap)),
        ground_size_(ground_size),
        cap_(cap) {}

  int ground_size() const noexcept { return ground_size_; }
  int cap() const noexcept { return cap_; }

 private:
  int ground_size_;
  int cap_;
};

/// Explicit tables must define every subset; missing entries are an error.
class MissingTableEntry : public Error {
 public:
  explicit MissingTableEntry(unsigned long long mask)
      : Error("explicit table has no entry for subset mask " +
              std::to_string(mask)),
        mask_(mask) {}

  unsigned long long mask() const noexcept { return mask_; }

 private:
  unsigned long long mask_;
};

/// Stability is only defined when the optimum is unique.
class StabilityError : public Error {
 public:
  enum class Code { non_unique_optimum, zero_weight_tie };

  StabilityError(Code code, const std::string& message)
      : Error(message), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Instance / report files that fail to parse.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace substab
