#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: malformed words, presentation mismatches, violated preconditions.
struct ValidationError : Error {
  using Error::Error;
};

// A size guard tripped (dense support, ball enumeration).  The message says
// which guard and what to do about it.
struct GuardError : Error {
  using Error::Error;
};

// to_radial applied to an element that is not constant on spheres.
struct NonRadialError : ValidationError {
  NonRadialError(const std::string& msg, std::string witness_a, std::string witness_b)
      : ValidationError(msg), witness_a(std::move(witness_a)), witness_b(std::move(witness_b)) {}
  std::string witness_a;
  std::string witness_b;
};

}  // namespace spectra
