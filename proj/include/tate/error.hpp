#pragma once

#include <stdexcept>
#include <string>

namespace tate {

/// Invalid user-supplied data: malformed tables, non-multiplicative actions,
/// coordinates out of range and so on.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation was refused because it would exceed a configured size bound.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested cohomological degree lies outside the supported window.
class UnsupportedDegreeError : public InputError {
 public:
  using InputError::InputError;
};

/// Two independent computations disagreed. Always a bug in this library.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tate
