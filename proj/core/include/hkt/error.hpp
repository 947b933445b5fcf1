#pragma once

#include <stdexcept>
#include <string>

namespace hkt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested family/rank combination has no classical root system (e.g. D2).
class UnsupportedFamilyRank : public Error {
 public:
  using Error::Error;
};

/// A numerical construction (orthonormalization, eigenspace, phase fixing,
/// automorphism orthogonality) failed its tolerance check.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with inputs that violate its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace hkt
