#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace toricount {

// Base class for all domain errors. kind() is a stable machine-readable tag
// used by the CLI to pick exit codes and by tests to match error categories.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define TORICOUNT_ERROR_CLASS(Name)                                   \
  class Name : public Error {                                         \
  public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  }

// Cone/fan construction and queries.
TORICOUNT_ERROR_CLASS(NotStronglyConvex);
TORICOUNT_ERROR_CLASS(NotAFan);
TORICOUNT_ERROR_CLASS(NotCartier);
TORICOUNT_ERROR_CLASS(UnknownCone);
TORICOUNT_ERROR_CLASS(OutsideSupport);
TORICOUNT_ERROR_CLASS(QuotientUndefined);

// Lattice arithmetic.
TORICOUNT_ERROR_CLASS(NotInSublattice);

// Point sets and index sets.
TORICOUNT_ERROR_CLASS(EmptySet);
TORICOUNT_ERROR_CLASS(EmptySupport);
TORICOUNT_ERROR_CLASS(EmptyIndexSet);
TORICOUNT_ERROR_CLASS(ArityMismatch);
TORICOUNT_ERROR_CLASS(TooManySystems);

// Linear-system data that fails its defining inequality, and a restriction
// requested on an orbit where the system degenerates.
TORICOUNT_ERROR_CLASS(InvariantViolation);
TORICOUNT_ERROR_CLASS(Degenerate);

// Input files.
TORICOUNT_ERROR_CLASS(ParseError);

// A broken internal postcondition: always a bug, never a data error.
TORICOUNT_ERROR_CLASS(InternalError);

#undef TORICOUNT_ERROR_CLASS

}  // namespace toricount
