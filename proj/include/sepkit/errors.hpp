#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sepkit {

/// Operand shapes or factor structures disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which structural property of a matrix failed validation.
enum class Invariant { Shape, Hermiticity, Trace, Positivity, UnitNorm, Amplitudes };

inline std::string_view to_string(Invariant inv) {
  switch (inv) {
    case Invariant::Shape: return "shape";
    case Invariant::Hermiticity: return "hermiticity";
    case Invariant::Trace: return "trace";
    case Invariant::Positivity: return "positivity";
    case Invariant::UnitNorm: return "unit-norm";
    case Invariant::Amplitudes: return "amplitudes";
  }
  return "unknown";
}

/// A value violates the invariant of the type it is being turned into.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(Invariant inv, const std::string& what)
      : std::invalid_argument(std::string(to_string(inv)) + ": " + what), invariant_(inv) {}
  Invariant invariant() const noexcept { return invariant_; }

 private:
  Invariant invariant_;
};

/// A closed form was requested outside the parameter region where it is proven.
class RegionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called with its documented precondition violated.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative solver hit its iteration cap.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sepkit
