#pragma once

#include <stdexcept>
#include <string>

namespace cloak {

/// Argument outside the domain of a map or profile.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Push-forward through a map whose derivative degenerates (s = 0).
class SingularMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The two-phase mean conditions have no positive real solution.
class InfeasibleLaminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Special-function argument in the overflow region.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Medium eigenvalue is zero where the radial ODE divides by it.
class SingularMediumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive integrator step size underflowed.
class StiffnessError : public std::runtime_error {
 public:
  StiffnessError(const std::string& what, double radius)
      : std::runtime_error(what), radius_(radius) {}
  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

/// The regular solution nearly vanishes on the outer boundary: omega is at or
/// close to an interior eigenvalue of the configuration.
class NearResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cloak
