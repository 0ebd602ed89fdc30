#pragma once
// Blow-up map of the near cloak, radial push-forwards and the reference
// (anisotropic, homogenized) cloak media on the ball of radius 3.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace cloak {

using cplx = std::complex<double>;
using Point3 = std::array<double, 3>;

inline constexpr double kOuterRadius = 3.0;
inline constexpr double kObjectRadius = 0.5;

/// Parameters of the blow-up map F_rho: a + b|x| on rho < |x| <= 2.
struct CloakGeometry {
  double rho;
  double a;
  double b;

  /// Throws DomainError unless 0 < rho <= 1/2.
  static CloakGeometry from_rho(double rho);
};

/// Tensor diagonal in the radial frame: `radial` on span{x}, `tangential` on
/// its orthogonal complement (multiplicity two).
struct RadialTensor {
  cplx radial;
  cplx tangential;

  static RadialTensor isotropic(cplx c) { return {c, c}; }
  RadialTensor operator*(cplx c) const { return {radial * c, tangential * c}; }
};

/// Value the homogenized tensor takes on 1/2 < |x| < 1.
///   PaperLiteral:        rho^-1 I, as printed in the construction.
///   ComputedPushforward: rho I, the push-forward of I under x -> x/rho.
enum class InnerShellMode { PaperLiteral, ComputedPushforward };

std::string to_string(InnerShellMode mode);
InnerShellMode inner_shell_mode_from_string(const std::string& name);

double f_rho_radius(double r, const CloakGeometry& geom);
double f_rho_inv_radius(double r, const CloakGeometry& geom);
/// Radial derivative of F_rho at source radius s (one-sided from above at
/// the kinks).
double f_rho_radius_derivative(double s, const CloakGeometry& geom);

Point3 f_rho(const Point3& x, const CloakGeometry& geom);
Point3 f_rho_inv(const Point3& y, const CloakGeometry& geom);

/// A monotone radial map s -> R(s) with its derivative.
struct RadialMap {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// Push-forward of a radial tensor at source radius s through x -> R(|x|) x/|x|.
/// DF has eigenvalues R'(s) (radial) and R(s)/s (tangential, twice), so
/// F_*A = DF A DF^T / det DF scales the radial eigenvalue by R' s^2 / R^2 and
/// the tangential one by 1 / R'.
RadialTensor pushforward_radial(const RadialMap& map, double s,
                                const RadialTensor& source);

/// Homogenized cloak tensor gamma* at target radius r.
RadialTensor gamma_star(double r, const CloakGeometry& geom,
                        InnerShellMode mode = InnerShellMode::ComputedPushforward);

/// One concentric layer of a hidden object (isotropic, constant).
struct ObjectShell {
  double r_outer;
  cplx eps;
  cplx mu;
};

/// Radially layered object hidden in B_{1/2}. Shells are ordered outward and
/// the last one ends at 1/2.
struct HiddenObject {
  std::vector<ObjectShell> shells;

  static HiddenObject vacuum();
  /// Throws DomainError listing the violated regularity condition.
  void validate() const;
  const ObjectShell& shell_at(double r) const;
};

/// One radial interval of a medium. Eigenvalue functions are evaluated on
/// the closed interval; `constant_isotropic` marks intervals where eps and
/// mu are constant scalars.
struct MediumSegment {
  double r_inner;
  double r_outer;
  std::function<RadialTensor(double)> eps;
  std::function<RadialTensor(double)> mu;
  bool constant_isotropic = false;
};

/// Piecewise description of radially anisotropic eps(r), mu(r) on (0, 3].
struct RadialMedium {
  std::vector<MediumSegment> segments;
  double omega = 1.0;

  const MediumSegment& segment_at(double r) const;
  std::vector<double> breakpoints() const;
  RadialTensor eps(double r) const { return segment_at(r).eps(r); }
  RadialTensor mu(double r) const { return segment_at(r).mu(r); }
};

/// Reference media mu* = phi1 gamma*, eps*_delta =
/// (1 + i delta)^2 (1 + i phi3 / omega) phi2 gamma*, with
/// phi3 = rho^-2 on 1/2 < r < 1. At delta = 0 this is the extended near-cloak
/// object.
RadialMedium build_reference_media(
    const CloakGeometry& geom, double delta, double omega,
    const HiddenObject& object,
    InnerShellMode mode = InnerShellMode::ComputedPushforward);

/// (F_rho)_* I for both eps and mu on all of B_3, including the core that
/// F_rho maps from B_{rho/2}. PaperLiteral replaces rho by rho^-1 on r < 1.
RadialMedium pushforward_identity_medium(
    const CloakGeometry& geom, double omega,
    InnerShellMode mode = InnerShellMode::ComputedPushforward);

RadialMedium vacuum_medium(double omega);

}  // namespace cloak
