#include "cloak/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cloak/errors.hpp"

namespace cloak {

namespace {

double norm3(const Point3& x) { return std::hypot(x[0], x[1], x[2]); }

Point3 scaled(const Point3& x, double factor) {
  return {x[0] * factor, x[1] * factor, x[2] * factor};
}

void check_ball(double r, const char* what) {
  if (!(r <= kOuterRadius)) {
    std::ostringstream msg;
    msg << what << ": |x| = " << r << " lies outside the closed ball of radius 3";
    throw DomainError(msg.str());
  }
}

double inner_shell_scalar(const CloakGeometry& geom, InnerShellMode mode) {
  return mode == InnerShellMode::PaperLiteral ? 1.0 / geom.rho : geom.rho;
}

RadialTensor middle_shell(double r, const CloakGeometry& geom) {
  const double d = r - geom.a;
  return {cplx(d * d / (geom.b * r * r)), cplx(1.0 / geom.b)};
}

MediumSegment constant_segment(double r_inner, double r_outer, cplx eps, cplx mu) {
  const auto e = RadialTensor::isotropic(eps);
  const auto m = RadialTensor::isotropic(mu);
  return {r_inner, r_outer, [e](double) { return e; }, [m](double) { return m; },
          true};
}

}  // namespace

CloakGeometry CloakGeometry::from_rho(double rho) {
  if (!(rho > 0.0 && rho <= 0.5)) {
    std::ostringstream msg;
    msg << "rho = " << rho
        << " is outside (0, 1/2]; the two-phase laminate is only guaranteed "
           "feasible for 0 < rho <= 1/2";
    throw DomainError(msg.str());
  }
  return {rho, 2.0 * (1.0 - rho) / (2.0 - rho), 1.0 / (2.0 - rho)};
}

std::string to_string(InnerShellMode mode) {
  return mode == InnerShellMode::PaperLiteral ? "paper-literal"
                                              : "computed-pushforward";
}

InnerShellMode inner_shell_mode_from_string(const std::string& name) {
  if (name == "paper-literal" || name == "paper") return InnerShellMode::PaperLiteral;
  if (name == "computed-pushforward" || name == "pushforward")
    return InnerShellMode::ComputedPushforward;
  throw DomainError("unknown inner shell mode '" + name + "'");
}

double f_rho_radius(double r, const CloakGeometry& geom) {
  check_ball(r, "f_rho");
  if (r >= 2.0) return r;
  if (r > geom.rho) return geom.a + geom.b * r;
  return r / geom.rho;
}

double f_rho_inv_radius(double r, const CloakGeometry& geom) {
  check_ball(r, "f_rho_inv");
  if (r >= 2.0) return r;
  if (r > 1.0) return (r - geom.a) / geom.b;
  return r * geom.rho;
}

double f_rho_radius_derivative(double s, const CloakGeometry& geom) {
  check_ball(s, "f_rho'");
  if (s >= 2.0) return 1.0;
  if (s >= geom.rho) return geom.b;
  return 1.0 / geom.rho;
}

Point3 f_rho(const Point3& x, const CloakGeometry& geom) {
  const double r = norm3(x);
  check_ball(r, "f_rho");
  if (r == 0.0) return x;
  return scaled(x, f_rho_radius(r, geom) / r);
}

Point3 f_rho_inv(const Point3& y, const CloakGeometry& geom) {
  const double r = norm3(y);
  check_ball(r, "f_rho_inv");
  if (r == 0.0) return y;
  return scaled(y, f_rho_inv_radius(r, geom) / r);
}

RadialTensor pushforward_radial(const RadialMap& map, double s,
                                const RadialTensor& source) {
  if (s == 0.0) {
    throw SingularMapError(
        "push-forward evaluated at s = 0, where the blow-up map is singular");
  }
  const double slope = map.derivative(s);
  if (!(slope > 0.0)) {
    throw SingularMapError("push-forward requires a strictly increasing map");
  }
  const double target = map.value(s);
  const double ratio = s / target;
  return {source.radial * (slope * ratio * ratio), source.tangential / slope};
}

RadialTensor gamma_star(double r, const CloakGeometry& geom, InnerShellMode mode) {
  if (!(r > 0.0)) throw DomainError("gamma_star requires r > 0");
  check_ball(r, "gamma_star");
  if (r >= 2.0) return RadialTensor::isotropic(1.0);
  if (r > 1.0) return middle_shell(r, geom);
  if (r > kObjectRadius) return RadialTensor::isotropic(inner_shell_scalar(geom, mode));
  return RadialTensor::isotropic(1.0);
}

HiddenObject HiddenObject::vacuum() { return {{{kObjectRadius, 1.0, 1.0}}}; }

void HiddenObject::validate() const {
  if (shells.empty()) throw DomainError("hidden object has no shells");
  double previous = 0.0;
  for (std::size_t i = 0; i < shells.size(); ++i) {
    const auto& s = shells[i];
    std::ostringstream where;
    where << "object shell " << i << ": ";
    if (!(s.r_outer > previous))
      throw DomainError(where.str() + "radii must increase strictly from 0");
    if (s.r_outer > kObjectRadius)
      throw DomainError(where.str() + "r_outer exceeds 1/2; objects live in B_{1/2}");
    if (!(s.eps.real() > 0.0) || !(s.mu.real() > 0.0))
      throw DomainError(where.str() + "Re eps and Re mu must be positive");
    if (s.eps.imag() < 0.0)
      throw DomainError(where.str() + "Im eps must be non-negative");
    if (s.mu.imag() != 0.0) throw DomainError(where.str() + "mu must be real");
    previous = s.r_outer;
  }
  if (shells.back().r_outer != kObjectRadius)
    throw DomainError("outermost object shell must end at r = 1/2");
}

const ObjectShell& HiddenObject::shell_at(double r) const {
  for (const auto& s : shells)
    if (r <= s.r_outer) return s;
  return shells.back();
}

const MediumSegment& RadialMedium::segment_at(double r) const {
  for (const auto& seg : segments)
    if (r <= seg.r_outer) return seg;
  return segments.back();
}

std::vector<double> RadialMedium::breakpoints() const {
  std::vector<double> points{0.0};
  for (const auto& seg : segments) points.push_back(seg.r_outer);
  return points;
}

RadialMedium build_reference_media(const CloakGeometry& geom, double delta,
                                   double omega, const HiddenObject& object,
                                   InnerShellMode mode) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("delta must lie in [0, 1)");
  object.validate();

  const cplx rotation = cplx(1.0, delta) * cplx(1.0, delta);
  RadialMedium medium;
  medium.omega = omega;

  double inner = 0.0;
  for (const auto& shell : object.shells) {
    medium.segments.push_back(
        constant_segment(inner, shell.r_outer, rotation * shell.eps, shell.mu));
    inner = shell.r_outer;
  }

  const double gamma_inner = inner_shell_scalar(geom, mode);
  const cplx conductive = 1.0 + cplx(0.0, 1.0 / (geom.rho * geom.rho * omega));
  medium.segments.push_back(constant_segment(
      kObjectRadius, 1.0, rotation * conductive * gamma_inner, gamma_inner));

  medium.segments.push_back(
      {1.0, 2.0, [geom, rotation](double r) { return middle_shell(r, geom) * rotation; },
       [geom](double r) { return middle_shell(r, geom); }, false});

  medium.segments.push_back(constant_segment(2.0, kOuterRadius, rotation, 1.0));
  return medium;
}

RadialMedium pushforward_identity_medium(const CloakGeometry& geom, double omega,
                                         InnerShellMode mode) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  const double core = inner_shell_scalar(geom, mode);
  RadialMedium medium;
  medium.omega = omega;
  medium.segments.push_back(constant_segment(0.0, 1.0, core, core));
  auto middle = [geom](double r) { return middle_shell(r, geom); };
  medium.segments.push_back({1.0, 2.0, middle, middle, false});
  medium.segments.push_back(constant_segment(2.0, kOuterRadius, 1.0, 1.0));
  return medium;
}

RadialMedium vacuum_medium(double omega) {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  RadialMedium medium;
  medium.omega = omega;
  medium.segments.push_back(constant_segment(0.0, kOuterRadius, 1.0, 1.0));
  return medium;
}

}  // namespace cloak
