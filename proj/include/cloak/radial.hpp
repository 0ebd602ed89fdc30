#pragma once
// Per-mode radial reduction of the time-harmonic Maxwell system in radially
// uniaxial media, and the modal Dirichlet-to-Neumann values on r = 3.
//
// For a mode of degree l (L = l(l+1)) the Debye potential u(r) satisfies
//   TM:  ((1/eps_t) u')' + (omega^2 mu_t - L / (eps_r r^2)) u = 0
//   TE:  ((1/mu_t)  u')' + (omega^2 eps_t - L / (mu_r r^2)) u = 0
// The derivation is in docs/radial_reduction.md. The solver state is
// (u, w) with w = u'/c_t, where c = eps for TM and c = mu for TE; both
// components are continuous across material interfaces.

#include <array>
#include <string>
#include <vector>

#include "cloak/laminate.hpp"
#include "cloak/params.hpp"

namespace cloak {

enum class Polarization { TE, TM };

std::string to_string(Polarization pol);

struct Mode {
  Polarization pol;
  int l;
};

/// Debye potential u and flux w = u'/c_t at radius r.
struct ModeState {
  double r;
  cplx u;
  cplx flux;
};

/// Medium eigenvalues at one radius.
struct LocalMedium {
  cplx eps_r;
  cplx eps_t;
  cplx mu_r;
  cplx mu_t;

  static LocalMedium isotropic(cplx eps, cplx mu) { return {eps, eps, mu, mu}; }
  static LocalMedium from(const RadialTensor& eps, const RadialTensor& mu) {
    return {eps.radial, eps.tangential, mu.radial, mu.tangential};
  }
  /// Tangential eigenvalue of the coefficient inside the derivative.
  cplx curl_tangential(Polarization pol) const {
    return pol == Polarization::TM ? eps_t : mu_t;
  }
};

/// d/dr of (u, w). Throws SingularMediumError on a zero eigenvalue.
std::array<cplx, 2> radial_ode(const Mode& mode, const LocalMedium& medium,
                               double omega, double r, const std::array<cplx, 2>& y);

/// Principal square root of omega^2 eps mu, flipped into Im k >= 0.
cplx wavenumber(cplx eps, cplx mu, double omega);

/// u = psi_l(k r0), u' = k psi_l'(k r0) inside an isotropic core.
ModeState regular_seed(const Mode& mode, cplx eps, cplx mu, double omega, double r0);

/// Exact transfer through a constant isotropic shell using the
/// (psi_l, xi_l) fundamental system at k r.
ModeState propagate_analytic(const ModeState& state, const Mode& mode, cplx eps,
                             cplx mu, double r_to, double omega);

struct OdeOptions {
  double tol = 1e-10;
  double min_step_fraction = 1e-14;  // relative to the radius
  long max_steps = 2'000'000;
};

/// Adaptive Dormand-Prince 5(4) integration of radial_ode. Every breakpoint
/// of the medium between the endpoints is a step boundary. Throws
/// StiffnessError with the offending radius on step-size underflow.
ModeState propagate_ode(const ModeState& state, const Mode& mode,
                        const RadialMedium& medium, double r_to,
                        const OdeOptions& options = {});

/// Exact transfer through every shell of a stack between the endpoints.
ModeState propagate_stack(const ModeState& state, const Mode& mode,
                          const LayerStack& stack, double r_to);

/// Start radius for the regular solution: min(0.05, innermost breakpoint / 2).
double seed_radius(double innermost_breakpoint);

/// State at r = 3 of the regular solution, rescaled to unit norm. Scaling is
/// irrelevant for log-derivatives and field ratios.
ModeState outer_state(const RadialMedium& medium, const Mode& mode,
                      const OdeOptions& options = {});
ModeState outer_state(const LayerStack& stack, const Mode& mode);

/// zeta = u'(3)/u(3). Throws NearResonanceError when
/// |u(3)| < 1e-8 |(u, u')(3)|.
cplx modal_dtn(const RadialMedium& medium, const Mode& mode,
               const OdeOptions& options = {});
cplx modal_dtn(const LayerStack& stack, const Mode& mode);

/// u(r) / u(3) of the regular solution at each requested radius (sorted
/// ascending, within (0, 3]); the boundary data is held fixed at u(3) = 1.
std::vector<cplx> normalized_potential(const RadialMedium& medium, const Mode& mode,
                                       const std::vector<double>& radii,
                                       const OdeOptions& options = {});
std::vector<cplx> normalized_potential(const LayerStack& stack, const Mode& mode,
                                       const std::vector<double>& radii);

/// omega psi_l'(3 omega) / psi_l(3 omega).
cplx vacuum_dtn(const Mode& mode, double omega);

/// |psi_l(3 omega)| / |(psi_l, psi_l')(3 omega)|, the normalized distance of
/// omega from a vacuum interior resonance of degree l.
double vacuum_resonance_margin(int l, double omega);

}  // namespace cloak
