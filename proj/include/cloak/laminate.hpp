#pragma once
// Isotropic two-phase micro-structure whose laminate limit is gamma*, and the
// finite-n concentric shell stack built from it.

#include <string>
#include <vector>

#include "cloak/params.hpp"

namespace cloak {

/// Phase amplitudes at slow radius s in [1, 2]: (alpha + beta)/2 = 1/b and
/// 2 alpha beta / (alpha + beta) = (s - a)^2 / (b s^2), alpha >= beta.
struct PhasePair {
  double alpha;
  double beta;
  double s;
};

PhasePair solve_phase_pair(double s, const CloakGeometry& geom);

/// gamma(s, t), periodic in the fast variable t with period 1. The alpha
/// phase occupies frac(t) in [0, 1/2).
double gamma_cell(double s, double t, const CloakGeometry& geom,
                  InnerShellMode mode = InnerShellMode::ComputedPushforward);

struct Shell {
  double r_inner;
  double r_outer;
  cplx eps;
  cplx mu;
  double gamma;  // micro-structure factor gamma^n on this shell
};

/// Concentric isotropic shells partitioning (0, 3].
struct LayerStack {
  std::vector<Shell> shells;
  int n = 0;
  CloakGeometry geom{};
  double delta = 0.0;
  double omega = 1.0;
  InnerShellMode mode = InnerShellMode::ComputedPushforward;

  /// Number of shells strictly inside (1, 2).
  std::size_t laminate_shell_count() const;
};

/// Which phase takes the inner half of each period. Swapped is only used to
/// probe the ordering sensitivity of the homogenized limit.
enum class PhaseOrder { AlphaInner, BetaInner };

/// gamma^n(x) = gamma(|x|, n|x|): 2n shells of width 1/(2n) tile (1, 2); both
/// shells of a period use the amplitudes at the period midpoint.
/// eps = (1 + i delta)^2 (1 + i phi3/omega) phi2 gamma^n, mu = phi1 gamma^n.
LayerStack build_stack(int n, const CloakGeometry& geom, double delta, double omega,
                       const HiddenObject& object,
                       InnerShellMode mode = InnerShellMode::ComputedPushforward,
                       PhaseOrder order = PhaseOrder::AlphaInner);

struct LayerMeans {
  double arithmetic;
  double harmonic;
};

/// Thickness-weighted means of gamma^n over [s_lo, s_hi]. The window must not
/// cross r = 1/2, 1 or 2 and, inside (1, 2), must not exceed one period.
LayerMeans means_of_stack(const LayerStack& stack, double s_lo, double s_hi);

/// JSON document {"shells":[{r_inner,r_outer,eps_re,eps_im,mu_re,mu_im},...]}.
std::string stack_to_json(const LayerStack& stack);

}  // namespace cloak
