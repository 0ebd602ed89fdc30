#include "cloak/radial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "cloak/errors.hpp"
#include "cloak/special.hpp"

namespace cloak {

namespace {

constexpr cplx I{0.0, 1.0};

double angular_factor(int l) { return static_cast<double>(l) * (l + 1); }

void check_mode(const Mode& mode) {
  if (mode.l < 1) throw DomainError("Maxwell modes need degree l >= 1");
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

using State2 = std::array<cplx, 2>;

State2 axpy(const State2& y, double h,
            std::initializer_list<std::pair<double, const State2*>> terms) {
  State2 out = y;
  for (const auto& [coef, k] : terms) {
    out[0] += h * coef * (*k)[0];
    out[1] += h * coef * (*k)[1];
  }
  return out;
}

// Integrate over [lo, hi] inside one smooth segment.
State2 integrate_segment(const Mode& mode, const MediumSegment& seg, double omega,
                         double lo, double hi, State2 y, const OdeOptions& opt) {
  if (hi <= lo) return y;
  auto rhs = [&](double r, const State2& s) {
    return radial_ode(mode, LocalMedium::from(seg.eps(r), seg.mu(r)), omega, r, s);
  };

  double r = lo;
  double h = std::min(hi - lo, 0.02 * std::max(lo, 1e-3));
  State2 k1 = rhs(r, y);
  long steps = 0;
  while (r < hi) {
    if (++steps > opt.max_steps) {
      throw StiffnessError("radial ODE exceeded the step budget", r);
    }
    const bool last = r + h >= hi;
    if (last) h = hi - r;

    const State2 y2 = axpy(y, h, {{a21, &k1}});
    const State2 k2 = rhs(r + c2 * h, y2);
    const State2 y3 = axpy(y, h, {{a31, &k1}, {a32, &k2}});
    const State2 k3 = rhs(r + c3 * h, y3);
    const State2 y4 = axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    const State2 k4 = rhs(r + c4 * h, y4);
    const State2 y5 = axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    const State2 k5 = rhs(r + c5 * h, y5);
    const State2 y6 =
        axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    const double r_new = last ? hi : r + h;
    const State2 k6 = rhs(r_new, y6);
    const State2 y_new =
        axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State2 k7 = rhs(r_new, y_new);

    const double floor = 1e-6 * std::max({std::abs(y[0]), std::abs(y[1]),
                                          std::abs(y_new[0]), std::abs(y_new[1])});
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);
      const double scale =
          opt.tol * std::max({std::abs(y[i]), std::abs(y_new[i]), floor});
      err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err)) throw StiffnessError("radial ODE produced non-finite values", r);

    if (err <= 1.0) {
      r = r_new;
      y = y_new;
      k1 = k7;
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      h *= grow;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.25));
      if (h < opt.min_step_fraction * std::max(r, 1.0)) {
        std::ostringstream msg;
        msg << "radial ODE step size underflow at r = " << r;
        throw StiffnessError(msg.str(), r);
      }
    }
  }
  return y;
}

State2 rescaled(const State2& y, double* factor) {
  const double norm = std::hypot(std::abs(y[0]), std::abs(y[1]));
  *factor = norm > 0.0 ? 1.0 / norm : 1.0;
  return {y[0] * *factor, y[1] * *factor};
}

// Walks the regular solution outward, invoking `record` with the (possibly
// rescaled) state at every requested radius. `advance` moves a state to a
// larger radius. Returns the state at r = 3 and the accumulated rescaling.
template <typename Advance>
ModeState walk(ModeState state, const std::vector<double>& stops,
               const std::vector<double>& radii, std::vector<cplx>* recorded,
               Advance advance) {
  auto next_radius = radii.begin();
  for (double stop : stops) {
    if (stop <= state.r) continue;
    while (next_radius != radii.end() && *next_radius <= stop) {
      if (*next_radius >= state.r) {
        const ModeState at = advance(state, *next_radius);
        recorded->push_back(at.u);
      } else {
        throw DomainError("requested radius lies inside the seed region");
      }
      ++next_radius;
    }
    state = advance(state, stop);
    double factor = 1.0;
    const State2 scaled = rescaled({state.u, state.flux}, &factor);
    state.u = scaled[0];
    state.flux = scaled[1];
    for (auto& v : *recorded) v *= factor;
  }
  return state;
}

std::vector<double> stack_stops(const LayerStack& stack) {
  std::vector<double> stops;
  for (const auto& s : stack.shells) stops.push_back(s.r_outer);
  return stops;
}

cplx zeta_from(const ModeState& state, cplx curl_tangential) {
  const cplx derivative = curl_tangential * state.flux;
  const double size = std::hypot(std::abs(state.u), std::abs(derivative));
  if (std::abs(state.u) < 1e-8 * size) {
    std::ostringstream msg;
    msg << "regular solution nearly vanishes at r = 3 (|u| / |(u, u')| = "
        << std::abs(state.u) / size << "): omega is close to an interior resonance";
    throw NearResonanceError(msg.str());
  }
  return derivative / state.u;
}

void check_radii(const std::vector<double>& radii) {
  if (!std::is_sorted(radii.begin(), radii.end()))
    throw DomainError("radii must be sorted ascending");
  if (!radii.empty() && (radii.front() <= 0.0 || radii.back() > kOuterRadius))
    throw DomainError("radii must lie in (0, 3]");
}

}  // namespace

std::string to_string(Polarization pol) { return pol == Polarization::TE ? "TE" : "TM"; }

std::array<cplx, 2> radial_ode(const Mode& mode, const LocalMedium& m, double omega,
                               double r, const std::array<cplx, 2>& y) {
  const bool tm = mode.pol == Polarization::TM;
  const cplx curl_t = tm ? m.eps_t : m.mu_t;
  const cplx curl_r = tm ? m.eps_r : m.mu_r;
  const cplx other_t = tm ? m.mu_t : m.eps_t;
  if (curl_t == 0.0 || curl_r == 0.0) {
    std::ostringstream msg;
    msg << "zero medium eigenvalue at r = " << r;
    throw SingularMediumError(msg.str());
  }
  const cplx potential = omega * omega * other_t - angular_factor(mode.l) / (curl_r * r * r);
  return {curl_t * y[1], -potential * y[0]};
}

cplx wavenumber(cplx eps, cplx mu, double omega) {
  cplx k = std::sqrt(omega * omega * eps * mu);
  if (k.imag() < 0.0) k = -k;
  return k;
}

ModeState regular_seed(const Mode& mode, cplx eps, cplx mu, double omega, double r0) {
  check_mode(mode);
  if (!(r0 > 0.0)) throw DomainError("seed radius must be positive");
  const cplx k = wavenumber(eps, mu, omega);
  const auto p = psi(mode.l, k * r0);
  const cplx c = mode.pol == Polarization::TM ? eps : mu;
  return {r0, p.value, k * p.derivative / c};
}

ModeState propagate_analytic(const ModeState& state, const Mode& mode, cplx eps,
                             cplx mu, double r_to, double omega) {
  check_mode(mode);
  if (r_to == state.r) return state;
  const cplx k = wavenumber(eps, mu, omega);
  const cplx c = mode.pol == Polarization::TM ? eps : mu;
  const cplx z1 = k * state.r;
  const cplx z2 = k * r_to;
  const auto p1 = psi(mode.l, z1), x1 = xi(mode.l, z1);
  const auto p2 = psi(mode.l, z2), x2 = xi(mode.l, z2);

  // u = A psi(kr) + B xi(kr); the Wronskian psi xi' - psi' xi equals i.
  const cplx v1 = c * state.flux / k;
  const cplx A = (state.u * x1.derivative - v1 * x1.value) / I;
  const cplx B = (p1.value * v1 - p1.derivative * state.u) / I;
  const cplx u2 = A * p2.value + B * x2.value;
  const cplx v2 = A * p2.derivative + B * x2.derivative;
  return {r_to, u2, k * v2 / c};
}

ModeState propagate_ode(const ModeState& state, const Mode& mode,
                        const RadialMedium& medium, double r_to,
                        const OdeOptions& options) {
  check_mode(mode);
  if (r_to < state.r) throw DomainError("propagate_ode integrates outward only");
  if (r_to > kOuterRadius) throw DomainError("propagate_ode target beyond r = 3");
  State2 y{state.u, state.flux};
  double r = state.r;
  for (const auto& seg : medium.segments) {
    if (seg.r_outer <= r) continue;
    if (seg.r_inner >= r_to) break;
    const double hi = std::min(seg.r_outer, r_to);
    y = integrate_segment(mode, seg, medium.omega, r, hi, y, options);
    r = hi;
  }
  return {r_to, y[0], y[1]};
}

ModeState propagate_stack(const ModeState& state, const Mode& mode,
                          const LayerStack& stack, double r_to) {
  check_mode(mode);
  if (r_to < state.r) throw DomainError("propagate_stack moves outward only");
  ModeState s = state;
  for (const auto& shell : stack.shells) {
    if (shell.r_outer <= s.r) continue;
    if (shell.r_inner >= r_to) break;
    s = propagate_analytic(s, mode, shell.eps, shell.mu, std::min(shell.r_outer, r_to),
                           stack.omega);
  }
  s.r = r_to;
  return s;
}

double seed_radius(double innermost_breakpoint) {
  return std::min(0.05, 0.5 * innermost_breakpoint);
}

ModeState outer_state(const RadialMedium& medium, const Mode& mode,
                      const OdeOptions& options) {
  std::vector<cplx> unused;
  const auto& core = medium.segments.front();
  if (!core.constant_isotropic)
    throw DomainError("the innermost medium segment must be a constant isotropic core");
  const double r0 = seed_radius(core.r_outer);
  const auto seed = regular_seed(mode, core.eps(r0).tangential, core.mu(r0).tangential,
                                 medium.omega, r0);
  auto bps = medium.breakpoints();
  return walk(seed, {bps.begin() + 1, bps.end()}, {}, &unused,
              [&](const ModeState& s, double r) {
                return propagate_ode(s, mode, medium, r, options);
              });
}

ModeState outer_state(const LayerStack& stack, const Mode& mode) {
  std::vector<cplx> unused;
  const auto& core = stack.shells.front();
  const double r0 = seed_radius(core.r_outer);
  const auto seed = regular_seed(mode, core.eps, core.mu, stack.omega, r0);
  return walk(seed, stack_stops(stack), {}, &unused, [&](const ModeState& s, double r) {
    return propagate_stack(s, mode, stack, r);
  });
}

cplx modal_dtn(const RadialMedium& medium, const Mode& mode, const OdeOptions& options) {
  const auto state = outer_state(medium, mode, options);
  return zeta_from(state, LocalMedium::from(medium.eps(kOuterRadius),
                                            medium.mu(kOuterRadius))
                              .curl_tangential(mode.pol));
}

cplx modal_dtn(const LayerStack& stack, const Mode& mode) {
  const auto state = outer_state(stack, mode);
  const auto& outer = stack.shells.back();
  return zeta_from(state, mode.pol == Polarization::TM ? outer.eps : outer.mu);
}

std::vector<cplx> normalized_potential(const RadialMedium& medium, const Mode& mode,
                                       const std::vector<double>& radii,
                                       const OdeOptions& options) {
  check_radii(radii);
  const auto& core = medium.segments.front();
  if (!core.constant_isotropic)
    throw DomainError("the innermost medium segment must be a constant isotropic core");
  const double r0 = seed_radius(core.r_outer);
  const auto seed = regular_seed(mode, core.eps(r0).tangential, core.mu(r0).tangential,
                                 medium.omega, r0);
  auto bps = medium.breakpoints();
  std::vector<cplx> values;
  const auto last = walk(seed, {bps.begin() + 1, bps.end()}, radii, &values,
                         [&](const ModeState& s, double r) {
                           return propagate_ode(s, mode, medium, r, options);
                         });
  for (auto& v : values) v /= last.u;
  return values;
}

std::vector<cplx> normalized_potential(const LayerStack& stack, const Mode& mode,
                                       const std::vector<double>& radii) {
  check_radii(radii);
  const auto& core = stack.shells.front();
  const auto seed = regular_seed(mode, core.eps, core.mu, stack.omega,
                                 seed_radius(core.r_outer));
  std::vector<cplx> values;
  const auto last = walk(seed, stack_stops(stack), radii, &values,
                         [&](const ModeState& s, double r) {
                           return propagate_stack(s, mode, stack, r);
                         });
  for (auto& v : values) v /= last.u;
  return values;
}

cplx vacuum_dtn(const Mode& mode, double omega) {
  check_mode(mode);
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  const auto p = psi(mode.l, cplx(kOuterRadius * omega));
  return zeta_from({kOuterRadius, p.value, omega * p.derivative}, 1.0);
}

double vacuum_resonance_margin(int l, double omega) {
  const auto p = psi(l, cplx(kOuterRadius * omega));
  return std::abs(p.value) / std::hypot(std::abs(p.value), std::abs(p.derivative));
}

}  // namespace cloak
