#include "cloak/laminate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "cloak/errors.hpp"

namespace cloak {

namespace {

double inner_gamma(const CloakGeometry& geom, InnerShellMode mode) {
  return gamma_star(0.75, geom, mode).tangential.real();
}

// Index of the region containing the open window (lo, hi): 0 core, 1
// conductive shell, 2 laminate, 3 outer annulus; -1 when it straddles.
int region_of(double lo, double hi) {
  constexpr double kBounds[] = {0.0, kObjectRadius, 1.0, 2.0, kOuterRadius};
  constexpr double slack = 1e-12;
  for (int k = 0; k < 4; ++k)
    if (lo >= kBounds[k] - slack && hi <= kBounds[k + 1] + slack) return k;
  return -1;
}

}  // namespace

PhasePair solve_phase_pair(double s, const CloakGeometry& geom) {
  if (!(s >= 1.0 && s <= 2.0)) throw DomainError("phase pair needs 1 <= s <= 2");
  // Roots of x^2 - (2/b) x + (s-a)^2 / (b^2 s^2): sum 2/b, product equal to
  // the harmonic target times 1/b.
  const double sum = 2.0 / geom.b;
  const double d = (s - geom.a) / (geom.b * s);
  const double product = d * d;
  const double disc = sum * sum - 4.0 * product;
  if (!(disc >= 0.0)) {
    std::ostringstream msg;
    msg << "no positive phase pair at s = " << s << ", rho = " << geom.rho
        << " (discriminant " << disc << ")";
    throw InfeasibleLaminateError(msg.str());
  }
  const double alpha = 0.5 * (sum + std::sqrt(disc));
  return {alpha, product / alpha, s};
}

double gamma_cell(double s, double t, const CloakGeometry& geom, InnerShellMode mode) {
  if (!(s > 0.0 && s <= kOuterRadius)) throw DomainError("gamma_cell needs 0 < s <= 3");
  if (s > 2.0) return 1.0;
  if (s > 1.0) {
    const auto pair = solve_phase_pair(s, geom);
    const double frac = t - std::floor(t);
    return frac < 0.5 ? pair.alpha : pair.beta;
  }
  if (s > kObjectRadius) return inner_gamma(geom, mode);
  return 1.0;
}

std::size_t LayerStack::laminate_shell_count() const {
  return static_cast<std::size_t>(std::count_if(
      shells.begin(), shells.end(),
      [](const Shell& s) { return s.r_inner >= 1.0 && s.r_outer <= 2.0; }));
}

LayerStack build_stack(int n, const CloakGeometry& geom, double delta, double omega,
                       const HiddenObject& object, InnerShellMode mode,
                       PhaseOrder order) {
  if (n < 1) throw DomainError("build_stack requires n >= 1");
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("delta must lie in [0, 1)");
  object.validate();

  LayerStack stack;
  stack.n = n;
  stack.geom = geom;
  stack.delta = delta;
  stack.omega = omega;
  stack.mode = mode;

  const cplx rotation = cplx(1.0, delta) * cplx(1.0, delta);
  auto& shells = stack.shells;
  shells.reserve(object.shells.size() + 2 * static_cast<std::size_t>(n) + 2);

  double inner = 0.0;
  for (const auto& s : object.shells) {
    shells.push_back({inner, s.r_outer, rotation * s.eps, s.mu, 1.0});
    inner = s.r_outer;
  }

  const double g = inner_gamma(geom, mode);
  const cplx conductive = 1.0 + cplx(0.0, 1.0 / (geom.rho * geom.rho * omega));
  shells.push_back({kObjectRadius, 1.0, rotation * conductive * g, g, g});

  const double period = 1.0 / n;
  for (int k = 0; k < n; ++k) {
    const double lo = 1.0 + k * period;
    const double mid = 1.0 + (k + 0.5) * period;
    const double hi = (k + 1 == n) ? 2.0 : 1.0 + (k + 1) * period;
    const auto pair = solve_phase_pair(mid, geom);
    const double first = order == PhaseOrder::AlphaInner ? pair.alpha : pair.beta;
    const double second = order == PhaseOrder::AlphaInner ? pair.beta : pair.alpha;
    shells.push_back({lo, mid, rotation * first, first, first});
    shells.push_back({mid, hi, rotation * second, second, second});
  }

  shells.push_back({2.0, kOuterRadius, rotation, 1.0, 1.0});
  return stack;
}

LayerMeans means_of_stack(const LayerStack& stack, double s_lo, double s_hi) {
  if (!(s_lo < s_hi) || s_lo < 0.0 || s_hi > kOuterRadius)
    throw DomainError("means_of_stack needs 0 <= s_lo < s_hi <= 3");
  const int region = region_of(s_lo, s_hi);
  if (region < 0) throw DomainError("averaging window crosses a region boundary");
  if (region == 2 && s_hi - s_lo > 1.0 / stack.n + 1e-12)
    throw DomainError("averaging window exceeds one laminate period");

  double width = 0.0;
  double sum = 0.0;
  double inverse_sum = 0.0;
  for (const auto& shell : stack.shells) {
    const double overlap = std::min(shell.r_outer, s_hi) - std::max(shell.r_inner, s_lo);
    if (overlap <= 0.0) continue;
    width += overlap;
    sum += overlap * shell.gamma;
    inverse_sum += overlap / shell.gamma;
  }
  return {sum / width, width / inverse_sum};
}

std::string stack_to_json(const LayerStack& stack) {
  nlohmann::ordered_json shells = nlohmann::ordered_json::array();
  for (const auto& s : stack.shells) {
    shells.push_back({{"r_inner", s.r_inner},
                      {"r_outer", s.r_outer},
                      {"eps_re", s.eps.real()},
                      {"eps_im", s.eps.imag()},
                      {"mu_re", s.mu.real()},
                      {"mu_im", s.mu.imag()}});
  }
  nlohmann::ordered_json doc;
  doc["n"] = stack.n;
  doc["rho"] = stack.geom.rho;
  doc["delta"] = stack.delta;
  doc["omega"] = stack.omega;
  doc["inner_shell_mode"] = to_string(stack.mode);
  doc["shells"] = std::move(shells);
  return doc.dump(2);
}

}  // namespace cloak
