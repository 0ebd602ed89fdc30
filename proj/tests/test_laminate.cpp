#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "json.hpp"

#include "cloak/errors.hpp"
#include "cloak/laminate.hpp"
#include "cloak/radial.hpp"

using namespace cloak;

TEST_SUITE("laminate") {

TEST_CASE("phase pair example") {
  const auto g = CloakGeometry::from_rho(0.25);
  const auto p = solve_phase_pair(1.5, g);
  CHECK(p.alpha == doctest::Approx(3.331139).epsilon(1e-6));
  CHECK(p.beta == doctest::Approx(0.168861).epsilon(1e-5));
  CHECK(0.5 * (p.alpha + p.beta) == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(2.0 * p.alpha * p.beta / (p.alpha + p.beta) ==
        doctest::Approx(gamma_star(1.5, g).radial.real()).epsilon(1e-13));
}

TEST_CASE("phase pairs exist and satisfy both means on a 200 x 20 grid") {
  double worst = 0.0;
  for (int j = 0; j < 20; ++j) {
    const double rho = 0.5 * (j + 1) / 20.0;
    const auto g = CloakGeometry::from_rho(rho);
    for (int i = 0; i < 200; ++i) {
      const double s = 1.0 + i / 199.0;
      const auto p = solve_phase_pair(s, g);
      REQUIRE(p.alpha > 0.0);
      REQUIRE(p.beta > 0.0);
      CHECK(p.alpha >= p.beta);
      const double am = 0.5 * (p.alpha + p.beta);
      const double hm = 2.0 * p.alpha * p.beta / (p.alpha + p.beta);
      // gamma* is evaluated on the open interval; the endpoints use one-sided limits
      const double r = std::clamp(s, std::nextafter(1.0, 2.0), std::nextafter(2.0, 1.0));
      const auto target = gamma_star(r, g);
      worst = std::max(worst, std::abs(am - target.tangential.real()) / am);
      worst = std::max(worst, std::abs(hm - target.radial.real()) / hm);
      // the arithmetic mean strictly exceeds the harmonic one
      CHECK(am > hm);
    }
  }
  CHECK(worst < 1e-12);
  CHECK_THROWS_AS(solve_phase_pair(0.9, CloakGeometry::from_rho(0.25)), DomainError);
}

TEST_CASE("gamma_cell") {
  const auto g = CloakGeometry::from_rho(0.25);
  const auto p = solve_phase_pair(1.5, g);
  CHECK(gamma_cell(1.5, 0.2, g) == p.alpha);
  CHECK(gamma_cell(1.5, 0.7, g) == p.beta);
  CHECK(gamma_cell(1.5, 3.2, g) == p.alpha);
  CHECK(gamma_cell(1.5, -0.3, g) == p.beta);
  CHECK(gamma_cell(2.5, 0.3, g) == 1.0);
  CHECK(gamma_cell(0.75, 0.3, g, InnerShellMode::PaperLiteral) == 4.0);
  CHECK(gamma_cell(0.75, 0.3, g) == 0.25);
  CHECK(gamma_cell(0.25, 0.3, g) == 1.0);
}

TEST_CASE("stack layout") {
  const auto g = CloakGeometry::from_rho(0.25);
  const auto stack = build_stack(4, g, 0.0, 1.0, HiddenObject::vacuum(),
                                 InnerShellMode::PaperLiteral);
  CHECK(stack.laminate_shell_count() == 8);
  REQUIRE(stack.shells.size() == 11);
  CHECK(stack.shells.front().r_inner == 0.0);
  CHECK(stack.shells.back().r_outer == 3.0);
  for (std::size_t k = 1; k < stack.shells.size(); ++k)
    CHECK(stack.shells[k].r_inner == stack.shells[k - 1].r_outer);
  for (const auto& s : stack.shells) {
    if (s.r_inner >= 1.0 && s.r_outer <= 2.0) CHECK(s.r_outer - s.r_inner == doctest::Approx(0.125));
  }
  // conductive shell, literal inner value
  CHECK(stack.shells[1].gamma == 4.0);
  CHECK(std::abs(stack.shells[1].eps - cplx(4.0, 64.0)) < 1e-13);

  const auto pushed = build_stack(4, g, 0.0, 1.0, HiddenObject::vacuum());
  CHECK(pushed.shells[1].gamma == 0.25);

  for (int n : {1, 2, 7, 32, 128}) {
    const auto s = build_stack(n, g, 0.05, 1.0, HiddenObject::vacuum());
    CHECK(s.laminate_shell_count() == static_cast<std::size_t>(2 * n));
    CHECK(s.shells.size() == static_cast<std::size_t>(2 * n + 3));
  }
  CHECK_THROWS_AS(build_stack(0, g, 0.0, 1.0, HiddenObject::vacuum()), DomainError);
}

TEST_CASE("stack materials") {
  const auto g = CloakGeometry::from_rho(0.25);
  const double delta = 0.1;
  const HiddenObject obj{{{0.3, cplx(5.0, 0.0), 1.0}, {0.5, cplx(2.0, 3.0), 1.0}}};
  const auto stack = build_stack(4, g, delta, 1.0, obj);
  REQUIRE(stack.shells.size() == 12);
  const cplx rot = cplx(1.0, delta) * cplx(1.0, delta);
  CHECK(std::abs(stack.shells[0].eps - rot * 5.0) < 1e-15);
  CHECK(std::abs(stack.shells[1].eps - rot * cplx(2.0, 3.0)) < 1e-14);
  for (const auto& s : stack.shells) {
    CHECK(s.eps.imag() >= 0.0);
    if (s.r_inner >= 1.0) {
      CHECK(std::abs(s.eps - rot * s.gamma) < 1e-14);
      CHECK(s.mu == cplx(s.gamma));
    }
  }
  CHECK(stack.shells.back().gamma == 1.0);
}

TEST_CASE("per-period means are exact") {
  for (double rho : {0.4, 0.25, 0.1}) {
    const auto g = CloakGeometry::from_rho(rho);
    for (int n : {1, 4, 16, 64}) {
      const auto stack = build_stack(n, g, 0.0, 1.0, HiddenObject::vacuum());
      for (int k = 0; k < n; ++k) {
        const double lo = 1.0 + static_cast<double>(k) / n;
        const double hi = 1.0 + static_cast<double>(k + 1) / n;
        const double mid = 0.5 * (lo + hi);
        const auto means = means_of_stack(stack, lo, hi);
        const auto target = gamma_star(mid, g);
        CHECK(std::abs(means.arithmetic - target.tangential.real()) <
              1e-12 * means.arithmetic);
        CHECK(std::abs(means.harmonic - target.radial.real()) < 1e-12 * means.harmonic);
      }
    }
  }
}

TEST_CASE("means away from the period midpoint converge at first order") {
  const auto g = CloakGeometry::from_rho(0.25);
  // Sample the local homogenized coefficient at the lower edge of the first
  // period: the mismatch is the slope of gamma* over half a period.
  std::vector<double> ns, errs;
  for (int n : {8, 16, 32, 64, 128}) {
    const auto stack = build_stack(n, g, 0.0, 1.0, HiddenObject::vacuum());
    const auto means = means_of_stack(stack, 1.0, 1.0 + 1.0 / n);
    errs.push_back(std::abs(means.harmonic - gamma_star(1.0 + 1e-15, g).radial.real()));
    ns.push_back(n);
  }
  const double slope = -std::log(errs.back() / errs.front()) / std::log(ns.back() / ns.front());
  CHECK(slope >= 0.9);
  CHECK(slope <= 1.1);
}

TEST_CASE("means errors") {
  const auto g = CloakGeometry::from_rho(0.25);
  const auto stack = build_stack(4, g, 0.0, 1.0, HiddenObject::vacuum());
  CHECK_THROWS_AS(means_of_stack(stack, 0.9, 1.1), DomainError);
  CHECK_THROWS_AS(means_of_stack(stack, 1.0, 1.5), DomainError);
  CHECK_THROWS_AS(means_of_stack(stack, 1.2, 1.1), DomainError);
  const auto outer = means_of_stack(stack, 2.0, 3.0);
  CHECK(outer.arithmetic == 1.0);
  CHECK(outer.harmonic == 1.0);
}

TEST_CASE("stack JSON") {
  const auto g = CloakGeometry::from_rho(0.25);
  const auto stack = build_stack(2, g, 0.05, 1.0, HiddenObject::vacuum());
  const auto doc = nlohmann::json::parse(stack_to_json(stack));
  CHECK(doc["n"] == 2);
  CHECK(doc["rho"] == 0.25);
  CHECK(doc["inner_shell_mode"] == "computed-pushforward");
  REQUIRE(doc["shells"].size() == stack.shells.size());
  for (std::size_t k = 0; k < stack.shells.size(); ++k) {
    const auto& item = doc["shells"][k];
    CHECK(item["r_inner"].get<double>() == stack.shells[k].r_inner);
    CHECK(item["eps_im"].get<double>() == stack.shells[k].eps.imag());
    CHECK(item["mu_re"].get<double>() == stack.shells[k].mu.real());
  }
}

TEST_CASE("swapping the phase order moves zeta by O(1/n)") {
  const auto g = CloakGeometry::from_rho(0.25);
  const Mode mode{Polarization::TM, 1};
  std::vector<double> gaps;
  for (int n : {8, 32, 128}) {
    const auto a = build_stack(n, g, 0.05, 1.0, HiddenObject::vacuum());
    const auto b = build_stack(n, g, 0.05, 1.0, HiddenObject::vacuum(),
                               InnerShellMode::ComputedPushforward, PhaseOrder::BetaInner);
    gaps.push_back(std::abs(modal_dtn(a, mode) - modal_dtn(b, mode)));
  }
  CHECK(gaps[0] > 0.0);
  CHECK(gaps[1] < gaps[0]);
  CHECK(gaps[2] < gaps[1]);
  const double slope = -std::log(gaps[2] / gaps[0]) / std::log(16.0);
  CHECK(slope >= 0.8);
}

}  // TEST_SUITE
