#include <cmath>
#include <random>

#include "doctest.h"

#include "cloak/errors.hpp"
#include "cloak/measure.hpp"

using namespace cloak;

namespace {

ExperimentConfig cloak_config(double rho, double delta, int n, int l_max = 10) {
  ExperimentConfig c;
  c.rho = rho;
  c.delta = delta;
  c.n = n;
  c.l_max = l_max;
  return c;
}

DtnSpectrum random_spectrum(std::mt19937_64& rng, int l_max) {
  std::normal_distribution<double> g(0.0, 1.0);
  DtnSpectrum s;
  s.l_max = l_max;
  for (int l = 1; l <= l_max; ++l) {
    s.te.emplace_back(g(rng), g(rng));
    s.tm.emplace_back(g(rng), g(rng));
  }
  return s;
}

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("vacuum configuration reproduces the closed forms") {
  ExperimentConfig c;
  c.medium = MediumKind::Vacuum;
  c.l_max = 20;
  const auto s = spectrum(c);
  for (int l = 1; l <= 20; ++l)
    for (auto pol : {Polarization::TE, Polarization::TM}) {
      const cplx closed = vacuum_dtn({pol, l}, 1.0);
      CHECK(std::abs(s.at({pol, l}) - closed) < 1e-9 * std::max(1.0, std::abs(closed)));
    }
}

TEST_CASE("reference spectrum is finite") {
  const auto s = spectrum(cloak_config(0.25, 0.0, 0, 20));
  for (int l = 1; l <= 20; ++l) {
    CHECK(std::isfinite(s.at({Polarization::TE, l}).real()));
    CHECK(std::isfinite(s.at({Polarization::TM, l}).imag()));
  }
  CHECK(s.fingerprint.size() == 16);
}

TEST_CASE("stack spectrum approaches the reference") {
  const auto ref = spectrum(cloak_config(0.25, 0.05, 0));
  const double d32 = distance(spectrum(cloak_config(0.25, 0.05, 32)), ref).sup;
  const double d64 = distance(spectrum(cloak_config(0.25, 0.05, 64)), ref).sup;
  CHECK(d64 <= 0.7 * d32);
}

TEST_CASE("distance is a metric") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_spectrum(rng, 8), b = random_spectrum(rng, 8),
               c = random_spectrum(rng, 8);
    CHECK(distance(a, a).sup == 0.0);
    CHECK(distance(a, a).l2 == 0.0);
    CHECK(distance(a, b).sup == distance(b, a).sup);
    CHECK(distance(a, c).sup <= distance(a, b).sup + distance(b, c).sup + 1e-15);
    CHECK(distance(a, c).l2 <= distance(a, b).l2 + distance(b, c).l2 + 1e-15);
  }
  auto a = random_spectrum(rng, 8);
  auto b = a;
  b.tm[2] += 1.0;
  const auto d = distance(a, b);
  CHECK(d.sup == doctest::Approx(1.0 / std::sqrt(13.0)).epsilon(1e-14));
  CHECK(d.worst.l == 3);
  CHECK(d.worst.pol == Polarization::TM);
  CHECK(distance(a, b, WeightScheme::Uniform).sup == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(distance(a, random_spectrum(rng, 9)), DomainError);
  b.omega = 2.0;
  CHECK_THROWS_AS(distance(a, b), DomainError);
}

TEST_CASE("weights") {
  CHECK(mode_weight(1, WeightScheme::Sobolev) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(mode_weight(4, WeightScheme::Sobolev) == doctest::Approx(1.0 / std::sqrt(21.0)));
  CHECK(mode_weight(4, WeightScheme::Uniform) == 1.0);
  CHECK(weight_scheme_from_string(to_string(WeightScheme::Uniform)) == WeightScheme::Uniform);
}

TEST_CASE("sequential spectra are bitwise deterministic") {
  const auto c = cloak_config(0.25, 0.05, 0, 8);
  const auto a = spectrum(c, Execution::Sequential);
  const auto b = spectrum(c, Execution::Sequential);
  const auto p = spectrum(c, Execution::Parallel);
  for (int l = 1; l <= 8; ++l)
    for (auto pol : {Polarization::TE, Polarization::TM}) {
      CHECK(a.at({pol, l}) == b.at({pol, l}));
      CHECK(a.at({pol, l}) == p.at({pol, l}));
    }
  CHECK(a.fingerprint == b.fingerprint);
}

TEST_CASE("fingerprints separate configurations") {
  const auto base = cloak_config(0.25, 0.05, 8);
  auto other = base;
  other.object = HiddenObject{{{0.5, cplx(5.0, 0.0), 1.0}}};
  auto literal = base;
  literal.inner_shell_mode = InnerShellMode::PaperLiteral;
  CHECK(fingerprint(base) == fingerprint(cloak_config(0.25, 0.05, 8)));
  CHECK(fingerprint(base) != fingerprint(other));
  CHECK(fingerprint(base) != fingerprint(literal));
  CHECK(fingerprint(base) != fingerprint(cloak_config(0.25, 0.05, 9)));
}

TEST_CASE("configuration bounds") {
  CHECK_THROWS_AS(cloak_config(0.6, 0.0, 0).validate(), DomainError);
  CHECK_THROWS_AS(cloak_config(0.0, 0.0, 0).validate(), DomainError);
  CHECK_THROWS_AS(cloak_config(0.25, -0.1, 0).validate(), DomainError);
  CHECK_THROWS_AS(cloak_config(0.25, 0.6, 0).validate(), DomainError);
  CHECK_THROWS_AS(cloak_config(0.25, 0.0, 0, 65).validate(), DomainError);
  CHECK_THROWS_AS(cloak_config(0.25, 0.0, -1).validate(), DomainError);
  CHECK_NOTHROW(cloak_config(0.5, 0.5, 0, 64).validate());
}

TEST_CASE("sweep ordering and flags") {
  std::vector<ExperimentConfig> configs;
  for (int n : {16, 4, 32, 8}) configs.push_back(cloak_config(0.25, 0.05, n, 6));
  const auto rows = sweep(configs, SweepParameter::N, cloak_config(0.25, 0.05, 0, 6));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].value == 4);
  CHECK(rows[1].value == 8);
  CHECK(rows[2].value == 16);
  CHECK(rows[3].value == 32);
  for (const auto& row : rows) {
    CHECK_FALSE(row.error);
    CHECK_FALSE(row.non_monotone);
    CHECK(row.distance_sup > 0.0);
    CHECK(row.runtime_s >= 0.0);
  }

  // against the n = 8 stack itself, the n = 16 row moves away again
  const auto flagged = sweep({cloak_config(0.25, 0.05, 4, 6), cloak_config(0.25, 0.05, 8, 6),
                              cloak_config(0.25, 0.05, 16, 6)},
                             SweepParameter::N, cloak_config(0.25, 0.05, 8, 6));
  CHECK(flagged[1].distance_sup == 0.0);
  CHECK(flagged[2].non_monotone);

  std::vector<ExperimentConfig> deltas;
  for (double d : {0.0125, 0.1, 0.05}) deltas.push_back(cloak_config(0.25, d, 0, 4));
  const auto drows = sweep(deltas, SweepParameter::Delta, cloak_config(0.25, 0.0, 0, 4));
  CHECK(drows[0].value == 0.1);
  CHECK(drows[2].value == 0.0125);

  auto mixed = configs;
  mixed[1].rho = 0.2;
  CHECK_THROWS_AS(sweep(mixed, SweepParameter::N, cloak_config(0.25, 0.05, 0, 6)), DomainError);
}

TEST_CASE("a failing row does not abort the sweep") {
  // An unattainable tolerance only affects the integrated n = 0 row; stacks
  // use exact per-shell transfer.
  std::vector<ExperimentConfig> configs;
  for (int n : {0, 8, 16}) {
    auto c = cloak_config(0.25, 0.05, n, 4);
    c.tol = 1e-300;
    configs.push_back(c);
  }
  const auto rows = sweep(configs, SweepParameter::N, cloak_config(0.25, 0.05, 32, 4));
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].error);
  CHECK(rows[0].error->find("l=") != std::string::npos);
  CHECK_FALSE(rows[1].error);
  CHECK_FALSE(rows[2].error);
  CHECK(rows[2].distance_sup < rows[1].distance_sup);
  CHECK_FALSE(rows[1].non_monotone);
}

TEST_CASE("annulus field gap") {
  const Mode tm1{Polarization::TM, 1};
  const auto radii = annulus_radii(16);
  CHECK(radii.front() > 2.0);
  CHECK(radii.back() < 3.0);
  const auto ref = cloak_config(0.25, 0.05, 0);
  CHECK(annulus_field_gap(ref, ref, tm1, radii) == 0.0);
  const double g16 = annulus_field_gap(cloak_config(0.25, 0.05, 16), ref, tm1, radii);
  const double g64 = annulus_field_gap(cloak_config(0.25, 0.05, 64), ref, tm1, radii);
  CHECK(g64 < g16);
  CHECK_THROWS_AS(annulus_field_gap(ref, cloak_config(0.25, 0.1, 0), tm1, radii), DomainError);
  CHECK_THROWS_AS(annulus_field_gap(ref, ref, tm1, {1.5}), DomainError);

  // background loss moves the spectrum linearly in delta
  ExperimentConfig vac;
  vac.medium = MediumKind::Vacuum;
  std::vector<double> gaps;
  for (double d : {0.05, 0.025, 0.0125}) {
    auto lossy = vac;
    lossy.delta = d;
    gaps.push_back(std::abs(spectrum(lossy).at(tm1) - spectrum(vac).at(tm1)));
  }
  CHECK(gaps[0] / gaps[1] == doctest::Approx(2.0).epsilon(0.1));
  CHECK(gaps[1] / gaps[2] == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("cloak performance does not depend on the hidden object") {
  const std::vector<HiddenObject> objects{
      HiddenObject::vacuum(), HiddenObject{{{0.5, cplx(5.0, 0.0), 1.0}}},
      HiddenObject{{{0.5, cplx(2.0, 3.0), 1.0}}}};
  ExperimentConfig vac;
  vac.medium = MediumKind::Vacuum;
  vac.l_max = 8;
  const auto target = spectrum(vac);
  for (double rho : {0.2, 0.1, 0.05}) {
    std::vector<double> d;
    for (const auto& obj : objects) {
      auto c = cloak_config(rho, 0.0, 0, 8);
      c.object = obj;
      d.push_back(distance(spectrum(c), target).sup);
    }
    const double largest = *std::max_element(d.begin(), d.end());
    for (double x : d)
      for (double y : d) CHECK(std::abs(x - y) < largest);
  }
}

TEST_CASE("vacuum resonance guard") {
  CHECK_NOTHROW(check_vacuum_resonance(1.0, 20));
  CHECK_NOTHROW(check_vacuum_resonance(1.0, 64));
  CHECK_THROWS_AS(check_vacuum_resonance(4.4934094579 / 3.0, 4), NearResonanceError);
  ExperimentConfig c;
  c.omega = 4.4934094579 / 3.0;
  c.l_max = 4;
  CHECK_THROWS_AS(spectrum(c), NearResonanceError);
}

TEST_CASE("tail defect") {
  const auto ref = spectrum(cloak_config(0.25, 0.05, 0, 20));
  const auto s = spectrum(cloak_config(0.25, 0.05, 16, 20));
  const double tail = tail_defect(s, ref);
  CHECK(tail >= 0.0);
  CHECK(tail < distance(s, ref, WeightScheme::Uniform).sup);
}

}  // TEST_SUITE
