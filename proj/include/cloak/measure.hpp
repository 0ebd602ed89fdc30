#pragma once
// Modal impedance spectra of experiment configurations and the convergence
// measurements built on them.

#include <optional>
#include <string>
#include <vector>

#include "cloak/laminate.hpp"
#include "cloak/params.hpp"
#include "cloak/radial.hpp"

namespace cloak {

/// What fills B_3: the cloak construction, or plain background medium
/// ((1 + i delta)^2 on eps, 1 on mu) used as the vacuum reference.
enum class MediumKind { Cloak, Vacuum };

enum class WeightScheme { Sobolev, Uniform };

std::string to_string(WeightScheme scheme);
WeightScheme weight_scheme_from_string(const std::string& name);

struct ExperimentConfig {
  double omega = 1.0;
  double rho = 0.25;
  double delta = 0.0;
  int n = 0;  // 0: homogenized anisotropic reference
  InnerShellMode inner_shell_mode = InnerShellMode::ComputedPushforward;
  HiddenObject object = HiddenObject::vacuum();
  int l_max = 20;
  double tol = 1e-10;
  WeightScheme weights = WeightScheme::Sobolev;
  MediumKind medium = MediumKind::Cloak;

  /// Throws DomainError naming the first violated bound.
  void validate() const;
};

/// 16 hex digits identifying every field that influences a spectrum.
std::string fingerprint(const ExperimentConfig& config);

struct DtnSpectrum {
  double omega = 1.0;
  int l_max = 0;
  std::vector<cplx> te;  // index l - 1
  std::vector<cplx> tm;
  std::string fingerprint;

  cplx at(const Mode& mode) const;
};

enum class Execution { Parallel, Sequential };

/// Throws NearResonanceError if |psi_l(3 omega)| is within 1e-3 (relative)
/// of a zero for some l <= l_max.
void check_vacuum_resonance(double omega, int l_max);

/// zeta for every mode l <= l_max, both polarizations. n = 0 integrates the
/// reference media; n >= 1 uses exact per-shell transfer through the stack.
/// Solver errors carry the offending mode in their message.
DtnSpectrum spectrum(const ExperimentConfig& config,
                     Execution execution = Execution::Parallel);

struct SpectrumDistance {
  double sup;  // max over modes of w_l |zeta_1 - zeta_2|
  double l2;   // unweighted l2 aggregate
  Mode worst;
};

double mode_weight(int l, WeightScheme scheme);

SpectrumDistance distance(const DtnSpectrum& a, const DtnSpectrum& b,
                          WeightScheme scheme = WeightScheme::Sobolev);

/// max over polarizations of |zeta_a - zeta_b| at l = l_max.
double tail_defect(const DtnSpectrum& a, const DtnSpectrum& b);

enum class SweepParameter { N, Delta, Rho };

std::string to_string(SweepParameter p);
SweepParameter sweep_parameter_from_string(const std::string& name);
double parameter_value(const ExperimentConfig& config, SweepParameter p);
ExperimentConfig with_parameter(ExperimentConfig config, SweepParameter p, double value);

struct ConvergenceRow {
  SweepParameter parameter;
  double value;
  double distance_sup = 0.0;
  double distance_l2 = 0.0;
  Mode worst{Polarization::TM, 1};
  double runtime_s = 0.0;
  bool non_monotone = false;      // distance did not decrease along the sweep
  std::optional<std::string> error;  // solver failure for this row
};

/// Distances of each config's spectrum to the reference spectrum. Configs may
/// differ only in `parameter`; rows come back sorted so that the sweep moves
/// toward the limit (n ascending, delta and rho descending), and a row is
/// flagged when its distance fails to decrease from the previous row.
std::vector<ConvergenceRow> sweep(const std::vector<ExperimentConfig>& configs,
                                  SweepParameter parameter,
                                  const ExperimentConfig& reference,
                                  Execution execution = Execution::Parallel);

/// Discrete L2 gap between u / u(3) of two configurations at the given radii
/// in (2, 3). Both configurations must share the medium on [2, 3].
double annulus_field_gap(const ExperimentConfig& a, const ExperimentConfig& b,
                         const Mode& mode, const std::vector<double>& radii);

/// Evenly spaced radii strictly inside (2, 3).
std::vector<double> annulus_radii(int count);

}  // namespace cloak
