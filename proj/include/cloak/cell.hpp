#pragma once
// One-dimensional periodic cell problem in the fast radial variable:
//   (gamma (chi' + 1))' = 0 on [0, 1), chi periodic, zero mean.
// Used as an independent check of the laminate averaging formulas.

#include <functional>
#include <vector>

namespace cloak {

/// gamma(s, .) sampled at the cell centres t_j = (j + 1/2) / N. Sample j is
/// taken as the value on [j/N, (j+1)/N).
class PeriodicProfile {
 public:
  /// Throws DomainError if N < 4 or any sample is not strictly positive.
  explicit PeriodicProfile(std::vector<double> samples);

  static PeriodicProfile sample(const std::function<double(double)>& gamma,
                                std::size_t n);
  /// Phase-aligned two-phase cell: `first` on t < 1/2, `second` after. N even.
  static PeriodicProfile two_phase(double first, double second, std::size_t n);

  std::size_t size() const { return samples_.size(); }
  double spacing() const { return 1.0 / static_cast<double>(samples_.size()); }
  double operator[](std::size_t j) const { return samples_[j]; }
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::vector<double> samples_;
};

struct CellSolution {
  std::vector<double> chi;         // corrector at cell centres, zero mean
  std::vector<double> derivative;  // centred difference of chi
  std::vector<double> face_flux;   // gamma_face (chi' + 1) at face j + 1/2
};

/// Conservative finite differences with harmonic averaging of gamma at the
/// faces; chi_0 is pinned to remove the constant null space and the discrete
/// mean is subtracted afterwards.
CellSolution solve_cell_1d(const PeriodicProfile& profile);

struct HomogenizedPair {
  double underline;  // radial (harmonic) effective coefficient
  double overline;   // tangential (arithmetic) effective coefficient
};

/// underline = integral of gamma (chi_1' + 1) evaluated from the solved face
/// fluxes; overline = mean of gamma (the tangential correctors vanish).
HomogenizedPair homogenize_profile(const PeriodicProfile& profile);

/// -1 + HM / gamma_j with HM the midpoint-rule harmonic mean of the samples.
std::vector<double> chi1_closed_form(const PeriodicProfile& profile);

struct CellConvergenceRow {
  std::size_t n;
  double sup_error;
  double order;  // log2(previous error / error); NaN on the first row
};

/// Sup error of the solved corrector derivative against the closed form for
/// gamma sampled at N = 2^k, k in [k_min, k_max].
std::vector<CellConvergenceRow> cell_convergence_table(
    const std::function<double(double)>& gamma, int k_min, int k_max);

}  // namespace cloak
