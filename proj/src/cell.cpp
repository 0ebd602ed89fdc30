#include "cloak/cell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cloak/errors.hpp"

namespace cloak {

namespace {

double face_gamma(const PeriodicProfile& p, std::size_t j) {
  const double left = p[j];
  const double right = p[(j + 1) % p.size()];
  return 2.0 * left * right / (left + right);
}

}  // namespace

PeriodicProfile::PeriodicProfile(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 4) throw DomainError("periodic profile needs N >= 4 samples");
  for (double v : samples_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "periodic profile sample " << v << " is not a positive finite value";
      throw DomainError(msg.str());
    }
  }
}

PeriodicProfile PeriodicProfile::sample(const std::function<double(double)>& gamma,
                                        std::size_t n) {
  std::vector<double> values(n);
  for (std::size_t j = 0; j < n; ++j)
    values[j] = gamma((static_cast<double>(j) + 0.5) / static_cast<double>(n));
  return PeriodicProfile(std::move(values));
}

PeriodicProfile PeriodicProfile::two_phase(double first, double second, std::size_t n) {
  if (n % 2 != 0) throw DomainError("a phase-aligned two-phase grid needs even N");
  std::vector<double> values(n, second);
  std::fill(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n / 2), first);
  return PeriodicProfile(std::move(values));
}

CellSolution solve_cell_1d(const PeriodicProfile& profile) {
  const std::size_t n = profile.size();
  const double h = profile.spacing();

  // Extended precision keeps the per-face fluxes exact to round-off; the flux
  // in a stiff phase is a difference of nearly equal terms.
  using real = long double;
  std::vector<real> g(n);  // g[j] lives on the face between cells j and j+1
  for (std::size_t j = 0; j < n; ++j) g[j] = face_gamma(profile, j);

  // Row j (1 <= j < n):
  //   g[j] (chi[j+1] - chi[j]) - g[j-1] (chi[j] - chi[j-1]) = -h (g[j] - g[j-1])
  // with chi[0] = chi[n] = 0 pinned. Thomas algorithm on unknowns 1..n-1.
  const std::size_t m = n - 1;
  std::vector<real> lower(m), diag(m), upper(m), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = k + 1;
    lower[k] = g[j - 1];
    upper[k] = g[j];
    diag[k] = -(g[j] + g[j - 1]);
    rhs[k] = -h * (g[j] - g[j - 1]);
  }
  for (std::size_t k = 1; k < m; ++k) {
    if (diag[k - 1] == 0.0L) throw std::logic_error("singular cell-problem system");
    const real w = lower[k] / diag[k - 1];
    diag[k] -= w * upper[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  if (std::abs(diag[m - 1]) < std::numeric_limits<double>::min())
    throw std::logic_error("singular cell-problem system");

  std::vector<real> chi(n, 0.0L);
  chi[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t k = m - 1; k-- > 0;)
    chi[k + 1] = (rhs[k] - upper[k] * chi[k + 2]) / diag[k];

  const real mean = std::accumulate(chi.begin(), chi.end(), 0.0L) / n;
  for (real& c : chi) c -= mean;

  CellSolution out;
  out.chi.resize(n);
  out.derivative.resize(n);
  out.face_flux.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const real next = chi[(j + 1) % n];
    const real prev = chi[(j + n - 1) % n];
    out.chi[j] = static_cast<double>(chi[j]);
    out.derivative[j] = static_cast<double>((next - prev) / (2.0L * h));
    out.face_flux[j] = static_cast<double>(g[j] * ((next - chi[j]) / h + 1.0L));
  }
  return out;
}

HomogenizedPair homogenize_profile(const PeriodicProfile& profile) {
  const auto solution = solve_cell_1d(profile);
  const double n = static_cast<double>(profile.size());
  const double underline =
      std::accumulate(solution.face_flux.begin(), solution.face_flux.end(), 0.0) / n;
  const auto& s = profile.samples();
  const double overline =
      static_cast<double>(std::accumulate(s.begin(), s.end(), 0.0L) / n);
  return {underline, overline};
}

std::vector<double> chi1_closed_form(const PeriodicProfile& profile) {
  const auto& s = profile.samples();
  double inverse_mean = 0.0;
  for (double v : s) inverse_mean += 1.0 / v;
  inverse_mean /= static_cast<double>(s.size());
  const double harmonic = 1.0 / inverse_mean;

  std::vector<double> out(s.size());
  std::transform(s.begin(), s.end(), out.begin(),
                 [harmonic](double v) { return -1.0 + harmonic / v; });
  return out;
}

std::vector<CellConvergenceRow> cell_convergence_table(
    const std::function<double(double)>& gamma, int k_min, int k_max) {
  std::vector<CellConvergenceRow> rows;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int k = k_min; k <= k_max; ++k) {
    const std::size_t n = std::size_t{1} << k;
    const auto profile = PeriodicProfile::sample(gamma, n);
    const auto solved = solve_cell_1d(profile).derivative;
    const auto exact = chi1_closed_form(profile);
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(solved[j] - exact[j]));
    rows.push_back({n, err, std::log2(previous / err)});
    previous = err;
  }
  return rows;
}

}  // namespace cloak
