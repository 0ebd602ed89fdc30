#include "cloak/measure.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>
#include <variant>

#include "cloak/errors.hpp"

namespace cloak {

namespace {

using Clock = std::chrono::steady_clock;

// Runs task(i) for i in [0, count). Results are written by index, so the
// outcome does not depend on scheduling.
template <typename Task>
void for_each_index(std::size_t count, Execution execution, Task task) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      execution == Execution::Sequential ? 1 : std::min<std::size_t>(hw, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) task(i);
      } catch (...) {
        failures[w] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
}

RadialMedium background_medium(double delta, double omega) {
  const cplx rotation = cplx(1.0, delta) * cplx(1.0, delta);
  RadialMedium medium;
  medium.omega = omega;
  const auto eps = RadialTensor::isotropic(rotation);
  const auto mu = RadialTensor::isotropic(1.0);
  medium.segments.push_back({0.0, kOuterRadius, [eps](double) { return eps; },
                             [mu](double) { return mu; }, true});
  return medium;
}

// The solvable description of a configuration: a medium for the ODE path or
// a shell stack for the exact per-shell path.
using Realization = std::variant<RadialMedium, LayerStack>;

Realization realize(const ExperimentConfig& c) {
  c.validate();
  if (c.medium == MediumKind::Vacuum) return background_medium(c.delta, c.omega);
  const auto geom = CloakGeometry::from_rho(c.rho);
  if (c.n == 0)
    return build_reference_media(geom, c.delta, c.omega, c.object, c.inner_shell_mode);
  return build_stack(c.n, geom, c.delta, c.omega, c.object, c.inner_shell_mode);
}

cplx solve_mode(const Realization& what, const Mode& mode, double tol) {
  if (const auto* medium = std::get_if<RadialMedium>(&what)) {
    OdeOptions options;
    options.tol = tol;
    return modal_dtn(*medium, mode, options);
  }
  return modal_dtn(std::get<LayerStack>(what), mode);
}

std::vector<cplx> potentials(const Realization& what, const Mode& mode,
                             const std::vector<double>& radii, double tol) {
  if (const auto* medium = std::get_if<RadialMedium>(&what)) {
    OdeOptions options;
    options.tol = tol;
    return normalized_potential(*medium, mode, radii, options);
  }
  return normalized_potential(std::get<LayerStack>(what), mode, radii);
}

template <typename E>
[[noreturn]] void rethrow_with_mode(const E& e, const Mode& mode) {
  std::ostringstream msg;
  msg << "mode " << to_string(mode.pol) << " l=" << mode.l << ": " << e.what();
  throw E(msg.str());
}

void append_hex(std::uint64_t& hash, const std::string& text) {
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
}

}  // namespace

std::string to_string(WeightScheme scheme) {
  return scheme == WeightScheme::Sobolev ? "sobolev" : "uniform";
}

WeightScheme weight_scheme_from_string(const std::string& name) {
  if (name == "sobolev") return WeightScheme::Sobolev;
  if (name == "uniform") return WeightScheme::Uniform;
  throw DomainError("unknown weight scheme '" + name + "'");
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw DomainError(what); };
  if (!(omega > 0.0) || !std::isfinite(omega)) fail("omega must be positive");
  if (!(rho > 0.0 && rho <= 0.5)) fail("rho must lie in (0, 1/2]");
  if (!(delta >= 0.0 && delta <= 0.5)) fail("delta must lie in [0, 0.5]");
  if (n < 0) fail("n must be non-negative");
  if (l_max < 1 || l_max > 64) fail("l_max must lie in [1, 64]");
  if (!(tol > 0.0 && tol < 1.0)) fail("tol must lie in (0, 1)");
  object.validate();
}

std::string fingerprint(const ExperimentConfig& c) {
  std::ostringstream canon;
  canon << std::setprecision(17) << "omega=" << c.omega << ";rho=" << c.rho
        << ";delta=" << c.delta << ";n=" << c.n
        << ";inner=" << to_string(c.inner_shell_mode) << ";l_max=" << c.l_max
        << ";tol=" << c.tol << ";weights=" << to_string(c.weights)
        << ";medium=" << (c.medium == MediumKind::Cloak ? "cloak" : "vacuum");
  for (const auto& s : c.object.shells)
    canon << ";shell=" << s.r_outer << ',' << s.eps.real() << ',' << s.eps.imag() << ','
          << s.mu.real() << ',' << s.mu.imag();
  std::uint64_t hash = 14695981039346656037ull;
  append_hex(hash, canon.str());
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

cplx DtnSpectrum::at(const Mode& mode) const {
  const auto& v = mode.pol == Polarization::TE ? te : tm;
  if (mode.l < 1 || mode.l > static_cast<int>(v.size()))
    throw DomainError("mode degree outside the spectrum");
  return v[static_cast<std::size_t>(mode.l - 1)];
}

void check_vacuum_resonance(double omega, int l_max) {
  for (int l = 1; l <= l_max; ++l) {
    const double margin = vacuum_resonance_margin(l, omega);
    if (margin < 1e-3) {
      std::ostringstream msg;
      msg << "omega = " << omega << " is too close to a vacuum interior resonance "
          << "(l=" << l << ", |psi_l(3 omega)| relative margin " << margin << ")";
      throw NearResonanceError(msg.str());
    }
  }
}

DtnSpectrum spectrum(const ExperimentConfig& config, Execution execution) {
  check_vacuum_resonance(config.omega, config.l_max);
  const auto what = realize(config);

  DtnSpectrum out;
  out.omega = config.omega;
  out.l_max = config.l_max;
  out.te.resize(static_cast<std::size_t>(config.l_max));
  out.tm.resize(static_cast<std::size_t>(config.l_max));
  out.fingerprint = fingerprint(config);

  const std::size_t count = 2 * static_cast<std::size_t>(config.l_max);
  for_each_index(count, execution, [&](std::size_t i) {
    const Mode mode{i % 2 == 0 ? Polarization::TE : Polarization::TM,
                    static_cast<int>(i / 2) + 1};
    try {
      const cplx zeta = solve_mode(what, mode, config.tol);
      (mode.pol == Polarization::TE ? out.te : out.tm)[i / 2] = zeta;
    } catch (const NearResonanceError& e) {
      rethrow_with_mode(e, mode);
    } catch (const StiffnessError& e) {
      std::ostringstream msg;
      msg << "mode " << to_string(mode.pol) << " l=" << mode.l << ": " << e.what();
      throw StiffnessError(msg.str(), e.radius());
    } catch (const RangeError& e) {
      rethrow_with_mode(e, mode);
    }
  });
  return out;
}

double mode_weight(int l, WeightScheme scheme) {
  if (scheme == WeightScheme::Uniform) return 1.0;
  return 1.0 / std::sqrt(1.0 + static_cast<double>(l) * (l + 1));
}

SpectrumDistance distance(const DtnSpectrum& a, const DtnSpectrum& b,
                          WeightScheme scheme) {
  if (a.l_max != b.l_max || a.te.size() != b.te.size() || a.tm.size() != b.tm.size())
    throw DomainError("spectra cover different mode sets");
  if (a.omega != b.omega) throw DomainError("spectra computed at different omega");
  SpectrumDistance d{0.0, 0.0, {Polarization::TM, 1}};
  double sum = 0.0;
  for (int l = 1; l <= a.l_max; ++l) {
    for (auto pol : {Polarization::TE, Polarization::TM}) {
      const Mode mode{pol, l};
      const double gap = std::abs(a.at(mode) - b.at(mode));
      sum += gap * gap;
      const double weighted = mode_weight(l, scheme) * gap;
      if (weighted > d.sup) {
        d.sup = weighted;
        d.worst = mode;
      }
    }
  }
  d.l2 = std::sqrt(sum);
  return d;
}

double tail_defect(const DtnSpectrum& a, const DtnSpectrum& b) {
  if (a.l_max != b.l_max) throw DomainError("spectra cover different mode sets");
  const int l = a.l_max;
  return std::max(std::abs(a.at({Polarization::TE, l}) - b.at({Polarization::TE, l})),
                  std::abs(a.at({Polarization::TM, l}) - b.at({Polarization::TM, l})));
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::N: return "n";
    case SweepParameter::Delta: return "delta";
    case SweepParameter::Rho: return "rho";
  }
  return "?";
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
  if (name == "n") return SweepParameter::N;
  if (name == "delta") return SweepParameter::Delta;
  if (name == "rho") return SweepParameter::Rho;
  throw DomainError("unknown sweep parameter '" + name + "' (expected n, delta or rho)");
}

double parameter_value(const ExperimentConfig& c, SweepParameter p) {
  switch (p) {
    case SweepParameter::N: return c.n;
    case SweepParameter::Delta: return c.delta;
    case SweepParameter::Rho: return c.rho;
  }
  return 0.0;
}

ExperimentConfig with_parameter(ExperimentConfig c, SweepParameter p, double value) {
  switch (p) {
    case SweepParameter::N:
      if (value < 0.0 || value != std::floor(value))
        throw DomainError("n values must be non-negative integers");
      c.n = static_cast<int>(value);
      break;
    case SweepParameter::Delta: c.delta = value; break;
    case SweepParameter::Rho: c.rho = value; break;
  }
  return c;
}

std::vector<ConvergenceRow> sweep(const std::vector<ExperimentConfig>& configs,
                                  SweepParameter parameter,
                                  const ExperimentConfig& reference,
                                  Execution execution) {
  if (configs.empty()) return {};
  const auto& base = configs.front();
  for (const auto& c : configs) {
    const auto normalized = with_parameter(c, parameter, parameter_value(base, parameter));
    if (fingerprint(normalized) != fingerprint(base))
      throw DomainError("sweep configs differ in more than the '" + to_string(parameter) +
                        "' parameter");
  }

  auto ordered = configs;
  const bool ascending = parameter == SweepParameter::N;
  std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) {
    const double a = parameter_value(x, parameter), b = parameter_value(y, parameter);
    return ascending ? a < b : a > b;
  });

  const auto target = spectrum(reference, execution);
  std::vector<ConvergenceRow> rows(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    auto& row = rows[i];
    row.parameter = parameter;
    row.value = parameter_value(ordered[i], parameter);
    const auto start = Clock::now();
    try {
      const auto s = spectrum(ordered[i], execution);
      const auto d = distance(s, target, reference.weights);
      row.distance_sup = d.sup;
      row.distance_l2 = d.l2;
      row.worst = d.worst;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.runtime_s = std::chrono::duration<double>(Clock::now() - start).count();
  }

  const ConvergenceRow* previous = nullptr;
  for (auto& row : rows) {
    if (row.error) continue;
    if (previous && !(row.distance_sup < previous->distance_sup)) row.non_monotone = true;
    previous = &row;
  }
  return rows;
}

double annulus_field_gap(const ExperimentConfig& a, const ExperimentConfig& b,
                         const Mode& mode, const std::vector<double>& radii) {
  if (a.delta != b.delta || a.omega != b.omega)
    throw DomainError("field gap needs configurations sharing the medium on [2, 3]");
  for (double r : radii)
    if (!(r > 2.0 && r < kOuterRadius))
      throw DomainError("field gap radii must lie in (2, 3)");
  const auto ua = potentials(realize(a), mode, radii, a.tol);
  const auto ub = potentials(realize(b), mode, radii, b.tol);
  double sum = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) sum += std::norm(ua[i] - ub[i]);
  return std::sqrt(sum / static_cast<double>(radii.size()));
}

std::vector<double> annulus_radii(int count) {
  std::vector<double> radii(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) radii[i] = 2.0 + (i + 0.5) / count;
  return radii;
}

}  // namespace cloak
