#include "cloak/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "cloak/cell.hpp"
#include "cloak/config.hpp"
#include "cloak/errors.hpp"
#include "cloak/laminate.hpp"

namespace cloak {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string header(const std::string& fingerprint) {
  return "# schema_version=" + std::to_string(kSchemaVersion) +
         " fingerprint=" + fingerprint + "\n";
}

struct Sample {
  double r;
  char side;  // ' ' interior, '-' / '+' at a boundary
};

std::vector<Sample> profile_radii(const std::vector<double>& boundaries) {
  constexpr int kPoints = 600;
  std::vector<Sample> out;
  std::size_t next = 0;
  for (int i = 1; i <= kPoints; ++i) {
    const double r = kOuterRadius * i / kPoints;
    while (next < boundaries.size() && boundaries[next] < r) {
      out.push_back({boundaries[next], '-'});
      out.push_back({boundaries[next], '+'});
      ++next;
    }
    if (next < boundaries.size() && boundaries[next] == r) {
      out.push_back({r, '-'});
      out.push_back({r, '+'});
      ++next;
      continue;
    }
    out.push_back({r, ' '});
  }
  return out;
}

const char* side_label(char side) {
  return side == '-' ? "-" : side == '+' ? "+" : "";
}

}  // namespace

std::string params_profile_csv(const ExperimentConfig& config) {
  config.validate();
  const auto geom = CloakGeometry::from_rho(config.rho);
  const auto medium = build_reference_media(geom, config.delta, config.omega,
                                            config.object, config.inner_shell_mode);
  const auto bps = medium.breakpoints();
  const std::vector<double> interior(bps.begin() + 1, bps.end() - 1);

  std::ostringstream out;
  out << header(fingerprint(config));
  out << "side,r,gamma_radial,gamma_tangential,eps_radial_re,eps_radial_im,"
         "eps_tangential_re,eps_tangential_im,mu_radial_re,mu_radial_im,"
         "mu_tangential_re,mu_tangential_im\n";
  for (const auto& sample : profile_radii(interior)) {
    std::size_t k = 0;
    while (k + 1 < medium.segments.size() &&
           (sample.r > medium.segments[k].r_outer ||
            (sample.side == '+' && sample.r == medium.segments[k].r_outer)))
      ++k;
    const auto& seg = medium.segments[k];
    const auto eps = seg.eps(sample.r);
    const auto mu = seg.mu(sample.r);
    const bool core = seg.r_outer <= kObjectRadius;
    const double g_r = core ? 1.0 : mu.radial.real();
    const double g_t = core ? 1.0 : mu.tangential.real();
    out << side_label(sample.side) << ',' << num(sample.r) << ',' << num(g_r) << ','
        << num(g_t) << ',' << num(eps.radial.real()) << ',' << num(eps.radial.imag())
        << ',' << num(eps.tangential.real()) << ',' << num(eps.tangential.imag()) << ','
        << num(mu.radial.real()) << ',' << num(mu.radial.imag()) << ','
        << num(mu.tangential.real()) << ',' << num(mu.tangential.imag()) << '\n';
  }
  return out.str();
}

std::string stack_document(const ExperimentConfig& config) {
  config.validate();
  if (config.n < 1) throw DomainError("the stack command needs n >= 1");
  const auto stack = build_stack(config.n, CloakGeometry::from_rho(config.rho),
                                 config.delta, config.omega, config.object,
                                 config.inner_shell_mode);
  auto body = nlohmann::ordered_json::parse(stack_to_json(stack));
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["fingerprint"] = fingerprint(config);
  for (auto& [key, value] : body.items()) doc[key] = value;
  return doc.dump(2) + "\n";
}

std::string spectrum_document(const DtnSpectrum& s, OutputFormat format) {
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["fingerprint"] = s.fingerprint;
    doc["omega"] = s.omega;
    doc["l_max"] = s.l_max;
    auto modes = nlohmann::ordered_json::array();
    for (auto pol : {Polarization::TE, Polarization::TM})
      for (int l = 1; l <= s.l_max; ++l) {
        const cplx z = s.at({pol, l});
        modes.push_back(
            {{"pol", to_string(pol)}, {"l", l}, {"zeta_re", z.real()}, {"zeta_im", z.imag()}});
      }
    doc["modes"] = std::move(modes);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << header(s.fingerprint) << "pol,l,zeta_re,zeta_im\n";
  for (auto pol : {Polarization::TE, Polarization::TM})
    for (int l = 1; l <= s.l_max; ++l) {
      const cplx z = s.at({pol, l});
      out << to_string(pol) << ',' << l << ',' << num(z.real()) << ',' << num(z.imag())
          << '\n';
    }
  return out.str();
}

std::string sweep_document(const std::vector<ConvergenceRow>& rows,
                           const ExperimentConfig& config,
                           const ExperimentConfig& reference, OutputFormat format) {
  const auto nan = std::nan("");
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["fingerprint"] = fingerprint(config);
    doc["reference_fingerprint"] = fingerprint(reference);
    auto list = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json item;
      item["param"] = to_string(row.parameter);
      item["value"] = row.value;
      if (row.error) {
        item["distance_sup"] = nullptr;
        item["distance_l2"] = nullptr;
        item["worst_pol"] = nullptr;
        item["worst_l"] = nullptr;
      } else {
        item["distance_sup"] = row.distance_sup;
        item["distance_l2"] = row.distance_l2;
        item["worst_pol"] = to_string(row.worst.pol);
        item["worst_l"] = row.worst.l;
      }
      item["runtime_s"] = row.runtime_s;
      item["non_monotone"] = row.non_monotone;
      item["error"] = row.error ? nlohmann::ordered_json(*row.error) : nullptr;
      list.push_back(std::move(item));
    }
    doc["rows"] = std::move(list);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << header(fingerprint(config));
  out << "# reference_fingerprint=" << fingerprint(reference) << '\n';
  out << "param,value,distance_sup,distance_l2,worst_pol,worst_l,runtime_s\n";
  for (const auto& row : rows) {
    out << to_string(row.parameter) << ',' << num(row.value) << ','
        << num(row.error ? nan : row.distance_sup) << ','
        << num(row.error ? nan : row.distance_l2) << ','
        << (row.error ? "" : to_string(row.worst.pol)) << ','
        << (row.error ? 0 : row.worst.l) << ',' << num(row.runtime_s) << '\n';
  }
  return out.str();
}

std::string cell_verify_table() {
  std::ostringstream out;
  out << "# cell problem, gamma(t) = 2 + sin(2 pi t)\n";
  out << "N,sup_error,order\n";
  const auto rows = cell_convergence_table(
      [](double t) { return 2.0 + std::sin(2.0 * M_PI * t); }, 7, 12);
  for (const auto& row : rows)
    out << row.n << ',' << num(row.sup_error) << ','
        << (std::isnan(row.order) ? std::string("") : num(row.order)) << '\n';

  const auto profile = PeriodicProfile::two_phase(3.331139, 0.168861, 64);
  const auto hom = homogenize_profile(profile);
  const double harmonic = 2.0 * 3.331139 * 0.168861 / (3.331139 + 0.168861);
  out << "# two-phase laminate (N = 64): |underline - harmonic mean| = "
      << num(std::abs(hom.underline - harmonic)) << '\n';
  return out.str();
}

}  // namespace cloak
