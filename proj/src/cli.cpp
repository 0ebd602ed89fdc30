#include "cloak/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "cloak/config.hpp"
#include "cloak/errors.hpp"
#include "cloak/report.hpp"

namespace cloak {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

OutputFormat pick_format(const RunManifest& m) {
  if (m.format) {
    if (*m.format == "json") return OutputFormat::Json;
    if (*m.format == "csv") return OutputFormat::Csv;
    throw std::invalid_argument("--format must be csv or json");
  }
  const auto& p = m.output_path;
  const bool json = p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0;
  return json ? OutputFormat::Json : OutputFormat::Csv;
}

void emit(const RunManifest& m, const std::string& text, std::ostream& out) {
  if (m.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(m.output_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + m.output_path + "'");
  file << text;
}

std::vector<double> default_values(SweepParameter p) {
  switch (p) {
    case SweepParameter::N: return {8, 16, 32, 64, 128};
    case SweepParameter::Delta: return {0.1, 0.05, 0.025, 0.0125};
    case SweepParameter::Rho: return {0.2, 0.1, 0.05, 0.025};
  }
  return {};
}

// The limit each sweep approaches: the homogenized media for n, the
// undamped reference for delta, and plain background for rho.
ExperimentConfig sweep_reference(ExperimentConfig config, SweepParameter p) {
  switch (p) {
    case SweepParameter::N: config.n = 0; break;
    case SweepParameter::Delta: config.delta = 0.0; break;
    case SweepParameter::Rho: config.medium = MediumKind::Vacuum; break;
  }
  return config;
}

int run_sweep(const RunManifest& m, const ExperimentConfig& config, Execution exec,
              std::ostream& out, std::ostream& err) {
  if (!m.vary) throw std::invalid_argument("sweep needs --vary <n|delta|rho>");
  const auto parameter = sweep_parameter_from_string(*m.vary);
  const auto values = m.values.empty() ? default_values(parameter) : m.values;

  std::vector<ExperimentConfig> configs;
  for (double v : values) {
    auto c = with_parameter(config, parameter, v);
    c.validate();
    configs.push_back(c);
  }
  const auto reference = sweep_reference(config, parameter);
  const auto rows = sweep(configs, parameter, reference, exec);
  emit(m, sweep_document(rows, config, reference, pick_format(m)), out);

  bool solver_error = false;
  bool trend_violation = false;
  for (const auto& row : rows) {
    if (row.error) {
      solver_error = true;
      err << "row " << to_string(parameter) << "=" << row.value << ": " << *row.error
          << '\n';
    }
    if (row.non_monotone) {
      trend_violation = true;
      err << "row " << to_string(parameter) << "=" << row.value
          << ": distance did not decrease\n";
    }
  }
  if (!rows.empty() && !rows.back().error) {
    const auto last = with_parameter(config, parameter, rows.back().value);
    err << "tail |zeta - zeta_ref| at l_max = " << config.l_max << ": "
        << tail_defect(spectrum(last, exec), spectrum(reference, exec)) << '\n';
  }
  if (solver_error) return kExitSolver;
  return trend_violation ? kExitTrend : kExitOk;
}

}  // namespace

int run(const RunManifest& m, std::ostream& out, std::ostream& err) {
  const auto exec = m.sequential ? Execution::Sequential : Execution::Parallel;
  try {
    if (m.command == "cell-verify") {
      emit(m, cell_verify_table(), out);
      return kExitOk;
    }
    if (m.command != "params" && m.command != "stack" && m.command != "dtn" &&
        m.command != "sweep")
      throw std::invalid_argument("unknown command '" + m.command + "'");
    if (m.config_path.empty()) throw std::invalid_argument("--config is required");

    auto config = parse_config(read_file(m.config_path));
    if (m.inner_shell) config.inner_shell_mode = inner_shell_mode_from_string(*m.inner_shell);
    config.validate();

    if (m.command == "params") {
      emit(m, params_profile_csv(config), out);
    } else if (m.command == "stack") {
      emit(m, stack_document(config), out);
    } else if (m.command == "dtn") {
      emit(m, spectrum_document(spectrum(config, exec), pick_format(m)), out);
    } else {
      return run_sweep(m, config, exec, out, err);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const NearResonanceError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const StiffnessError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const RangeError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const SingularMediumError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace cloak
