#pragma once
// Text outputs of the command-line front end. Every document carries the
// schema version and the configuration fingerprint.

#include <string>
#include <vector>

#include "cloak/measure.hpp"

namespace cloak {

enum class OutputFormat { Csv, Json };

/// gamma*, eps*_delta and mu* over 600 uniform radii on (0, 3]; region
/// boundaries appear twice, once per side (column `side` = "-" or "+").
std::string params_profile_csv(const ExperimentConfig& config);

/// Layer stack of the configuration (config.n >= 1) as JSON.
std::string stack_document(const ExperimentConfig& config);

std::string spectrum_document(const DtnSpectrum& spectrum, OutputFormat format);

std::string sweep_document(const std::vector<ConvergenceRow>& rows,
                           const ExperimentConfig& config,
                           const ExperimentConfig& reference, OutputFormat format);

/// Convergence table of the cell solver on 2 + sin(2 pi t), N = 2^7 .. 2^12,
/// followed by the two-phase exactness check.
std::string cell_verify_table();

}  // namespace cloak
