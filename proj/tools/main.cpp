#include <iostream>

#include "CLI11.hpp"

#include "cloak/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Layered near-cloak construction and impedance-spectrum experiments"};
  app.set_version_flag("--version", std::string(cloak::kToolVersion));

  cloak::RunManifest manifest;
  std::string inner_shell, vary, format, values;

  app.add_option("command", manifest.command, "params | stack | cell-verify | dtn | sweep")
      ->required()
      ->check(CLI::IsMember({"params", "stack", "cell-verify", "dtn", "sweep"}));
  app.add_option("--config", manifest.config_path, "JSON experiment configuration");
  app.add_option("--out", manifest.output_path, "output file (default: stdout)");
  app.add_option("--vary", vary, "sweep parameter")
      ->check(CLI::IsMember({"n", "delta", "rho"}));
  app.add_option("--values", values, "comma-separated sweep values");
  app.add_flag("--sequential", manifest.sequential, "single-threaded, bitwise reproducible");
  app.add_option("--inner-shell", inner_shell, "override the inner shell value")
      ->check(CLI::IsMember({"paper", "pushforward"}));
  app.add_option("--format", format, "csv | json (default from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cloak::kExitOk : cloak::kExitUsage;
  }

  if (!inner_shell.empty()) manifest.inner_shell = inner_shell;
  if (!vary.empty()) manifest.vary = vary;
  if (!format.empty()) manifest.format = format;
  if (!values.empty()) {
    try {
      for (const auto& item : CLI::detail::split(values, ','))
        manifest.values.push_back(std::stod(item));
    } catch (const std::exception&) {
      std::cerr << "error: --values must be a comma-separated list of numbers\n";
      return cloak::kExitUsage;
    }
  }
  return cloak::run(manifest, std::cout, std::cerr);
}
