//
// Copyright 2026 The infolearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line runner:
//   infolearn <kind> --config <path> [--out <dir>] [--workers k]
// Writes <out>/report.json and <out>/grid.csv. Exit status: 0 when every
// grid cell ran and its check held, 1 on invalid arguments or config, 3 when
// some cell failed or violated its check.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "infolearn/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = infolearn::cli;

  CLI::App app{"Exact and sampled information measures for learning algorithms"};
  std::string kind;
  std::string config_path;
  std::string out_dir = ".";
  std::size_t workers = infolearn::default_workers();
  std::string kinds;
  for (const auto& s : cli::kind_schemas()) kinds += std::string(kinds.empty() ? "" : ", ") + s.name;
  app.add_option("kind", kind, "Experiment kind: " + kinds)->required();
  app.add_option("--config", config_path, "Config file (key = value lines)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    auto config = cli::load_config(config_path, cli::parse_kind(kind));
    cli::apply_budget_override(config, std::getenv("INFOLEARN_BUDGET"));
    const auto result = cli::run(config, workers);
    cli::write_outputs(result, out_dir);
    if (!result.all_ok()) {
      for (const auto& row : result.rows) {
        if (row.status != "ok") {
          std::cerr << "N=" << row.key.n << " m=" << row.key.m << ": " << row.status << "\n";
        }
      }
      return 3;
    }
  } catch (const cli::ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
