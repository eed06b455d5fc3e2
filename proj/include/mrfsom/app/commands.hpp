#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include "mrfsom/app/config.hpp"

namespace mrfsom::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitSampling = 3,
  kExitData = 4,
  kExitIo = 5,
};

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e) noexcept;

// Each command validates its whole configuration and reads all inputs
// before it writes anything. Progress lines go to `log`.

/// <out_dir>/dataset.csv and <out_dir>/generation_manifest.json.
void cmd_generate(const RunConfig& cfg, std::ostream& log);

/// <out_dir>/model.json and <out_dir>/train_log.csv.
void cmd_train(const RunConfig& cfg, std::ostream& log);

/// <out_dir>/metrics.json.
void cmd_evaluate(const RunConfig& cfg, std::ostream& log);

/// Heatmaps, distance map and encoding report into <out_dir>.
void cmd_export(const RunConfig& cfg, std::ostream& log);

/// Full command line: `args[0]` is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrfsom::app
