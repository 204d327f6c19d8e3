#pragma once

#include <ostream>
#include <string>

#include "swim3d/config.hpp"

namespace swim3d::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kSingular = 3,
};

// Each command writes its files under `prefix` and reports on `log`.
// Errors are mapped to the exit-code contract above.
int cmd_simulate(const RunConfig & cfg, const std::string & prefix, std::ostream & log);
int cmd_field(const RunConfig & cfg, const std::string & prefix, std::ostream & log);
int cmd_curvature(const RunConfig & cfg, const std::string & prefix, std::ostream & log);
int cmd_optimize(const RunConfig & cfg, const std::string & prefix, std::ostream & log);
int cmd_check(const DragParams & params, std::ostream & log);

/// Field-sampling threads; SWIM3D_THREADS overrides hardware concurrency.
unsigned field_threads();

/// Full command line: swim3d simulate|field|curvature|optimize|check --config <path> [--out <prefix>].
int run(int argc, const char * const * argv);

}  // namespace swim3d::cli
