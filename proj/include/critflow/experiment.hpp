#pragma once

#include <string>

#include "critflow/config.hpp"

namespace critflow {

// Dispatches the configured command, writing summary.json, report.csv and
// report.txt (plus optional CFF1 dumps) into out_dir.  Returns the process
// exit status: 0 on success, 2 on a verdict failure (e.g. a diverged
// solve), 1 on usage or I/O errors (thrown as Error by lower layers).
// One experiment per output directory at a time (lock file).
int run_experiment(const ExperimentConfig& cfg);

// Builds the configured initial datum on the configured grid.
SpectralField build_datum(const ExperimentConfig& cfg);

}  // namespace critflow
