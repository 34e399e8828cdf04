// critflow: batch front door for the spectral estimates lab.
//   critflow <config-path> [--out DIR] [--seed N] [--threads N]

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "critflow/experiment.hpp"
#include "critflow/parallel.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral mild-solution and estimates laboratory"};

    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    int threads = 0;

    app.add_option("config", config_path, "experiment config file (key = value lines)")
        ->required();
    app.add_option("--out", out_dir, "output directory (overrides 'out' key)");
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--threads", threads, "worker threads (else CRITFLOW_THREADS, else 1)");

    CLI11_PARSE(app, argc, argv);

    if (threads <= 0) {
        if (const char* env = std::getenv("CRITFLOW_THREADS")) threads = std::atoi(env);
    }
    critflow::set_threads(threads > 0 ? static_cast<unsigned>(threads) : 1);

    try {
        critflow::ExperimentConfig cfg = critflow::parse_config_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        return critflow::run_experiment(cfg);
    } catch (const std::exception& err) {
        std::cerr << "critflow: " << err.what() << "\n";
        return 1;
    }
}
