#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "critflow/estimates.hpp"
#include "critflow/solver.hpp"

namespace critflow {

enum class Command {
    Solve,
    Smallness,
    Horizon,
    Norm,
    VerifyProduct,
    VerifyEmbedding,
    VerifyCaloric,
    EstimateConstant,
    KernelCheck,
};

const char* command_str(Command c);

// Parsed and validated key = value experiment description.  Defaults:
// n = 32, L = 2 pi, time_nodes = 65, picard_tol = 1e-8, seed = 1.
struct ExperimentConfig {
    Command command = Command::Solve;

    int schema = 1;
    int d = 3;
    int n = 32;
    double box_L = two_pi;

    FamilyName family = FamilyName::Th1;
    double q = 3.0;
    double p = 0.0;  // Th5 / Generic
    double r = 0.0;  // Generic
    double s = 0.0;  // Generic

    double T = 0.5;
    int time_nodes = 65;
    double picard_tol = 1e-8;
    int max_iters = 25;
    int panels = 1;
    int gauss_points = 4;

    std::uint64_t seed = 1;
    int ensemble_size = 50;
    std::vector<double> profile = {0.0, 1.0, 0.5, 0.25, 0.125};

    std::string u0_kind = "taylor-green";  // shear | taylor-green | random | <path>
    double amplitude = 0.01;
    bool dump_fields = false;

    double delta = 0.0;   // horizon threshold
    double t_cap = 50.0;  // horizon / caloric truncation

    // norm command
    std::string norm_kind = "lebesgue";
    double norm_s = 0.0, norm_p = 2.0, norm_q = 2.0, norm_alpha = 0.0, norm_t_max = 0.0;
    std::string input_path;

    // verify-embedding
    EmbeddingSpec embedding;
    bool refine_study = true;

    // verify-product exponents
    double prod_s = 1.0, prod_p = 2.0, prod_q = 2.0;

    int kernel_n = 0;       // 0: per-dimension default
    double kernel_box = 0;  // 0: 32 pi
    std::vector<double> radii = {1.0, 2.0, 4.0, 8.0};

    std::string out_dir = ".";

    IndexFamily make_family() const;
    SolverConfig make_solver_config() const;
    Grid make_grid_spec() const;
    NormSpec make_norm_spec() const;
};

// UTF-8 key = value lines with '#' comments.  Errors carry the offending
// line number.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace critflow
