#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "critflow/bilinear.hpp"
#include "critflow/norms.hpp"

namespace critflow {

enum class FamilyName { Generic, Th1, Th5, Th7 };

const char* family_name_str(FamilyName f);

// One existence theorem's exponent tuple (d, q, p, r, s).  The named
// constructors derive the dependent exponents and validate the theorem's
// hypotheses; validate() re-checks and names the failed inequality.
struct IndexFamily {
    FamilyName name = FamilyName::Generic;
    double d = 3, q = 2, p = 2, r = 4, s = 0;

    static IndexFamily generic(int d, double s, double p, double r);
    static IndexFamily th1(int d, double q);
    static IndexFamily th5(int d, double q, double p);
    static IndexFamily th7(int d, double q);

    void validate() const;

    // Exponent of the T prefactor in the smallness condition:
    // (1 + s - 2/r - d/p) / 2, which is 0 exactly on critical families.
    double time_power() const { return 0.5 * (1.0 + s - 2.0 / r - d / p); }
    bool critical(double tol = 1e-12) const {
        return std::abs(2.0 / r + d / p - s - 1.0) <= tol;
    }

    NormSpec spatial_spec() const { return NormSpec{NormKind::SobolevHom, s, p}; }
};

struct SolverConfig {
    double T = 0.5;
    int time_nodes = 65;  // M = 64 uniform intervals
    double picard_tol = 1e-8;
    int max_iters = 25;
    QuadratureSpec quad;
    IndexFamily family;
    bool start_from_zero = false;  // x_0 = 0 instead of x_0 = e^{tD} u0

    void validate() const;
};

enum class Verdict { Converged, Diverged, MaxIters };

const char* verdict_str(Verdict v);

struct SolutionReport {
    std::vector<double> iterate_distances;   // ||x_{n+1} - x_n||
    std::vector<double> contraction_ratios;  // successive distance quotients
    double final_residual = 0.0;             // ||u - e^{tD}u0 + B(u,u)||
    Verdict verdict = Verdict::MaxIters;
    int iterations = 0;
    double max_divergence = 0.0;  // worst nodal spectral divergence seen
    Trajectory solution;
    Trajectory w;  // u - e^{tD} u0
};

struct ConstantEstimate {
    IndexFamily family;
    double C_hat = 0.0;
    double delta_hat = 0.0;  // 1 / (4 C_hat)
    int ensemble_size = 0;
    std::uint64_t seed = 0;
    int grid_n = 0;
    double box_L = 0.0;
    double T = 0.0;
    int time_nodes = 0;
    std::vector<double> ratios;
};

// x_{n+1} = e^{tD}u0 - B(x_n, x_n) until the discrete L^r([0,T]; H-dot^s_p)
// distance between iterates drops below picard_tol.
SolutionReport picard_solve(const SpectralField& u0, const SolverConfig& cfg);

// T^{(1+s-2/r-d/p)/2} || e^{tD} u0 ||_{L^r([0,T]; H-dot^s_p)} on a
// geometrically refined time grid.
NormValue smallness_evaluate(const SpectralField& u0, const IndexFamily& family,
                             double T);

struct HorizonResult {
    bool global = false;
    double T = 0.0;
};

// Largest tested horizon with smallness_evaluate <= delta (bisection to
// relative tolerance 1e-3); "global" when the capped horizon still passes
// and the family is critical.
HorizonResult existence_horizon(const SpectralField& u0, const IndexFamily& family,
                                double delta, double t_cap = 50.0);

// C_hat = max over random heat-flow pairs of
// ||B(u,v)|| / (T^pow ||u|| ||v||) in the family norm; delta_hat = 1/(4 C_hat).
ConstantEstimate estimate_bilinear_constant(
    const IndexFamily& family, int ensemble_size, std::uint64_t seed, const Grid& grid,
    double T, int time_nodes = 33, const QuadratureSpec& quad = {},
    const std::vector<double>& shell_profile = {0.0, 1.0, 0.5, 0.25, 0.125});

}  // namespace critflow
