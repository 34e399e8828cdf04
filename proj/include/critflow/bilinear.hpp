#pragma once

#include <vector>

#include "critflow/trajectory.hpp"

namespace critflow {

struct QuadratureSpec {
    int panels_per_interval = 1;
    int gauss_points = 4;
    // trajectory values between nodes are interpolated piecewise-linearly

    void validate() const {
        if (panels_per_interval < 1) throw Error("panels_per_interval must be positive");
        if (gauss_points < 2) throw Error("gauss_points must be at least 2");
    }
};

struct KernelReport {
    std::vector<double> radii;
    std::vector<double> kernel_magnitudes;
    std::vector<double> bound_values;  // fitted_c * (1+r)^-(d+1) per sample
    double fitted_c = 0.0;
    int d = 0;
    int grid_n = 0;
    double box = 0.0;
};

// B(u, v)(t) = integral_0^t e^{(t-tau) D} P div(u (x) v) dtau by composite
// Gauss-Legendre with the heat factor exact at every node.
SpectralField duhamel_bilinear(const Trajectory& u, const Trajectory& v, double t,
                               const QuadratureSpec& quad);

// B(u, v) at every node of the shared time grid.  Evaluation is recursive
// over intervals (the heat factors compose exactly), so this runs the same
// quadrature as duhamel_bilinear at O(M) cost instead of O(M^2).
Trajectory bilinear_trajectory(const Trajectory& u, const Trajectory& v,
                               const QuadratureSpec& quad);

// Physical-space decay of the Gaussian-Oseen convolution tensor: evaluates
// K on a dedicated fine grid, samples |K| at the given radii and fits the
// smallest c with |K(x_i)| <= c (1+|x_i|)^{-(d+1)}.  n = 0 / box = 0 select
// per-dimension defaults (d = 3: n = 256, box = 32 pi).
KernelReport kernel_decay_check(int d, const std::vector<double>& radii, int n = 0,
                                double box = 0.0);

std::string kernel_csv(const KernelReport& rep);

}  // namespace critflow
