#pragma once

#include <vector>

#include "critflow/field.hpp"

namespace critflow {

// Time-indexed states on a shared grid; carrier of u(t, .) and of the
// L^r([0,T]; X) norms.  times are strictly increasing with times[0] == 0.
struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> states;

    void validate() const;
    const Grid& grid() const { return states.front().grid; }
    int components() const { return states.front().components; }
    double horizon() const { return times.back(); }
    std::size_t nodes() const { return times.size(); }
};

// e^{t Delta} u0 sampled on the given time grid.
Trajectory heat_trajectory(const SpectralField& u0, std::vector<double> times);

Trajectory zero_trajectory(const SpectralField& like, std::vector<double> times);

// Node-wise a*X + b*Y on a shared time grid.
Trajectory traj_lincomb(double a, const Trajectory& X, double b, const Trajectory& Y);

std::vector<double> uniform_times(double T, int intervals);

// Uniform intervals plus extra geometrically shrinking nodes below the
// first interior node; resolves heat-flow transients near t = 0.
std::vector<double> geometric_refined_times(double T, int uniform_intervals,
                                            int extra_geometric);

// Grid for truncated [0, infinity) caloric integrals: node 0 plus a
// geometric ladder from t_first to t_cap.
std::vector<double> caloric_times(double t_cap, double t_first = 1e-4, int count = 300);

}  // namespace critflow
