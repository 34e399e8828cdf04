#include "critflow/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "critflow/operators.hpp"

namespace critflow {

void Trajectory::validate() const {
    if (times.empty() || states.empty()) throw Error("empty trajectory");
    if (times.size() != states.size()) throw Error("trajectory node count mismatch");
    if (times.front() != 0.0) throw Error("trajectory must start at t = 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw Error("trajectory times must increase");
    }
    const Grid& g = states.front().grid;
    int m = states.front().components;
    for (const auto& s : states) {
        if (!(s.grid == g) || s.components != m) {
            throw Error("trajectory states must share one grid");
        }
    }
}

Trajectory heat_trajectory(const SpectralField& u0, std::vector<double> times) {
    Trajectory traj;
    traj.times = std::move(times);
    traj.states.reserve(traj.times.size());
    for (double t : traj.times) traj.states.push_back(heat_semigroup(u0, t));
    traj.validate();
    return traj;
}

Trajectory zero_trajectory(const SpectralField& like, std::vector<double> times) {
    Trajectory traj;
    traj.times = std::move(times);
    traj.states.assign(traj.times.size(), SpectralField(like.grid, like.components));
    traj.validate();
    return traj;
}

Trajectory traj_lincomb(double a, const Trajectory& X, double b, const Trajectory& Y) {
    if (X.times != Y.times) throw Error("trajectories must share one time grid");
    Trajectory out;
    out.times = X.times;
    out.states.reserve(X.states.size());
    for (std::size_t i = 0; i < X.states.size(); ++i) {
        SpectralField s = a * X.states[i];
        s += b * Y.states[i];
        out.states.push_back(std::move(s));
    }
    return out;
}

std::vector<double> uniform_times(double T, int intervals) {
    if (!(T > 0.0) || intervals < 1) throw Error("invalid time grid parameters");
    std::vector<double> t(intervals + 1);
    for (int i = 0; i <= intervals; ++i) t[i] = T * i / intervals;
    t.back() = T;
    return t;
}

std::vector<double> geometric_refined_times(double T, int uniform_intervals,
                                            int extra_geometric) {
    std::vector<double> t = uniform_times(T, uniform_intervals);
    double h = T / uniform_intervals;
    for (int i = 1; i <= extra_geometric; ++i) t.push_back(h * std::pow(0.5, i));
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

std::vector<double> caloric_times(double t_cap, double t_first, int count) {
    if (!(t_cap > t_first) || count < 8) throw Error("invalid caloric time grid");
    std::vector<double> t;
    t.reserve(count + 1);
    t.push_back(0.0);
    double ratio = std::pow(t_cap / t_first, 1.0 / (count - 1));
    double x = t_first;
    for (int i = 0; i < count; ++i) {
        t.push_back(std::min(x, t_cap));
        x *= ratio;
    }
    t.back() = t_cap;
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

}  // namespace critflow
