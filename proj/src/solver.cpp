#include "critflow/solver.hpp"

#include <algorithm>
#include <cmath>

#include "critflow/operators.hpp"
#include "critflow/parallel.hpp"
#include "critflow/rng.hpp"

namespace critflow {

const char* family_name_str(FamilyName f) {
    switch (f) {
        case FamilyName::Generic: return "Generic";
        case FamilyName::Th1: return "Th1";
        case FamilyName::Th5: return "Th5";
        case FamilyName::Th7: return "Th7";
    }
    return "?";
}

const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Converged: return "converged";
        case Verdict::Diverged: return "diverged";
        case Verdict::MaxIters: return "max-iters";
    }
    return "?";
}

IndexFamily IndexFamily::generic(int d, double s, double p, double r) {
    IndexFamily f;
    f.name = FamilyName::Generic;
    f.d = d;
    f.s = s;
    f.p = p;
    f.q = p;
    f.r = r;
    f.validate();
    return f;
}

IndexFamily IndexFamily::th1(int d, double q) {
    IndexFamily f;
    f.name = FamilyName::Th1;
    f.d = d;
    f.q = q;
    f.p = 2.0 * d * q / (2.0 * d - q);
    f.r = 4.0;
    f.s = d / q - 1.0;
    f.validate();
    return f;
}

IndexFamily IndexFamily::th5(int d, double q, double p) {
    IndexFamily f;
    f.name = FamilyName::Th5;
    f.d = d;
    f.q = q;
    f.p = p;
    f.r = p;
    f.s = (2.0 + d - p) / p;
    f.validate();
    return f;
}

IndexFamily IndexFamily::th7(int d, double q) {
    IndexFamily f;
    f.name = FamilyName::Th7;
    f.d = d;
    f.q = q;
    f.r = 2.0 * q;
    f.p = d * q / (d + 1.0 - q);
    f.s = (d + 2.0 - 2.0 * q) / q;
    f.validate();
    return f;
}

void IndexFamily::validate() const {
    switch (name) {
        case FamilyName::Generic:
            if (!(d >= 3)) throw Error("Generic requires d >= 3");
            if (!(s >= 0)) throw Error("Generic requires s >= 0");
            if (!(p > 1)) throw Error("Generic requires p > 1");
            if (!(r > 2)) throw Error("Generic requires r > 2");
            if (!(s / d < 1.0 / p)) throw Error("Generic requires s/d < 1/p");
            if (!(1.0 / p < 0.5 + s / (2.0 * d))) {
                throw Error("Generic requires 1/p < 1/2 + s/(2d)");
            }
            if (!(2.0 / r + d / p - s <= 1.0 + 1e-12)) {
                throw Error("Generic requires 2/r + d/p - s <= 1");
            }
            break;
        case FamilyName::Th1:
            if (!(d >= 3 && d <= 4)) throw Error("Th1 requires 3 <= d <= 4");
            if (!(q >= 2 && q <= d)) throw Error("Th1 requires 2 <= q <= d");
            break;
        case FamilyName::Th5: {
            if (!(d >= 3)) throw Error("Th5 requires d >= 3");
            if (!(q > 2 && q <= d)) throw Error("Th5 requires 2 < q <= d");
            double cap = q == d ? d + 2.0 : std::min((d - 2.0) * q / (d - q), d + 2.0);
            if (!(p > q && p < cap)) {
                throw Error("Th5 requires q < p < min{(d-2)q/(d-q), d+2}");
            }
            break;
        }
        case FamilyName::Th7:
            if (!(d >= 3)) throw Error("Th7 requires d >= 3");
            if (!(q > 1 && q <= 2)) throw Error("Th7 requires 1 < q <= 2");
            break;
    }
}

void SolverConfig::validate() const {
    if (!(T > 0)) throw Error("solver horizon T must be positive");
    if (time_nodes < 2) throw Error("time grid needs at least two nodes");
    if (!(picard_tol > 0)) throw Error("picard_tol must be positive");
    if (max_iters < 1) throw Error("max_iters must be at least 1");
    quad.validate();
    family.validate();
}

namespace {

void check_datum(const SpectralField& u0, int d) {
    if (u0.components != d) throw Error("initial datum must have d components");
    if (!is_zero_mean(u0, 1e-12)) throw Error("initial datum must be zero-mean");
    if (spectral_divergence(u0) > 1e-10) {
        throw Error("initial datum is not divergence-free");
    }
}

double traj_norm(const Trajectory& traj, const IndexFamily& fam) {
    return time_space_norm(traj, fam.r, fam.spatial_spec()).value;
}

}  // namespace

SolutionReport picard_solve(const SpectralField& u0, const SolverConfig& cfg) {
    cfg.validate();
    const Grid& g = u0.grid;
    if (static_cast<int>(cfg.family.d + 0.5) != g.d) {
        throw Error("family dimension does not match grid");
    }
    check_datum(u0, g.d);

    const std::vector<double> times = uniform_times(cfg.T, cfg.time_nodes - 1);
    const Trajectory y = heat_trajectory(u0, times);
    Trajectory x = cfg.start_from_zero ? zero_trajectory(u0, times) : y;

    SolutionReport rep;
    rep.verdict = Verdict::MaxIters;

    int growing = 0;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        Trajectory Bxx = bilinear_trajectory(x, x, cfg.quad);
        Trajectory xnext = traj_lincomb(1.0, y, -1.0, Bxx);
        double dist = traj_norm(traj_lincomb(1.0, xnext, -1.0, x), cfg.family);
        rep.iterations = iter;
        if (!rep.iterate_distances.empty()) {
            double prev = rep.iterate_distances.back();
            if (prev > 0.0) rep.contraction_ratios.push_back(dist / prev);
            growing = dist > prev ? growing + 1 : 0;
        }
        rep.iterate_distances.push_back(dist);
        for (const auto& state : xnext.states) {
            rep.max_divergence = std::max(rep.max_divergence, spectral_divergence(state));
        }
        x = std::move(xnext);
        if (dist <= cfg.picard_tol) {
            rep.verdict = Verdict::Converged;
            break;
        }
        if (growing >= 3 && dist > 10.0 * rep.iterate_distances.front()) {
            rep.verdict = Verdict::Diverged;
            break;
        }
    }

    Trajectory Bfinal = bilinear_trajectory(x, x, cfg.quad);
    Trajectory residual = traj_lincomb(1.0, x, -1.0, y);
    residual = traj_lincomb(1.0, residual, 1.0, Bfinal);
    rep.final_residual = traj_norm(residual, cfg.family);
    rep.w = traj_lincomb(1.0, x, -1.0, y);
    rep.solution = std::move(x);
    return rep;
}

NormValue smallness_evaluate(const SpectralField& u0, const IndexFamily& family,
                             double T) {
    family.validate();
    if (!(T > 0)) throw Error("smallness horizon T must be positive");
    check_datum(u0, u0.grid.d);
    if (static_cast<int>(family.d + 0.5) != u0.grid.d) {
        throw Error("family dimension does not match grid");
    }

    const Trajectory traj = heat_trajectory(u0, geometric_refined_times(T, 64, 10));
    NormValue nv = time_space_norm(traj, family.r, family.spatial_spec());
    nv.value *= std::pow(T, family.time_power());
    nv.t_max = T;
    nv.notes = "T-prefactor applied; geometric refinement near t = 0";
    return nv;
}

HorizonResult existence_horizon(const SpectralField& u0, const IndexFamily& family,
                                double delta, double t_cap) {
    if (!(delta > 0)) throw Error("smallness threshold delta must be positive");
    if (!(t_cap > 0)) throw Error("horizon cap must be positive");

    auto value_at = [&](double T) { return smallness_evaluate(u0, family, T).value; };

    if (value_at(t_cap) <= delta) {
        return HorizonResult{family.critical(), t_cap};
    }
    // bracket from below: the smallness value vanishes with T
    double lo = t_cap, hi = t_cap;
    const double t_floor = t_cap * 0x1p-40;
    for (;;) {
        lo *= 0.5;
        if (lo < t_floor) throw Error("datum too large at all tested horizons");
        if (value_at(lo) <= delta) break;
        hi = lo;
    }
    while (hi - lo > 1e-3 * hi) {
        double mid = 0.5 * (lo + hi);
        (value_at(mid) <= delta ? lo : hi) = mid;
    }
    return HorizonResult{false, lo};
}

ConstantEstimate estimate_bilinear_constant(const IndexFamily& family, int ensemble_size,
                                            std::uint64_t seed, const Grid& grid,
                                            double T, int time_nodes,
                                            const QuadratureSpec& quad,
                                            const std::vector<double>& shell_profile) {
    family.validate();
    if (ensemble_size < 10) throw Error("ensemble_size must be at least 10");
    if (static_cast<int>(family.d + 0.5) != grid.d) {
        throw Error("family dimension does not match grid");
    }

    const std::vector<double> times = uniform_times(T, time_nodes - 1);
    const double tpow = std::pow(T, family.time_power());

    ConstantEstimate est;
    est.family = family;
    est.ensemble_size = ensemble_size;
    est.seed = seed;
    est.grid_n = grid.n;
    est.box_L = grid.box_length;
    est.T = T;
    est.time_nodes = time_nodes;
    est.ratios.resize(ensemble_size);

    parallel_for(ensemble_size, [&](std::size_t i) {
        SpectralField a = random_divfree_field(grid, shell_profile, derive_seed(seed, 2 * i));
        SpectralField b =
            random_divfree_field(grid, shell_profile, derive_seed(seed, 2 * i + 1));
        Trajectory ut = heat_trajectory(a, times);
        Trajectory vt = heat_trajectory(b, times);
        double nu = traj_norm(ut, family);
        double nv = traj_norm(vt, family);
        if (!(nu > 0.0) || !(nv > 0.0)) throw Error("degenerate ensemble member");
        Trajectory B = bilinear_trajectory(ut, vt, quad);
        est.ratios[i] = traj_norm(B, family) / (tpow * nu * nv);
    });

    est.C_hat = *std::max_element(est.ratios.begin(), est.ratios.end());
    if (!(est.C_hat > 0.0)) throw Error("degenerate ensemble");
    est.delta_hat = 1.0 / (4.0 * est.C_hat);
    return est;
}

}  // namespace critflow
