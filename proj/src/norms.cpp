#include "critflow/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "critflow/operators.hpp"
#include "critflow/quadrature.hpp"

namespace critflow {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_q(double q) {
    if (!(q > 1.0) || std::isinf(q)) throw Error("spatial exponent q must lie in (1, inf)");
}

void check_p(double p) {
    if (!(p >= 1.0)) throw Error("summation exponent p must lie in [1, inf]");
}

}  // namespace

const char* norm_kind_name(NormKind k) {
    switch (k) {
        case NormKind::Lebesgue: return "lebesgue";
        case NormKind::SobolevHom: return "sobolev-hom";
        case NormKind::SobolevInhom: return "sobolev-inhom";
        case NormKind::BesovLpHom: return "besov-lp";
        case NormKind::BesovHeatHom: return "besov-heat";
    }
    return "?";
}

void NormSpec::validate(int d) const {
    switch (kind) {
        case NormKind::Lebesgue:
            check_q(q);
            break;
        case NormKind::SobolevHom:
            check_q(q);
            if (!(s < double(d) / q)) throw Error("sobolev-hom requires s < d/q");
            break;
        case NormKind::SobolevInhom:
            check_q(q);
            break;
        case NormKind::BesovLpHom:
            check_q(q);
            check_p(p);
            break;
        case NormKind::BesovHeatHom:
            check_q(q);
            check_p(p);
            if (!(alpha >= 0.0)) throw Error("besov-heat requires alpha >= 0");
            if (!(s < alpha)) throw Error("characterization hypothesis violated: need s < alpha");
            break;
    }
}

NormValue lebesgue_norm(const SpectralField& f, double q) {
    check_q(q);
    const Grid& g = f.grid;
    const std::size_t modes = g.modes();

    std::vector<double> mag2(modes, 0.0);
    for (int c = 0; c < f.components; ++c) {
        std::vector<double> phys = physical_samples(f, c);
        for (std::size_t i = 0; i < modes; ++i) mag2[i] += phys[i] * phys[i];
    }

    double acc = 0.0;
    if (q == 2.0) {
        for (double m2 : mag2) acc += m2;
    } else {
        const double half_q = 0.5 * q;
        for (double m2 : mag2) acc += std::pow(m2, half_q);
    }
    NormValue nv;
    nv.value = std::pow(acc * g.cell_volume(), 1.0 / q);
    nv.spec = NormSpec{NormKind::Lebesgue, 0.0, q};
    nv.grid_n = g.n;
    nv.box_L = g.box_length;
    return nv;
}

NormValue sobolev_norm(const SpectralField& f, double s, double q, bool homogeneous) {
    check_q(q);
    NormValue nv;
    if (homogeneous) {
        if (!is_zero_mean(f, 1e-12)) {
            throw Error("homogeneous Sobolev norm needs a zero-mean field");
        }
        nv = lebesgue_norm(riesz_potential(f, s), q);
        nv.spec = NormSpec{NormKind::SobolevHom, s, q};
    } else {
        nv = lebesgue_norm(bessel_potential(f, s), q);
        nv.spec = NormSpec{NormKind::SobolevInhom, s, q};
    }
    return nv;
}

namespace {

int besov_block_count(const Grid& g) {
    // j = 0 .. floor(log2(n/3)); block J is extended upward.
    return static_cast<int>(std::floor(std::log2(g.n / 3.0))) + 1;
}

// L^q norms of the sharp annulus restrictions, block j covering
// 2^j <= |k| < 2^{j+1} (the last block has no upper edge).
std::vector<double> block_norms(const SpectralField& f, double q) {
    const Grid& g = f.grid;
    const auto& k2 = detail::k2_table(g);
    const int J = besov_block_count(f.grid);
    std::vector<double> norms(J);
    for (int j = 0; j < J; ++j) {
        const double lo2 = std::pow(2.0, 2 * j);
        const double hi2 = std::pow(2.0, 2 * (j + 1));
        const bool open_top = (j == J - 1);
        SpectralField block(g, f.components);
        bool any = false;
        for (std::size_t m = 0; m < g.modes(); ++m) {
            double kk = k2[m];
            if (kk >= lo2 && (open_top || kk < hi2)) {
                for (int c = 0; c < f.components; ++c) block.at(c, m) = f.at(c, m);
                any = true;
            }
        }
        norms[j] = any ? lebesgue_norm(block, q).value : 0.0;
    }
    return norms;
}

}  // namespace

NormValue besov_norm_lp(const SpectralField& f, double s, double p, double q) {
    check_q(q);
    check_p(p);
    if (!is_zero_mean(f, 1e-12)) throw Error("besov norm needs a zero-mean field");

    const std::vector<double> bn = block_norms(f, q);
    double value = 0.0;
    if (std::isinf(p)) {
        for (int j = 0; j < (int)bn.size(); ++j) {
            value = std::max(value, std::pow(2.0, j * s) * bn[j]);
        }
    } else {
        for (int j = 0; j < (int)bn.size(); ++j) {
            value += std::pow(std::pow(2.0, j * s) * bn[j], p);
        }
        value = std::pow(value, 1.0 / p);
    }
    NormValue nv;
    nv.value = value;
    nv.spec = NormSpec{NormKind::BesovLpHom, s, q, p};
    nv.grid_n = f.grid.n;
    nv.box_L = f.grid.box_length;
    nv.panels = (int)bn.size();
    nv.notes = "sharp integer-|k| annuli, last block open above";
    return nv;
}

namespace {

// Smallest integer |k|^2 carrying relative mass above 1e-14; 0 for the
// zero field.
std::int32_t min_active_k2(const SpectralField& f) {
    const auto& k2 = detail::k2_table(f.grid);
    const double thresh = 1e-14 * max_abs_coeff(f);
    std::int32_t best = 0;
    for (std::size_t m = 0; m < f.modes(); ++m) {
        if (k2[m] == 0) continue;
        for (int c = 0; c < f.components; ++c) {
            if (std::abs(f.at(c, m)) > thresh) {
                if (best == 0 || k2[m] < best) best = k2[m];
                break;
            }
        }
    }
    return best;
}

}  // namespace

NormValue besov_norm_heat(const SpectralField& f, double s, double p, double q,
                          double alpha, double t_max) {
    check_q(q);
    check_p(p);
    if (!(alpha >= 0.0)) throw Error("besov-heat requires alpha >= 0");
    if (!(s < alpha)) throw Error("characterization hypothesis violated: need s < alpha");
    if (!is_zero_mean(f, 1e-12)) throw Error("besov norm needs a zero-mean field");

    const Grid& g = f.grid;
    NormValue nv;
    nv.spec = NormSpec{NormKind::BesovHeatHom, s, q, p, alpha};
    nv.grid_n = g.n;
    nv.box_L = g.box_length;

    const std::int32_t k2min = min_active_k2(f);
    if (k2min == 0) return nv;  // zero field

    const double t_lo = 1e-6 * g.dx() * g.dx();
    const double t_hi = t_max > 0.0
                            ? t_max
                            : 50.0 * std::pow(g.box_length / two_pi, 2) / double(k2min);
    if (!(t_hi > t_lo)) throw Error("besov-heat horizon below quadrature floor");

    const SpectralField lifted = riesz_potential(f, alpha);

    // q = 2 evaluates || e^{tD} g ||_2 from shell-aggregated coefficient
    // mass (Parseval); other q transform per quadrature node.
    std::vector<double> shell_mass;
    if (q == 2.0) {
        const auto& k2 = detail::k2_table(g);
        std::int32_t maxk2 = 0;
        for (auto v : k2) maxk2 = std::max(maxk2, v);
        shell_mass.assign(maxk2 + 1, 0.0);
        for (int c = 0; c < f.components; ++c) {
            const cplx* src = lifted.component(c);
            for (std::size_t m = 0; m < g.modes(); ++m) {
                shell_mass[k2[m]] += std::norm(src[m]);
            }
        }
    }
    const double vol = g.volume();
    const double dk2 = g.dk() * g.dk();
    auto spatial = [&](double t) {
        if (q == 2.0) {
            double acc = 0.0;
            for (std::size_t v = 1; v < shell_mass.size(); ++v) {
                if (shell_mass[v] != 0.0) {
                    acc += std::exp(-2.0 * dk2 * double(v) * t) * shell_mass[v];
                }
            }
            return std::sqrt(vol * acc);
        }
        return lebesgue_norm(heat_semigroup(lifted, t), q).value;
    };
    auto integrand = [&](double t) {
        return std::pow(t, 0.5 * (alpha - s)) * spatial(t);
    };

    const int gauss_points = 8;
    const GaussRule& rule = gauss_legendre_unit(gauss_points);
    const int panels = static_cast<int>(std::ceil(std::log2(t_hi / t_lo)));

    double acc = 0.0, sup = 0.0;
    double a = t_lo;
    for (int pl = 0; pl < panels; ++pl) {
        double b = std::min(a * 2.0, t_hi);
        double width = b - a;
        for (int gq = 0; gq < gauss_points; ++gq) {
            double t = a + rule.nodes[gq] * width;
            double phi = integrand(t);
            if (std::isinf(p)) {
                sup = std::max(sup, phi);
            } else {
                acc += rule.weights[gq] * width * std::pow(phi, p) / t;
            }
        }
        a = b;
    }
    nv.value = std::isinf(p) ? sup : std::pow(acc, 1.0 / p);
    nv.t_min = t_lo;
    nv.t_max = t_hi;
    nv.panels = panels;
    nv.gauss_points = gauss_points;
    nv.spec.t_max = t_hi;
    nv.notes = "geometric panel ladder";
    return nv;
}

NormValue spatial_norm(const SpectralField& f, const NormSpec& spec) {
    switch (spec.kind) {
        case NormKind::Lebesgue: return lebesgue_norm(f, spec.q);
        case NormKind::SobolevHom: return sobolev_norm(f, spec.s, spec.q, true);
        case NormKind::SobolevInhom: return sobolev_norm(f, spec.s, spec.q, false);
        case NormKind::BesovLpHom: return besov_norm_lp(f, spec.s, spec.p, spec.q);
        case NormKind::BesovHeatHom:
            return besov_norm_heat(f, spec.s, spec.p, spec.q, spec.alpha, spec.t_max);
    }
    throw Error("unknown norm kind");
}

NormValue time_space_norm(const Trajectory& traj, double r, const NormSpec& spec) {
    traj.validate();
    if (!(r >= 1.0)) throw Error("time exponent r must lie in [1, inf]");

    std::vector<double> phi(traj.nodes());
    for (std::size_t i = 0; i < traj.nodes(); ++i) {
        phi[i] = spatial_norm(traj.states[i], spec).value;
    }

    NormValue nv;
    nv.spec = spec;
    nv.grid_n = traj.grid().n;
    nv.box_L = traj.grid().box_length;
    if (std::isinf(r)) {
        nv.value = *std::max_element(phi.begin(), phi.end());
        nv.notes = "max over time nodes";
        return nv;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < traj.nodes(); ++i) {
        double dt = traj.times[i + 1] - traj.times[i];
        acc += 0.5 * dt * (std::pow(phi[i], r) + std::pow(phi[i + 1], r));
    }
    nv.value = std::pow(acc, 1.0 / r);
    nv.notes = "trapezoid on trajectory time grid";
    return nv;
}

std::string norm_csv_header() { return "kind,s,p,q,alpha,value,t_min,t_max,grid_n,box_L"; }

std::string norm_csv_row(const NormValue& nv) {
    char buf[320];
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g",
                  norm_kind_name(nv.spec.kind), nv.spec.s, nv.spec.p,
                  nv.spec.q, nv.spec.alpha, nv.value, nv.t_min, nv.t_max,
                  nv.grid_n, nv.box_L);
    return buf;
}

}  // namespace critflow
