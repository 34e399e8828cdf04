#include "critflow/bilinear.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "critflow/operators.hpp"
#include "critflow/quadrature.hpp"

namespace critflow {

namespace {

void check_pair(const Trajectory& u, const Trajectory& v) {
    u.validate();
    v.validate();
    if (!(u.grid() == v.grid())) throw Error("duhamel_bilinear: grid mismatch");
    if (u.times != v.times) throw Error("duhamel_bilinear: time grid mismatch");
    if (u.components() != u.grid().d || v.components() != v.grid().d) {
        throw Error("duhamel_bilinear needs d-component trajectories");
    }
}

using PhysState = std::vector<std::vector<double>>;  // [component][sample]

PhysState to_physical(const SpectralField& f) {
    PhysState p(f.components);
    for (int c = 0; c < f.components; ++c) p[c] = physical_samples(f, c);
    return p;
}

PhysState lerp_physical(const PhysState& a, const PhysState& b, double lam) {
    PhysState out(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) {
        out[c].resize(a[c].size());
        for (std::size_t i = 0; i < a[c].size(); ++i) {
            out[c][i] = (1.0 - lam) * a[c][i] + lam * b[c][i];
        }
    }
    return out;
}

// Accumulate out += w * e^{dt D} f.
void add_heated(SpectralField& out, const SpectralField& f, double dt, double w) {
    const Grid& g = f.grid;
    const auto& k2 = detail::k2_table(g);
    std::int32_t maxk2 = 0;
    for (auto v : k2) maxk2 = std::max(maxk2, v);
    const double dk2 = g.dk() * g.dk();
    std::vector<double> table(maxk2 + 1);
    for (std::int32_t v = 0; v <= maxk2; ++v) table[v] = w * std::exp(-dk2 * v * dt);
    for (int c = 0; c < f.components; ++c) {
        const cplx* src = f.component(c);
        cplx* dst = out.component(c);
        for (std::size_t m = 0; m < g.modes(); ++m) dst[m] += src[m] * table[k2[m]];
    }
}

// Quadrature of integral_{t_a}^{t_b} e^{(t_out - tau) D} N(tau) dtau added
// into acc, where N is the nonlinear term of the linearly interpolated
// trajectory values on the base interval [t_i, t_{i+1}].
void accumulate_interval(SpectralField& acc, const Grid& g, const PhysState& ua,
                         const PhysState& ub, const PhysState& va, const PhysState& vb,
                         bool same_input, double t_i, double t_ip1, double t_a,
                         double t_b, double t_out, const QuadratureSpec& quad) {
    const GaussRule& rule = gauss_legendre_unit(quad.gauss_points);
    const double base = t_ip1 - t_i;
    const double width = (t_b - t_a) / quad.panels_per_interval;
    for (int pl = 0; pl < quad.panels_per_interval; ++pl) {
        double lo = t_a + pl * width;
        for (int gq = 0; gq < quad.gauss_points; ++gq) {
            double tau = lo + rule.nodes[gq] * width;
            double lam = (tau - t_i) / base;
            PhysState up = lerp_physical(ua, ub, lam);
            SpectralField N =
                same_input ? detail::nonlinear_from_physical(g, up, up)
                           : detail::nonlinear_from_physical(g, up, lerp_physical(va, vb, lam));
            add_heated(acc, N, t_out - tau, rule.weights[gq] * width);
        }
    }
}

}  // namespace

SpectralField duhamel_bilinear(const Trajectory& u, const Trajectory& v, double t,
                               const QuadratureSpec& quad) {
    check_pair(u, v);
    quad.validate();
    if (t < 0.0 || t > u.horizon() * (1.0 + 1e-12)) {
        throw Error("duhamel_bilinear: t outside the trajectory span");
    }
    const Grid& g = u.grid();
    const bool same = &u == &v;

    SpectralField acc(g, g.d);
    if (t == 0.0) return acc;

    PhysState ua = to_physical(u.states[0]);
    PhysState va = same ? PhysState{} : to_physical(v.states[0]);
    for (std::size_t i = 0; i + 1 < u.nodes() && u.times[i] < t; ++i) {
        PhysState ub = to_physical(u.states[i + 1]);
        PhysState vb = same ? PhysState{} : to_physical(v.states[i + 1]);
        double seg_end = std::min(u.times[i + 1], t);
        accumulate_interval(acc, g, ua, ub, same ? ua : va, same ? ub : vb, same,
                            u.times[i], u.times[i + 1], u.times[i], seg_end, t, quad);
        ua = std::move(ub);
        if (!same) va = std::move(vb);
    }
    return acc;
}

Trajectory bilinear_trajectory(const Trajectory& u, const Trajectory& v,
                               const QuadratureSpec& quad) {
    check_pair(u, v);
    quad.validate();
    const Grid& g = u.grid();
    const bool same = &u == &v;

    Trajectory out;
    out.times = u.times;
    out.states.reserve(u.nodes());
    out.states.emplace_back(g, g.d);  // node 0: empty integral

    SpectralField acc(g, g.d);
    PhysState ua = to_physical(u.states[0]);
    PhysState va = same ? PhysState{} : to_physical(v.states[0]);
    for (std::size_t i = 0; i + 1 < u.nodes(); ++i) {
        double dt = u.times[i + 1] - u.times[i];
        // carry the accumulated integral forward under the heat flow
        SpectralField next(g, g.d);
        add_heated(next, acc, dt, 1.0);
        acc = std::move(next);

        PhysState ub = to_physical(u.states[i + 1]);
        PhysState vb = same ? PhysState{} : to_physical(v.states[i + 1]);
        accumulate_interval(acc, g, ua, ub, same ? ua : va, same ? ub : vb, same,
                            u.times[i], u.times[i + 1], u.times[i], u.times[i + 1],
                            u.times[i + 1], quad);
        out.states.push_back(acc);
        ua = std::move(ub);
        if (!same) va = std::move(vb);
    }
    return out;
}

namespace {

int default_kernel_n(int d) {
    switch (d) {
        case 2: return 512;
        case 3: return 256;
        default: return 48;
    }
}

// Quintic Lagrange interpolation of y at fractional index x (clamped
// stencil); the kernel tail needs the extra order at coarse spacings.
double interp_line(const std::vector<double>& y, double x) {
    constexpr int pts = 6;
    int i0 = static_cast<int>(std::floor(x)) - pts / 2 + 1;
    i0 = std::max(0, std::min<int>(i0, static_cast<int>(y.size()) - pts));
    double r = 0.0;
    for (int a = 0; a < pts; ++a) {
        double l = 1.0;
        for (int b = 0; b < pts; ++b) {
            if (a != b) l *= (x - (i0 + b)) / double(a - b);
        }
        r += l * y[i0 + a];
    }
    return r;
}

}  // namespace

KernelReport kernel_decay_check(int d, const std::vector<double>& radii, int n,
                                double box) {
    if (d < 2 || d > 4) throw Error("d out of range (need 2 <= d <= 4)");
    if (radii.empty()) throw Error("radii must be nonempty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw Error("radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1])) throw Error("radii must be ascending");
    }
    if (n == 0) n = default_kernel_n(d);
    if (box == 0.0) box = 32.0 * pi;
    if (n < 16 || n % 2 != 0) throw Error("kernel grid n must be even and >= 16");
    if (radii.back() > 0.25 * box) {
        throw Error("radius beyond the grid's reliable window (box/4)");
    }

    const double dxi = two_pi / box;  // frequency step
    const double dx = box / n;
    std::size_t modes = 1;
    for (int a = 0; a < d; ++a) modes *= static_cast<std::size_t>(n);

    // xi components and the shared Gaussian profile per mode
    std::vector<double> xi_axis(n);
    for (int i = 0; i < n; ++i) xi_axis[i] = dxi * (i < n / 2 ? i : i - n);

    std::vector<float> gauss(modes);
    std::vector<float> xi2(modes);
    {
        for (std::size_t m = 0; m < modes; ++m) {
            std::size_t rem = m;
            double s2 = 0.0;
            for (int a = d - 1; a >= 0; --a) {
                double x = xi_axis[rem % n];
                s2 += x * x;
                rem /= n;
            }
            xi2[m] = static_cast<float>(s2);
            gauss[m] = static_cast<float>(std::exp(-s2));
        }
    }

    // accumulate |K|^2 over the d^3 tensor components
    const double norm_factor = std::pow(two_pi, -d) * std::pow(dxi, d);
    // (2 pi)^{-d/2} from the inverse transform times the (2 pi)^{-d/2}
    // carried inside K-hat, and dxi^d from the frequency quadrature.
    std::vector<double> acc(modes, 0.0);
    std::vector<cplx> work(modes);

    Grid kg{d, n, box};  // index decoding + DFT geometry only

    // K-hat is symmetric in (k, j), so the off-diagonal pairs count twice.
    std::vector<int> idx(d, 0);
    for (int l = 0; l < d; ++l) {
        for (int kc = 0; kc < d; ++kc) {
            for (int j = kc; j < d; ++j) {
                std::fill(idx.begin(), idx.end(), 0);
                const double kron = (j == kc) ? 1.0 : 0.0;
                const double mult = (j == kc) ? 1.0 : 2.0;
                for (std::size_t m = 0; m < modes; ++m) {
                    if (gauss[m] < 1e-30f || xi2[m] == 0.0f) {
                        work[m] = cplx(0.0, 0.0);
                    } else {
                        double xl = xi_axis[idx[l]];
                        double xk = xi_axis[idx[kc]];
                        double xj = xi_axis[idx[j]];
                        double proj = kron - xj * xk / double(xi2[m]);
                        work[m] = cplx(0.0, double(gauss[m]) * proj * xl * norm_factor);
                    }
                    for (int a = d - 1; a >= 0; --a) {  // odometer step
                        if (++idx[a] < n) break;
                        idx[a] = 0;
                    }
                }
                detail::dft_inplace(kg, work.data(), 1);
                for (std::size_t m = 0; m < modes; ++m) {
                    acc[m] += mult * std::norm(work[m]);
                }
            }
        }
    }

    // |K| along lattice directions: axis, face diagonal, body diagonal
    std::vector<std::vector<int>> dirs;
    dirs.push_back(std::vector<int>(d, 0));
    dirs.back()[0] = 1;
    if (d >= 2) {
        std::vector<int> v(d, 0);
        v[0] = v[1] = 1;
        dirs.push_back(v);
    }
    if (d >= 3) {
        std::vector<int> v(d, 0);
        v[0] = v[1] = v[2] = 1;
        dirs.push_back(v);
    }

    KernelReport rep;
    rep.radii = radii;
    rep.d = d;
    rep.grid_n = n;
    rep.box = box;
    rep.kernel_magnitudes.resize(radii.size(), 0.0);

    const int line_len = n / 4 + 4;
    for (const auto& v : dirs) {
        double step = 0.0;
        for (int a = 0; a < d; ++a) step += double(v[a]) * v[a];
        step = std::sqrt(step) * dx;
        std::vector<double> line(line_len);
        std::vector<int> kv(d);
        for (int m = 0; m < line_len; ++m) {
            for (int a = 0; a < d; ++a) {
                kv[a] = v[a] * m;
                if (kv[a] >= n / 2) kv[a] -= n;  // stay in signed range
            }
            line[m] = std::sqrt(acc[kg.flat_index(kv.data())]);
        }
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            double x = radii[ri] / step;
            if (x > line_len - 2.5) throw Error("radius beyond the grid's reliable window");
            rep.kernel_magnitudes[ri] =
                std::max(rep.kernel_magnitudes[ri], std::abs(interp_line(line, x)));
        }
    }

    rep.fitted_c = 0.0;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        rep.fitted_c = std::max(rep.fitted_c, rep.kernel_magnitudes[ri] *
                                                  std::pow(1.0 + radii[ri], d + 1));
    }
    rep.bound_values.resize(radii.size());
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        rep.bound_values[ri] = rep.fitted_c * std::pow(1.0 + radii[ri], -(d + 1));
    }
    return rep;
}

std::string kernel_csv(const KernelReport& rep) {
    std::string out = "r,|K|,bound\n";
    char buf[160];
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", rep.radii[i],
                      rep.kernel_magnitudes[i], rep.bound_values[i]);
        out += buf;
    }
    return out;
}

}  // namespace critflow
