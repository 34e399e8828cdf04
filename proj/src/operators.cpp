#include "critflow/operators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "critflow/rng.hpp"

namespace critflow {

namespace detail {

const std::vector<std::int32_t>& k2_table(const Grid& g) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::int32_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.d, g.n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<std::int32_t> table(g.modes());
    std::vector<int> kv(g.d);
    for (std::size_t i = 0; i < table.size(); ++i) {
        g.wavevector(i, kv.data());
        std::int32_t k2 = 0;
        for (int a = 0; a < g.d; ++a) k2 += kv[a] * kv[a];
        table[i] = k2;
    }
    return cache.emplace(key, std::move(table)).first->second;
}

const std::vector<std::int32_t>& k_axis_table(const Grid& g) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<std::int32_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.d, g.n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::size_t modes = g.modes();
    std::vector<std::int32_t> table(modes * g.d);
    std::vector<int> kv(g.d);
    for (std::size_t i = 0; i < modes; ++i) {
        g.wavevector(i, kv.data());
        for (int a = 0; a < g.d; ++a) table[a * modes + i] = kv[a];
    }
    return cache.emplace(key, std::move(table)).first->second;
}

}  // namespace detail

namespace {

// Apply a multiplier that depends only on |k|^2; the factor table is built
// once per call over the integer range actually present.
template <typename Fn>
SpectralField apply_radial_multiplier(const SpectralField& f, Fn&& factor_of_k2) {
    const auto& k2 = detail::k2_table(f.grid);
    std::int32_t maxk2 = 0;
    for (auto v : k2) maxk2 = std::max(maxk2, v);
    std::vector<double> table(maxk2 + 1);
    for (std::int32_t v = 0; v <= maxk2; ++v) table[v] = factor_of_k2(v);

    SpectralField out(f.grid, f.components);
    const std::size_t modes = f.modes();
    for (int c = 0; c < f.components; ++c) {
        const cplx* src = f.component(c);
        cplx* dst = out.component(c);
        for (std::size_t i = 0; i < modes; ++i) dst[i] = src[i] * table[k2[i]];
    }
    return out;
}

}  // namespace

SpectralField riesz_potential(const SpectralField& f, double s) {
    if (s < 0.0 && !is_zero_mean(f, 1e-13)) {
        throw Error("nonzero mean under negative Riesz order");
    }
    const double dk2 = f.grid.dk() * f.grid.dk();
    return apply_radial_multiplier(f, [&](std::int32_t k2) {
        if (k2 == 0) return 0.0;  // k = 0 output is 0 for every order
        return std::pow(dk2 * k2, 0.5 * s);
    });
}

SpectralField bessel_potential(const SpectralField& f, double s) {
    const double dk2 = f.grid.dk() * f.grid.dk();
    return apply_radial_multiplier(
        f, [&](std::int32_t k2) { return std::pow(1.0 + dk2 * k2, 0.5 * s); });
}

SpectralField heat_semigroup(const SpectralField& f, double t) {
    if (t < 0.0) throw Error("backward heat flow");
    if (t == 0.0) return f;
    const double dk2 = f.grid.dk() * f.grid.dk();
    return apply_radial_multiplier(
        f, [&](std::int32_t k2) { return std::exp(-dk2 * k2 * t); });
}

SpectralField leray_project(const SpectralField& f) {
    const Grid& g = f.grid;
    if (f.components != g.d) throw Error("leray_project needs a d-component field");
    SpectralField out(g, g.d);
    const std::size_t modes = g.modes();
    std::vector<int> kv(g.d);
    std::vector<cplx> uh(g.d);
    for (std::size_t i = 0; i < modes; ++i) {
        g.wavevector(i, kv.data());
        double k2 = 0.0;
        for (int a = 0; a < g.d; ++a) k2 += double(kv[a]) * kv[a];
        if (k2 == 0.0) {
            for (int c = 0; c < g.d; ++c) out.at(c, i) = f.at(c, i);
            continue;
        }
        cplx kdot(0.0, 0.0);
        for (int c = 0; c < g.d; ++c) {
            uh[c] = f.at(c, i);
            kdot += double(kv[c]) * uh[c];
        }
        kdot /= k2;
        for (int c = 0; c < g.d; ++c) out.at(c, i) = uh[c] - double(kv[c]) * kdot;
    }
    return out;
}

SpectralField gradient(const SpectralField& scalar) {
    const Grid& g = scalar.grid;
    if (scalar.components != 1) throw Error("gradient needs a scalar field");
    SpectralField out(g, g.d);
    const double dk = g.dk();
    std::vector<int> kv(g.d);
    for (std::size_t i = 0; i < g.modes(); ++i) {
        g.wavevector(i, kv.data());
        cplx v = scalar.at(0, i);
        for (int a = 0; a < g.d; ++a) {
            out.at(a, i) = cplx(0.0, kv[a] * dk) * v;
        }
    }
    return out;
}

SpectralField divergence(const SpectralField& vec) {
    const Grid& g = vec.grid;
    if (vec.components != g.d) throw Error("divergence needs a d-component field");
    SpectralField out(g, 1);
    const double dk = g.dk();
    std::vector<int> kv(g.d);
    for (std::size_t i = 0; i < g.modes(); ++i) {
        g.wavevector(i, kv.data());
        cplx acc(0.0, 0.0);
        for (int a = 0; a < g.d; ++a) acc += cplx(0.0, kv[a] * dk) * vec.at(a, i);
        out.at(0, i) = acc;
    }
    return out;
}

double spectral_divergence(const SpectralField& vec) {
    const Grid& g = vec.grid;
    if (vec.components != g.d) throw Error("spectral_divergence needs a d-component field");
    std::vector<int> kv(g.d);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < g.modes(); ++i) {
        g.wavevector(i, kv.data());
        cplx acc(0.0, 0.0);
        double k2 = 0.0, amp = 0.0;
        for (int a = 0; a < g.d; ++a) {
            acc += double(kv[a]) * vec.at(a, i);
            k2 += double(kv[a]) * kv[a];
            amp = std::max(amp, std::abs(vec.at(a, i)));
        }
        worst = std::max(worst, std::abs(acc));
        scale = std::max(scale, std::sqrt(k2) * amp);
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

SpectralField dealias_two_thirds(const SpectralField& f) {
    const Grid& g = f.grid;
    SpectralField out = f;
    const int cutoff = g.n / 3;  // keep |k_a| <= n/3
    std::vector<int> kv(g.d);
    for (std::size_t i = 0; i < g.modes(); ++i) {
        g.wavevector(i, kv.data());
        bool kill = false;
        for (int a = 0; a < g.d; ++a) {
            if (std::abs(kv[a]) > cutoff) kill = true;
        }
        if (kill) {
            for (int c = 0; c < f.components; ++c) out.at(c, i) = cplx(0.0, 0.0);
        }
    }
    return out;
}

namespace detail {

SpectralField nonlinear_from_physical(const Grid& g,
                                      const std::vector<std::vector<double>>& uphys,
                                      const std::vector<std::vector<double>>& vphys) {
    const std::size_t modes = g.modes();
    const double scale = 1.0 / static_cast<double>(modes);
    const double dk = g.dk();
    const int cutoff = g.n / 3;
    const auto& kax = k_axis_table(g);

    std::vector<std::uint8_t> keep(modes, 1);
    for (int a = 0; a < g.d; ++a) {
        const std::int32_t* ka = kax.data() + a * modes;
        for (std::size_t m = 0; m < modes; ++m) {
            if (ka[m] > cutoff || ka[m] < -cutoff) keep[m] = 0;
        }
    }

    SpectralField div(g, g.d);
    std::vector<cplx> prod(modes);
    const bool symmetric = &uphys == &vphys;

    auto contract = [&](int into, int deriv_axis) {
        // div_into += i kappa_deriv * F (dealiased)
        cplx* out = div.component(into);
        const std::int32_t* kj = kax.data() + deriv_axis * modes;
        for (std::size_t m = 0; m < modes; ++m) {
            if (!keep[m]) continue;
            out[m] += cplx(0.0, kj[m] * dk) * prod[m] * scale;
        }
    };

    for (int i = 0; i < g.d; ++i) {
        for (int j = symmetric ? i : 0; j < g.d; ++j) {
            const double* ui = uphys[i].data();
            const double* vj = vphys[j].data();
            for (std::size_t m = 0; m < modes; ++m) prod[m] = cplx(ui[m] * vj[m], 0.0);
            dft_inplace(g, prod.data(), FFTW_FORWARD);
            contract(i, j);
            if (symmetric && j != i) contract(j, i);  // F_ji = F_ij
        }
    }
    return leray_project(div);
}

}  // namespace detail

SpectralField nonlinear_term(const SpectralField& u, const SpectralField& v) {
    const Grid& g = u.grid;
    if (!(v.grid == g)) throw Error("nonlinear_term: grid mismatch");
    if (u.components != g.d || v.components != g.d) {
        throw Error("nonlinear_term needs d-component fields");
    }
    std::vector<std::vector<double>> uphys(g.d);
    for (int c = 0; c < g.d; ++c) uphys[c] = physical_samples(u, c);
    if (&u == &v) return detail::nonlinear_from_physical(g, uphys, uphys);
    std::vector<std::vector<double>> vphys(g.d);
    for (int c = 0; c < g.d; ++c) vphys[c] = physical_samples(v, c);
    return detail::nonlinear_from_physical(g, uphys, vphys);
}

namespace {

SpectralField random_field_impl(const Grid& g, const std::vector<double>& profile,
                                std::uint64_t seed, int components) {
    bool live = false;
    for (double a : profile) {
        if (a < 0.0) throw Error("shell profile amplitudes must be nonnegative");
        if (a > 0.0) live = true;
    }
    if (!live) throw Error("degenerate ensemble: all-zero shell profile");

    const auto& k2 = detail::k2_table(g);
    GaussianRng rng(seed);
    SpectralField f(g, components);
    std::vector<int> kv(g.d), kneg(g.d);

    for (std::size_t i = 0; i < g.modes(); ++i) {
        if (k2[i] == 0) continue;  // zero mean
        std::size_t shell = static_cast<std::size_t>(std::sqrt(double(k2[i])));
        double amp = shell < profile.size() ? profile[shell] : 0.0;
        if (amp == 0.0) continue;

        g.wavevector(i, kv.data());
        bool nyquist = false;
        for (int a = 0; a < g.d; ++a) {
            kneg[a] = -kv[a];
            if (kv[a] == -g.n / 2) nyquist = true;
        }
        if (nyquist) continue;
        std::size_t j = g.flat_index(kneg.data());
        if (j < i) continue;  // conjugate partner fills this mode

        for (int c = 0; c < components; ++c) {
            if (j == i) {
                f.at(c, i) = cplx(amp * rng.next_gaussian(), 0.0);
            } else {
                cplx z(amp * rng.next_gaussian(), amp * rng.next_gaussian());
                z *= std::sqrt(0.5);
                f.at(c, i) = z;
                f.at(c, j) = std::conj(z);
            }
        }
    }
    return f;
}

}  // namespace

SpectralField random_divfree_field(const Grid& grid,
                                   const std::vector<double>& shell_profile,
                                   std::uint64_t seed) {
    return leray_project(random_field_impl(grid, shell_profile, seed, grid.d));
}

SpectralField random_scalar_field(const Grid& grid,
                                  const std::vector<double>& shell_profile,
                                  std::uint64_t seed) {
    return random_field_impl(grid, shell_profile, seed, 1);
}

SpectralField dilate(const SpectralField& f, int m) {
    if (m < 1) throw Error("dilate factor must be a positive integer");
    SpectralField out = f;
    out.grid.box_length = f.grid.box_length / m;
    return out;
}

SpectralField shift_octave(const SpectralField& f) {
    const Grid& g = f.grid;
    SpectralField out(g, f.components);
    const double thresh = 1e-13 * std::max(1.0, max_abs_coeff(f));
    std::vector<int> kv(g.d), k2v(g.d);
    for (std::size_t i = 0; i < g.modes(); ++i) {
        g.wavevector(i, kv.data());
        bool in_band = true;
        for (int a = 0; a < g.d; ++a) {
            if (kv[a] >= g.n / 4 || kv[a] < -g.n / 4) in_band = false;
            k2v[a] = 2 * kv[a];
        }
        if (!in_band) {
            for (int c = 0; c < f.components; ++c) {
                if (std::abs(f.at(c, i)) > thresh) {
                    throw Error("shift_octave: content beyond n/4 would alias");
                }
            }
            continue;
        }
        std::size_t j = g.flat_index(k2v.data());
        for (int c = 0; c < f.components; ++c) out.at(c, j) = f.at(c, i);
    }
    return out;
}

SpectralField refine(const SpectralField& f, int n2) {
    const Grid& g = f.grid;
    if (n2 < g.n) throw Error("refine target must not be coarser");
    Grid g2 = make_grid(g.d, n2, g.box_length);
    if (n2 == g.n) return f;
    SpectralField out(g2, f.components);
    std::vector<int> kv(g.d);
    for (std::size_t i = 0; i < g.modes(); ++i) {
        g.wavevector(i, kv.data());
        std::size_t j = g2.flat_index(kv.data());
        for (int c = 0; c < f.components; ++c) out.at(c, j) = f.at(c, i);
    }
    return out;
}

SpectralField make_shear_field(const Grid& grid, double amplitude) {
    // (0, A sin x1, 0, ...): sin k.x = (e^{ikx} - e^{-ikx}) / 2i
    SpectralField f(grid, grid.d);
    std::vector<int> kv(grid.d, 0);
    kv[0] = 1;
    std::size_t ip = grid.flat_index(kv.data());
    kv[0] = -1;
    std::size_t im = grid.flat_index(kv.data());
    f.at(1, ip) = cplx(0.0, -0.5 * amplitude);
    f.at(1, im) = cplx(0.0, 0.5 * amplitude);
    return f;
}

SpectralField make_taylor_green(const Grid& grid, double amplitude) {
    // u = A (sin x cos y cos z, -cos x sin y cos z, 0): eight exact modes,
    // divergence cancels coefficient-wise.
    if (grid.d != 3) throw Error("taylor-green datum needs d = 3");
    SpectralField f(grid, 3);
    int kv[3];
    for (int s0 : {-1, 1}) {
        for (int s1 : {-1, 1}) {
            for (int s2 : {-1, 1}) {
                kv[0] = s0;
                kv[1] = s1;
                kv[2] = s2;
                std::size_t m = grid.flat_index(kv);
                f.at(0, m) = cplx(0.0, -amplitude * s0 / 8.0);
                f.at(1, m) = cplx(0.0, amplitude * s1 / 8.0);
            }
        }
    }
    return f;
}

}  // namespace critflow
