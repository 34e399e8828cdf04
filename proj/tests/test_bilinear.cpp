#include <doctest.h>

#include <cmath>

#include "critflow/bilinear.hpp"
#include "critflow/operators.hpp"
#include "oracles.hpp"

using namespace critflow;

namespace {

Grid g32() { return make_grid(3, 32, two_pi); }

Trajectory constant_traj(const SpectralField& f, double T, int intervals) {
    Trajectory traj;
    traj.times = uniform_times(T, intervals);
    traj.states.assign(traj.times.size(), f);
    return traj;
}

// Exact stationary-input Duhamel: B(t) = (1 - e^{-t |kappa|^2}) / |kappa|^2
// times the projected divergence, mode-wise.  The interaction of
// u = (0, sin x1, 0) and v = (sin x2, 0, 0) lives on k = (s1, s2, 0) with
// |kappa|^2 = 2 and P div(u (x) v) = (i s1 / 8, -i s2 / 8, 0).
SpectralField stationary_closed_form(const Grid& g, double t) {
    SpectralField expect(g, 3);
    double factor = (1.0 - std::exp(-2.0 * t)) / 2.0;
    for (int s1 : {-1, 1}) {
        for (int s2 : {-1, 1}) {
            int kv[3] = {s1, s2, 0};
            std::size_t m = g.flat_index(kv);
            expect.at(0, m) = factor * cplx(0.0, s1 / 8.0);
            expect.at(1, m) = factor * cplx(0.0, -s2 / 8.0);
        }
    }
    return expect;
}

}  // namespace

TEST_CASE("duhamel on zero input vanishes") {
    Grid g = g32();
    Trajectory z = zero_trajectory(SpectralField(g, 3), uniform_times(1.0, 4));
    Trajectory u = constant_traj(oracle::single_sin(g, 3, 1, {1, 0, 0}, 1.0), 1.0, 4);
    QuadratureSpec quad{2, 4};
    SpectralField zero(g, 3);
    CHECK(oracle::linf_diff(duhamel_bilinear(z, u, 1.0, quad), zero) == 0.0);
    CHECK(oracle::linf_diff(duhamel_bilinear(u, z, 0.5, quad), zero) == 0.0);
}

TEST_CASE("stationary interaction matches the closed form") {
    Grid g = g32();
    Trajectory u = constant_traj(oracle::single_sin(g, 3, 1, {1, 0, 0}, 1.0), 1.0, 1);
    Trajectory v = constant_traj(oracle::single_sin(g, 3, 0, {0, 1, 0}, 1.0), 1.0, 1);
    QuadratureSpec quad{8, 4};

    for (double t : {0.37, 1.0}) {
        SpectralField got = duhamel_bilinear(u, v, t, quad);
        CHECK(oracle::rel_linf_diff(got, stationary_closed_form(g, t)) < 1e-10);
        CHECK(spectral_divergence(got) < 1e-12);
    }
    CHECK_THROWS_WITH_AS(duhamel_bilinear(u, v, 1.5, quad), doctest::Contains("span"),
                         Error);
}

TEST_CASE("trajectory evaluation matches the closed form node-wise") {
    Grid g = g32();
    Trajectory u = constant_traj(oracle::single_sin(g, 3, 1, {1, 0, 0}, 1.0), 1.0, 8);
    Trajectory v = constant_traj(oracle::single_sin(g, 3, 0, {0, 1, 0}, 1.0), 1.0, 8);
    Trajectory B = bilinear_trajectory(u, v, QuadratureSpec{8, 4});

    SpectralField zero(g, 3);
    CHECK(oracle::linf_diff(B.states[0], zero) == 0.0);
    for (std::size_t i = 1; i < B.nodes(); ++i) {
        CHECK(oracle::rel_linf_diff(B.states[i], stationary_closed_form(g, B.times[i])) <
              1e-8);
        CHECK(spectral_divergence(B.states[i]) < 1e-12);
    }
}

TEST_CASE("bilinearity holds to quadrature linearity") {
    Grid g = g32();
    const std::vector<double> profile = {0.0, 1.0, 0.5};
    Trajectory u = heat_trajectory(random_divfree_field(g, profile, 3),
                                   uniform_times(0.5, 6));
    Trajectory w = heat_trajectory(random_divfree_field(g, profile, 4),
                                   uniform_times(0.5, 6));
    Trajectory v = heat_trajectory(random_divfree_field(g, profile, 5),
                                   uniform_times(0.5, 6));
    QuadratureSpec quad{2, 4};

    SpectralField buv = duhamel_bilinear(u, v, 0.5, quad);
    SpectralField bwv = duhamel_bilinear(w, v, 0.5, quad);
    Trajectory uw = traj_lincomb(2.0, u, -3.0, w);
    SpectralField combined = duhamel_bilinear(uw, v, 0.5, quad);
    SpectralField expect = 2.0 * buv;
    expect -= 3.0 * bwv;
    CHECK(oracle::rel_linf_diff(combined, expect) < 1e-12);

    SpectralField scaled = duhamel_bilinear(traj_lincomb(2.0, u, 0.0, u), v, 0.5, quad);
    CHECK(oracle::rel_linf_diff(scaled, 2.0 * buv) < 1e-12);
}

TEST_CASE("symmetric path agrees with the general path") {
    Grid g = g32();
    Trajectory u = heat_trajectory(random_divfree_field(g, {0.0, 1.0, 0.5}, 9),
                                   uniform_times(0.5, 6));
    Trajectory ucopy = u;
    QuadratureSpec quad{2, 4};
    Trajectory sym = bilinear_trajectory(u, u, quad);        // same-object shortcut
    Trajectory gen = bilinear_trajectory(u, ucopy, quad);    // general path
    for (std::size_t i = 0; i < sym.nodes(); ++i) {
        CHECK(oracle::rel_linf_diff(sym.states[i], gen.states[i]) < 1e-13);
    }
}

TEST_CASE("heat-factor quadrature converges at gauss order") {
    Grid g = g32();
    Trajectory u = constant_traj(oracle::single_sin(g, 3, 1, {1, 0, 0}, 1.0), 1.0, 1);
    Trajectory v = constant_traj(oracle::single_sin(g, 3, 0, {0, 1, 0}, 1.0), 1.0, 1);
    SpectralField exact = stationary_closed_form(g, 1.0);

    auto err = [&](int panels) {
        SpectralField got = duhamel_bilinear(u, v, 1.0, QuadratureSpec{panels, 2});
        return oracle::rel_linf_diff(got, exact);
    };
    double e1 = err(1), e2 = err(2);
    CHECK(e1 > 1e-13);  // measurable above roundoff
    double order = std::log2(e1 / e2);
    CHECK(order >= 3.0);
}

TEST_CASE("grid and time-grid mismatches are rejected") {
    Grid g = g32();
    Grid h = make_grid(3, 16, two_pi);
    Trajectory a = constant_traj(oracle::single_sin(g, 3, 1, {1, 0, 0}, 1.0), 1.0, 2);
    Trajectory b = constant_traj(oracle::single_sin(h, 3, 1, {1, 0, 0}, 1.0), 1.0, 2);
    QuadratureSpec quad;
    CHECK_THROWS_WITH_AS(bilinear_trajectory(a, b, quad), doctest::Contains("grid"),
                         Error);
    Trajectory c = constant_traj(oracle::single_sin(g, 3, 1, {1, 0, 0}, 1.0), 1.0, 4);
    CHECK_THROWS_WITH_AS(bilinear_trajectory(a, c, quad), doctest::Contains("time grid"),
                         Error);
}

TEST_CASE("kernel decay fit and refinement stability") {
    // sample radii away from the origin so both resolutions resolve the tail
    std::vector<double> radii = {2.0, 4.0, 8.0};
    KernelReport coarse = kernel_decay_check(3, radii, 128);
    KernelReport fine = kernel_decay_check(3, radii, 256);

    CHECK(coarse.fitted_c > 0.0);
    CHECK(std::isfinite(coarse.fitted_c));
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(coarse.kernel_magnitudes[i] <= coarse.bound_values[i] * (1.0 + 1e-12));
    }
    // decay: |K| at r = 8 below |K| at r = 2
    CHECK(fine.kernel_magnitudes.back() < fine.kernel_magnitudes.front());
    // doubling the resolution moves the fitted constant by <= 10%
    CHECK(std::abs(fine.fitted_c - coarse.fitted_c) <= 0.10 * coarse.fitted_c);

    CHECK_THROWS_WITH_AS(kernel_decay_check(3, {1.0, 0.5}, 64),
                         doctest::Contains("ascending"), Error);
    CHECK_THROWS_WITH_AS(kernel_decay_check(3, {1.0, 64.0}, 64),
                         doctest::Contains("reliable window"), Error);
}
