#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "critflow/norms.hpp"
#include "critflow/operators.hpp"
#include "oracles.hpp"

using namespace critflow;

namespace {
Grid g32() { return make_grid(3, 32, two_pi); }
const std::vector<double> test_profile = {0.0, 1.0, 0.5, 0.25};

// || sin x1 ||_{L^2([0,2pi)^3)} = (2 pi)^{3/2} / sqrt(2)
const double sin_l2 = std::pow(two_pi, 1.5) / std::sqrt(2.0);
}  // namespace

TEST_CASE("lebesgue norm against closed-form integrals") {
    Grid g = g32();
    CHECK(lebesgue_norm(SpectralField(g, 1), 2.0).value == 0.0);

    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);
    CHECK(lebesgue_norm(f, 2.0).value == doctest::Approx(sin_l2).epsilon(1e-12));
    CHECK(sin_l2 == doctest::Approx(11.13665).epsilon(1e-5));

    SpectralField c = oracle::constant_field(g, 1, -2.5);
    CHECK(lebesgue_norm(c, 3.0).value == doctest::Approx(2.5 * two_pi).epsilon(1e-12));

    CHECK_THROWS_AS(lebesgue_norm(f, 1.0), Error);
    CHECK_THROWS_AS(lebesgue_norm(f, 0.5), Error);
}

TEST_CASE("lebesgue norm matches an independent dense quadrature") {
    Grid g = g32();
    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);
    double direct = oracle::rectangle_lq(
        g, 1.8, [](const std::vector<double>& x) { return std::sin(x[0]); });
    CHECK(lebesgue_norm(f, 1.8).value == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("parseval consistency at q = 2") {
    Grid g = g32();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SpectralField f = random_divfree_field(g, test_profile, seed);
        double l2 = 0.0;
        for (const auto& z : f.coeffs) l2 += std::norm(z);
        l2 = std::sqrt(l2 * g.volume());
        CHECK(lebesgue_norm(f, 2.0).value == doctest::Approx(l2).epsilon(1e-12));
    }
}

TEST_CASE("sobolev norms on closed-form modes") {
    Grid g = g32();
    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);
    SpectralField f2 = oracle::single_sin(g, 1, 0, {2, 0, 0}, 1.0);

    CHECK(sobolev_norm(f, 0.0, 2.0, true).value ==
          doctest::Approx(lebesgue_norm(f, 2.0).value).epsilon(1e-12));
    CHECK(sobolev_norm(f2, 1.0, 2.0, true).value ==
          doctest::Approx(2.0 * sin_l2).epsilon(1e-12));
    CHECK(sobolev_norm(f, 1.0, 2.0, false).value ==
          doctest::Approx(std::sqrt(2.0) * sin_l2).epsilon(1e-12));

    SpectralField biased = f;
    biased.at(0, 0) = cplx(1.0, 0.0);
    CHECK_THROWS_WITH_AS(sobolev_norm(biased, 0.5, 2.0, true),
                         doctest::Contains("zero-mean"), Error);
}

TEST_CASE("heat semigroup never grows sobolev norms") {
    Grid g = g32();
    const double slack = 1.0 + 1e-8;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SpectralField f = random_divfree_field(g, test_profile, seed);
        for (double t : {0.01, 0.1, 1.0, 10.0}) {
            SpectralField ft = heat_semigroup(f, t);
            for (auto [s, p] : {std::pair{0.0, 2.0}, {0.5, 2.0}, {1.0, 3.0}}) {
                CHECK(sobolev_norm(ft, s, p, true).value <=
                      slack * sobolev_norm(f, s, p, true).value);
                CHECK(sobolev_norm(ft, s, p, false).value <=
                      slack * sobolev_norm(f, s, p, false).value);
            }
        }
    }
}

TEST_CASE("critical scaling invariance of the H-dot^{d/2-1} norm") {
    Grid g = g32();
    for (std::uint64_t seed = 2; seed <= 6; ++seed) {
        SpectralField f = random_divfree_field(g, test_profile, seed);
        SpectralField f2 = 2.0 * dilate(f, 2);  // 2 f(2x) on the half box
        double a = sobolev_norm(f, 0.5, 2.0, true).value;
        double b = sobolev_norm(f2, 0.5, 2.0, true).value;
        CHECK(b == doctest::Approx(a).epsilon(1e-10));
    }
}

TEST_CASE("littlewood-paley besov norm block structure") {
    Grid g = g32();
    CHECK(besov_norm_lp(SpectralField(g, 1), 0.7, 2.0, 2.0).value == 0.0);

    // single mode |k| = 1 collapses to its block: value = L^2 norm
    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);
    for (double s : {-1.0, 0.0, 0.5}) {
        for (double p : {1.0, 2.0, 4.0}) {
            CHECK(besov_norm_lp(f, s, p, 2.0).value ==
                  doctest::Approx(sin_l2).epsilon(1e-12));
        }
    }

    // two separated modes, p = inf: the sup of the block norms
    SpectralField two = f;
    two += oracle::single_sin(g, 1, 0, {0, 4, 0}, 0.5);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(besov_norm_lp(two, 0.0, inf, 2.0).value ==
          doctest::Approx(sin_l2).epsilon(1e-12));

    SpectralField biased = f;
    biased.at(0, 0) = cplx(1.0, 0.0);
    CHECK_THROWS_WITH_AS(besov_norm_lp(biased, 0.0, 2.0, 2.0),
                         doctest::Contains("zero-mean"), Error);
}

TEST_CASE("besov summation exponent is monotone") {
    Grid g = g32();
    const double inf = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        SpectralField f = random_scalar_field(g, test_profile, seed);
        double prev = besov_norm_lp(f, 0.3, 1.0, 2.5).value;
        for (double p : {1.5, 2.0, 4.0, inf}) {
            double cur = besov_norm_lp(f, 0.3, p, 2.5).value;
            CHECK(cur <= prev * (1.0 + 1e-12));
            prev = cur;
        }
    }
}

TEST_CASE("heat-characterization besov norm against closed forms") {
    Grid g = g32();
    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);

    // s = -1, p = 2, q = 2, alpha = 0: value^2 = ||f||^2 / 2
    CHECK(besov_norm_heat(f, -1.0, 2.0, 2.0, 0.0).value ==
          doctest::Approx(sin_l2 / std::sqrt(2.0)).epsilon(1e-6));

    // s = 1/2, p = 4, q = 2, alpha = 1: value = ||f|| (Gamma(1)/4)^{1/4}
    CHECK(besov_norm_heat(f, 0.5, 4.0, 2.0, 1.0).value ==
          doctest::Approx(sin_l2 / std::sqrt(2.0)).epsilon(1e-6));

    CHECK(besov_norm_heat(SpectralField(g, 1), -1.0, 2.0, 2.0, 0.0).value == 0.0);
    CHECK_THROWS_WITH_AS(besov_norm_heat(f, 1.0, 2.0, 2.0, 1.0),
                         doctest::Contains("characterization hypothesis"), Error);
}

TEST_CASE("heat-characterization quadrature matches a two-mode closed form") {
    Grid g = g32();
    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);
    f += oracle::single_sin(g, 1, 0, {0, 2, 0}, 0.5);
    // value^2 = int phi(t)^2 dt with phi^2 = e^{-2t}||sin||^2 + e^{-8t}||sin/2||^2
    double expect = std::sqrt(sin_l2 * sin_l2 * 0.5 + 0.25 * sin_l2 * sin_l2 / 8.0);
    CHECK(besov_norm_heat(f, -1.0, 2.0, 2.0, 0.0).value ==
          doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("heat-characterization transform path tracks the shell path") {
    Grid g = make_grid(3, 16, two_pi);
    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);
    f += oracle::single_sin(g, 1, 0, {2, 0, 0}, 0.25);
    double fast = besov_norm_heat(f, -1.0, 2.0, 2.0, 0.0).value;
    double slow = besov_norm_heat(f, -1.0, 2.0, 2.0 + 1e-12, 0.0).value;
    CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
}

TEST_CASE("time-space norms on trajectories") {
    Grid g = g32();
    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);
    const double T = 0.7;

    Trajectory cst;
    cst.times = uniform_times(T, 16);
    cst.states.assign(cst.times.size(), f);
    NormSpec l2{NormKind::Lebesgue, 0.0, 2.0};
    for (double r : {1.0, 2.0, 4.0}) {
        CHECK(time_space_norm(cst, r, l2).value ==
              doctest::Approx(std::pow(T, 1.0 / r) * sin_l2).epsilon(1e-12));
    }
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(time_space_norm(cst, inf, l2).value == doctest::Approx(sin_l2).epsilon(1e-12));

    // heat-decay trajectory vs closed form ((1-e^{-2T})/2)^{1/2} ||f||
    Trajectory decay = heat_trajectory(f, uniform_times(T, 2000));
    NormSpec h0{NormKind::SobolevHom, 0.0, 2.0};
    double expect = std::sqrt(0.5 * (1.0 - std::exp(-2.0 * T))) * sin_l2;
    CHECK(time_space_norm(decay, 2.0, h0).value == doctest::Approx(expect).epsilon(1e-6));

    Trajectory zero = zero_trajectory(f, uniform_times(T, 4));
    CHECK(time_space_norm(zero, 2.0, l2).value == 0.0);

    Trajectory empty;
    CHECK_THROWS_WITH_AS(time_space_norm(empty, 2.0, l2), doctest::Contains("empty"),
                         Error);
}

TEST_CASE("norm csv row carries the spec fields") {
    Grid g = g32();
    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);
    NormValue nv = besov_norm_heat(f, -1.0, 2.0, 2.0, 0.0);
    std::string row = norm_csv_row(nv);
    CHECK(row.substr(0, 10) == "besov-heat");
    CHECK(norm_csv_header() == "kind,s,p,q,alpha,value,t_min,t_max,grid_n,box_L");
    CHECK(std::count(row.begin(), row.end(), ',') == 9);
}

TEST_CASE("norm spec validation") {
    NormSpec bad{NormKind::SobolevHom, 2.0, 2.0};
    CHECK_THROWS_WITH_AS(bad.validate(3), doctest::Contains("s < d/q"), Error);
    NormSpec heat{NormKind::BesovHeatHom, 1.0, 2.0, 2.0, 0.5};
    CHECK_THROWS_AS(heat.validate(3), Error);
    NormSpec ok{NormKind::BesovLpHom, 0.0, 2.0, 2.0};
    CHECK_NOTHROW(ok.validate(3));
}
