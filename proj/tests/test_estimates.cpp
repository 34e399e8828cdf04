#include <doctest.h>

#include <cmath>
#include <tuple>
#include <vector>

#include "critflow/estimates.hpp"
#include "critflow/operators.hpp"
#include "oracles.hpp"

using namespace critflow;

namespace {
Grid g32() { return make_grid(3, 32, two_pi); }
Grid g16() { return make_grid(3, 16, two_pi); }
const std::vector<double> test_profile = {0.0, 1.0, 0.5, 0.25};
}  // namespace

TEST_CASE("product estimate ratio on the sin^2 closed form") {
    Grid g = g32();
    SpectralField u = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);

    double removed = 0.0;
    double got = product_estimate_ratio(u, u, 1.0, 2.0, 2.0, &removed);

    // u^2 = 1/2 - cos(2 x1)/2: mean 1/2 removed; Riesz^1 lifts the rest to
    // cos(2 x1) and 1/r = 1/2 + 1/2 - 1/3 gives r = 3/2.
    CHECK(removed == doctest::Approx(0.5).epsilon(1e-12));
    double numer = oracle::rectangle_lq(
        g, 1.5, [](const std::vector<double>& x) { return std::cos(2.0 * x[0]); });
    double denom = oracle::rectangle_lq(
        g, 2.0, [](const std::vector<double>& x) { return std::sin(x[0]); });
    CHECK(got == doctest::Approx(numer / (denom * denom)).epsilon(1e-6));
}

TEST_CASE("product estimate ratio is homogeneous of degree zero") {
    Grid g = g16();
    SpectralField u = random_scalar_field(g, test_profile, 21);
    SpectralField v = random_scalar_field(g, test_profile, 22);
    double base = product_estimate_ratio(u, v, 1.0, 2.0, 2.0);
    double scaled = product_estimate_ratio(3.0 * u, -0.25 * v, 1.0, 2.0, 2.0);
    CHECK(scaled == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("product estimate hypothesis and degeneracy errors") {
    Grid g = g16();
    SpectralField u = random_scalar_field(g, test_profile, 5);
    SpectralField zero(g, 1);
    CHECK_THROWS_WITH_AS(product_estimate_ratio(zero, u, 1.0, 2.0, 2.0),
                         doctest::Contains("degenerate sample"), Error);
    CHECK_THROWS_WITH_AS(product_estimate_ratio(u, u, 3.0, 2.0, 2.0),
                         doctest::Contains("0 <= s < d"), Error);
    CHECK_THROWS_WITH_AS(product_estimate_ratio(u, u, 2.0, 2.0, 2.0),
                         doctest::Contains("s/d < 1/p"), Error);
    CHECK_THROWS_WITH_AS(product_estimate_ratio(u, u, 0.0, 1.5, 1.5),
                         doctest::Contains("1/p + 1/q < 1 + s/d"), Error);
}

TEST_CASE("embedding pair (a) collapses to a consistency point at q = 2, s = 0") {
    Grid g = g32();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SpectralField f = random_scalar_field(g, test_profile, seed);
        EmbeddingSpec a1;
        a1.pair_id = "a1";
        a1.s = 0.0;
        a1.q = 2.0;
        EmbeddingSpec a2 = a1;
        a2.pair_id = "a2";
        CHECK(embedding_check(f, a1) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(embedding_check(f, a2) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("embedding pair (c) never exceeds one") {
    Grid g = g16();
    EmbeddingSpec c;
    c.pair_id = "c";
    c.s = 0.4;
    c.q = 2.5;
    c.p1 = 2.0;
    c.p2 = 4.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SpectralField f = random_scalar_field(g, test_profile, seed);
        CHECK(embedding_check(f, c) <= 1.0 + 1e-12);
    }
}

TEST_CASE("embedding pair (d) is finite and refinement-stable") {
    Grid g = g32();
    EmbeddingSpec d;
    d.pair_id = "d";
    d.s1 = 1.0;
    d.q1 = 2.0;
    d.s2 = 0.5;
    d.q2 = 3.0;  // s - d/q matches: 1 - 3/2 = 1/2 - 1
    d.p = 2.0;

    std::vector<double> two_shell = {0.0, 1.0, 0.0, 0.5};
    RatioReport rep = embedding_ensemble(g, two_shell, 6, 7, d, true);
    CHECK(rep.max_ratio > 0.0);
    CHECK(std::isfinite(rep.max_ratio));
    CHECK(rep.refinement_growth > 0.0);
    CHECK(rep.refinement_growth <= 1.5);

    EmbeddingSpec bad = d;
    bad.q2 = 2.5;
    SpectralField f = random_scalar_field(g, test_profile, 2);
    CHECK_THROWS_WITH_AS(embedding_check(f, bad),
                         doctest::Contains("s1 - d/q1 = s2 - d/q2"), Error);
    EmbeddingSpec badq;
    badq.pair_id = "a1";
    badq.s = 0.0;
    badq.q = 3.0;
    CHECK_THROWS_WITH_AS(embedding_check(f, badq), doctest::Contains("1 < q <= 2"),
                         Error);
}

TEST_CASE("heat characterization ratio on the single-mode closed form") {
    Grid g = g32();
    SpectralField f = oracle::single_sin(g, 1, 0, {1, 0, 0}, 1.0);
    HeatEquivalence eq = heat_characterization_equivalence(f, -1.0, 2.0, 2.0, 0.0);
    // heat quantity ||f||/sqrt(2); block norm collapses to ||f||
    CHECK(eq.ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));

    SpectralField zero(g, 1);
    CHECK_THROWS_WITH_AS(heat_characterization_equivalence(zero, -1.0, 2.0, 2.0, 0.0),
                         doctest::Contains("degenerate sample"), Error);
}

TEST_CASE("heat characterization ratio is stable under dyadic dilation") {
    Grid g = g32();
    std::vector<double> low_shells = {0.0, 1.0, 0.5};
    for (auto [s, p, alpha] : std::vector<std::tuple<double, double, double>>{
             {-1.0, 2.0, 0.0}, {0.5, 4.0, 1.0}}) {
        SpectralField f = random_scalar_field(g, low_shells, 31);
        double base = heat_characterization_equivalence(f, s, p, 2.0, alpha).ratio;
        double shifted =
            heat_characterization_equivalence(shift_octave(f), s, p, 2.0, alpha).ratio;
        CHECK(std::abs(shifted - base) <= 0.2 * base);
    }
}

TEST_CASE("heat/lp ratio bracket over a small ensemble") {
    Grid g = g16();
    RatioReport rep = heat_equiv_ensemble(g, test_profile, 20, 3, -1.0, 2.0, 2.0, 0.0);
    CHECK(rep.max_ratio <= 10.0);
    for (double r : rep.ratios) CHECK(r >= 0.1);
}

TEST_CASE("caloric lemma quantities for the shear datum, family Th1") {
    Grid g = g32();
    IndexFamily fam = IndexFamily::th1(3, 3.0);  // r = 4, p = 6, s = 0
    SpectralField u0 = make_shear_field(g, 1.0);
    CaloricReport rep = initial_data_inequality_check(u0, fam);
    REQUIRE_FALSE(rep.degenerate);

    // single |kappa| = 1 mode: phi(t) = e^{-t} || |sin| ||_{L^6}
    double c6 = oracle::rectangle_lq(
        g, 6.0, [](const std::vector<double>& x) { return std::sin(x[0]); });
    std::vector<double> times = caloric_times(50.0);
    std::vector<double> phi(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) phi[i] = c6 * std::exp(-times[i]);
    double expect = oracle::trapezoid_lr(times, phi, fam.r);
    CHECK(rep.caloric == doctest::Approx(expect).epsilon(1e-6));

    // all three quantities are 1-homogeneous: quotients scale-invariant
    CaloricReport scaled = initial_data_inequality_check(7.5 * u0, fam);
    CHECK(scaled.caloric_over_besov ==
          doctest::Approx(rep.caloric_over_besov).epsilon(1e-12));
    CHECK(scaled.besov_over_sobolev ==
          doctest::Approx(rep.besov_over_sobolev).epsilon(1e-12));
}

TEST_CASE("caloric check flags degenerate data and wrong families") {
    Grid g = g16();
    CaloricReport rep =
        initial_data_inequality_check(SpectralField(g, 3), IndexFamily::th1(3, 3.0));
    CHECK(rep.degenerate);

    SpectralField u0 = make_shear_field(g, 1.0);
    CHECK_THROWS_WITH_AS(
        initial_data_inequality_check(u0, IndexFamily::generic(3, 0.0, 4.0, 8.0)),
        doctest::Contains("named family"), Error);
}

TEST_CASE("caloric equivalence is two-sided on ensembles for all families") {
    Grid g = g16();
    for (const IndexFamily& fam : {IndexFamily::th1(3, 3.0), IndexFamily::th5(3, 2.5, 3.0),
                                   IndexFamily::th7(3, 1.5)}) {
        RatioReport rep = caloric_ensemble(g, test_profile, 8, 11, fam);
        CHECK(rep.degenerate_count == 0);
        CHECK(rep.max_ratio <= 20.0);
        for (double r : rep.ratios) CHECK(r >= 1.0 / 20.0);
    }
}

TEST_CASE("product ensemble max ratio is refinement-stable") {
    Grid g = g16();
    RatioReport rep =
        product_estimate_ensemble(g, test_profile, 8, 13, 1.0, 2.0, 2.0, true);
    CHECK(rep.max_ratio > 0.0);
    CHECK(std::isfinite(rep.max_ratio));
    CHECK(rep.refinement_growth <= 1.5);

    std::string csv = ratio_report_csv(rep);
    CHECK(csv.substr(0, 12) == "sample,ratio");
}
