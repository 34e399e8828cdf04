#include "critflow/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "critflow/operators.hpp"
#include "critflow/parallel.hpp"
#include "critflow/rng.hpp"

namespace critflow {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw Error(msg);
}

SpectralField pointwise_product(const SpectralField& u, const SpectralField& v) {
    const Grid& g = u.grid;
    require(v.grid == g, "product: grid mismatch");
    require(u.components == 1 && v.components == 1,
            "product estimate needs scalar fields");
    std::vector<double> a = physical_samples(u, 0);
    std::vector<double> b = physical_samples(v, 0);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return dealias_two_thirds(field_from_physical(g, 1, a));
}

}  // namespace

double product_estimate_ratio(const SpectralField& u, const SpectralField& v, double s,
                              double p, double q, double* removed_mean) {
    const double d = u.grid.d;
    require(s >= 0.0 && s < d, "product estimate hypothesis violated: 0 <= s < d");
    require(s / d < 1.0 / p, "product estimate hypothesis violated: s/d < 1/p");
    require(s / d < 1.0 / q, "product estimate hypothesis violated: s/d < 1/q");
    require(1.0 / p + 1.0 / q < 1.0 + s / d,
            "product estimate hypothesis violated: 1/p + 1/q < 1 + s/d");
    require(is_zero_mean(u, 1e-12) && is_zero_mean(v, 1e-12),
            "product estimate needs zero-mean inputs");

    const double r = 1.0 / (1.0 / p + 1.0 / q - s / d);

    double denom = sobolev_norm(u, s, p, true).value * sobolev_norm(v, s, q, true).value;
    SpectralField uv = remove_mean(pointwise_product(u, v), removed_mean);
    double numer = sobolev_norm(uv, s, r, true).value;
    if (denom == 0.0) throw Error("degenerate sample");
    return numer / denom;
}

void EmbeddingSpec::validate(int d) const {
    if (pair_id == "a1" || pair_id == "a2") {
        require(q > 1.0 && q <= 2.0, "embedding pair (a) requires 1 < q <= 2");
    } else if (pair_id == "b1" || pair_id == "b2") {
        require(q >= 2.0 && !std::isinf(q), "embedding pair (b) requires 2 <= q < inf");
    } else if (pair_id == "c") {
        require(p1 >= 1.0 && p1 < p2, "embedding pair (c) requires 1 <= p1 < p2");
        require(q > 1.0 && !std::isinf(q), "embedding pair (c) requires 1 < q < inf");
    } else if (pair_id == "d") {
        require(s1 > s2, "embedding pair (d) requires s1 > s2");
        require(std::abs((s1 - d / q1) - (s2 - d / q2)) < 1e-12,
                "embedding pair (d) requires s1 - d/q1 = s2 - d/q2");
        require(p >= 1.0, "embedding pair (d) requires p >= 1");
    } else {
        throw Error("unknown embedding pair id (want a1, a2, b1, b2, c, d)");
    }
}

NormSpec EmbeddingSpec::source(int d) const {
    validate(d);
    if (pair_id == "a1") return NormSpec{NormKind::BesovLpHom, s, q, q};
    if (pair_id == "a2") return NormSpec{NormKind::SobolevHom, s, q};
    if (pair_id == "b1") return NormSpec{NormKind::BesovLpHom, s, q, 2.0};
    if (pair_id == "b2") return NormSpec{NormKind::SobolevHom, s, q};
    if (pair_id == "c") return NormSpec{NormKind::BesovLpHom, s, q, p1};
    return NormSpec{NormKind::BesovLpHom, s1, q1, p};
}

NormSpec EmbeddingSpec::target(int d) const {
    validate(d);
    if (pair_id == "a1") return NormSpec{NormKind::SobolevHom, s, q};
    if (pair_id == "a2") return NormSpec{NormKind::BesovLpHom, s, q, 2.0};
    if (pair_id == "b1") return NormSpec{NormKind::SobolevHom, s, q};
    if (pair_id == "b2") return NormSpec{NormKind::BesovLpHom, s, q, q};
    if (pair_id == "c") return NormSpec{NormKind::BesovLpHom, s, q, p2};
    return NormSpec{NormKind::BesovLpHom, s2, q2, p};
}

double embedding_check(const SpectralField& f, const EmbeddingSpec& spec) {
    double src = spatial_norm(f, spec.source(f.grid.d)).value;
    double dst = spatial_norm(f, spec.target(f.grid.d)).value;
    if (src == 0.0) throw Error("degenerate sample");
    return dst / src;
}

HeatEquivalence heat_characterization_equivalence(const SpectralField& f, double s,
                                                  double p, double q, double alpha) {
    HeatEquivalence out;
    out.heat = besov_norm_heat(f, s, p, q, alpha);
    out.lp = besov_norm_lp(f, s, p, q);
    if (out.lp.value == 0.0 && out.heat.value == 0.0) throw Error("degenerate sample");
    if (out.lp.value == 0.0) throw Error("degenerate sample: zero block norm");
    out.ratio = out.heat.value / out.lp.value;
    return out;
}

CaloricReport initial_data_inequality_check(const SpectralField& u0,
                                            const IndexFamily& family, double t_cap) {
    family.validate();
    if (family.name == FamilyName::Generic) {
        throw Error("initial-data lemma needs a named family (Th1, Th5, Th7)");
    }
    if (family.name == FamilyName::Th1 && !(family.q <= 4.0)) {
        throw Error("Th1 caloric lemma requires 2 <= q <= 4");
    }
    if (u0.components != u0.grid.d) throw Error("initial datum must have d components");
    if (!is_zero_mean(u0, 1e-12)) throw Error("initial datum must be zero-mean");
    if (spectral_divergence(u0) > 1e-10) {
        throw Error("initial datum is not divergence-free");
    }

    CaloricReport rep;
    rep.family = family;
    rep.t_cap = t_cap;

    const Trajectory traj = heat_trajectory(u0, caloric_times(t_cap));
    rep.caloric = time_space_norm(traj, family.r, family.spatial_spec()).value;
    rep.besov = besov_norm_lp(u0, family.s - 2.0 / family.r, family.r, family.p).value;
    rep.sobolev = sobolev_norm(u0, family.d / family.q - 1.0, family.q, true).value;

    rep.degenerate = rep.caloric == 0.0 || rep.besov == 0.0 || rep.sobolev == 0.0;
    if (!rep.degenerate) {
        rep.caloric_over_besov = rep.caloric / rep.besov;
        rep.besov_over_caloric = rep.besov / rep.caloric;
        rep.caloric_over_sobolev = rep.caloric / rep.sobolev;
        rep.besov_over_sobolev = rep.besov / rep.sobolev;
    }
    return rep;
}

namespace {

RatioReport make_report(const std::string& id, const Grid& g, int size,
                        std::uint64_t seed) {
    RatioReport rep;
    rep.inequality_id = id;
    rep.ensemble_size = size;
    rep.seed = seed;
    rep.grid_n = g.n;
    rep.box_L = g.box_length;
    return rep;
}

void finalize(RatioReport& rep) {
    rep.max_ratio = 0.0;
    for (double r : rep.ratios) rep.max_ratio = std::max(rep.max_ratio, r);
}

}  // namespace

RatioReport product_estimate_ensemble(const Grid& grid,
                                      const std::vector<double>& shell_profile,
                                      int ensemble_size, std::uint64_t seed, double s,
                                      double p, double q, bool with_refinement) {
    RatioReport rep = make_report("product-Them", grid, ensemble_size, seed);
    rep.ratios.resize(ensemble_size);
    parallel_for(ensemble_size, [&](std::size_t i) {
        SpectralField u = random_scalar_field(grid, shell_profile, derive_seed(seed, 2 * i));
        SpectralField v =
            random_scalar_field(grid, shell_profile, derive_seed(seed, 2 * i + 1));
        rep.ratios[i] = product_estimate_ratio(u, v, s, p, q);
    });
    finalize(rep);

    if (with_refinement) {
        Grid fine = make_grid(grid.d, grid.n * 2, grid.box_length);
        double fine_max = 0.0;
        std::vector<double> fine_ratios(ensemble_size);
        parallel_for(ensemble_size, [&](std::size_t i) {
            SpectralField u =
                random_scalar_field(grid, shell_profile, derive_seed(seed, 2 * i));
            SpectralField v =
                random_scalar_field(grid, shell_profile, derive_seed(seed, 2 * i + 1));
            fine_ratios[i] =
                product_estimate_ratio(refine(u, fine.n), refine(v, fine.n), s, p, q);
        });
        for (double r : fine_ratios) fine_max = std::max(fine_max, r);
        rep.refinement_growth = rep.max_ratio > 0.0 ? fine_max / rep.max_ratio : 0.0;
    }
    return rep;
}

RatioReport embedding_ensemble(const Grid& grid, const std::vector<double>& shell_profile,
                               int ensemble_size, std::uint64_t seed,
                               const EmbeddingSpec& spec, bool with_refinement) {
    RatioReport rep =
        make_report("embedding-" + spec.pair_id, grid, ensemble_size, seed);
    rep.ratios.resize(ensemble_size);
    parallel_for(ensemble_size, [&](std::size_t i) {
        SpectralField f = random_scalar_field(grid, shell_profile, derive_seed(seed, i));
        rep.ratios[i] = embedding_check(f, spec);
    });
    finalize(rep);

    if (with_refinement) {
        Grid fine = make_grid(grid.d, grid.n * 2, grid.box_length);
        double fine_max = 0.0;
        std::vector<double> fine_ratios(ensemble_size);
        parallel_for(ensemble_size, [&](std::size_t i) {
            SpectralField f =
                random_scalar_field(grid, shell_profile, derive_seed(seed, i));
            fine_ratios[i] = embedding_check(refine(f, fine.n), spec);
        });
        for (double r : fine_ratios) fine_max = std::max(fine_max, r);
        rep.refinement_growth = rep.max_ratio > 0.0 ? fine_max / rep.max_ratio : 0.0;
    }
    return rep;
}

RatioReport caloric_ensemble(const Grid& grid, const std::vector<double>& shell_profile,
                             int ensemble_size, std::uint64_t seed,
                             const IndexFamily& family, double t_cap) {
    RatioReport rep = make_report(std::string("caloric-") + family_name_str(family.name),
                                  grid, ensemble_size, seed);
    rep.ratios.resize(2 * ensemble_size);
    std::vector<int> degen(ensemble_size, 0);
    parallel_for(ensemble_size, [&](std::size_t i) {
        SpectralField u0 = random_divfree_field(grid, shell_profile, derive_seed(seed, i));
        CaloricReport cr = initial_data_inequality_check(u0, family, t_cap);
        if (cr.degenerate) {
            degen[i] = 1;
            rep.ratios[2 * i] = 0.0;
            rep.ratios[2 * i + 1] = 0.0;
        } else {
            rep.ratios[2 * i] = cr.caloric_over_besov;
            rep.ratios[2 * i + 1] = cr.besov_over_caloric;
        }
    });
    for (int dgn : degen) rep.degenerate_count += dgn;
    finalize(rep);
    return rep;
}

RatioReport heat_equiv_ensemble(const Grid& grid, const std::vector<double>& shell_profile,
                                int ensemble_size, std::uint64_t seed, double s, double p,
                                double q, double alpha) {
    RatioReport rep = make_report("heat-vs-lp", grid, ensemble_size, seed);
    rep.ratios.resize(ensemble_size);
    parallel_for(ensemble_size, [&](std::size_t i) {
        SpectralField f = random_scalar_field(grid, shell_profile, derive_seed(seed, i));
        rep.ratios[i] = heat_characterization_equivalence(f, s, p, q, alpha).ratio;
    });
    finalize(rep);
    return rep;
}

std::string ratio_report_csv(const RatioReport& rep) {
    std::string out = "sample,ratio\n";
    char buf[96];
    for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, rep.ratios[i]);
        out += buf;
    }
    return out;
}

}  // namespace critflow
