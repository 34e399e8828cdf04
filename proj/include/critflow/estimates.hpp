#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "critflow/norms.hpp"
#include "critflow/solver.hpp"

namespace critflow {

// Ensemble record for one inequality: per-sample left/right quotients,
// their max, and (optionally) the growth of the max under n -> 2n.
struct RatioReport {
    std::string inequality_id;
    int ensemble_size = 0;
    std::uint64_t seed = 0;
    int grid_n = 0;
    double box_L = 0.0;
    std::vector<double> ratios;
    int degenerate_count = 0;
    double max_ratio = 0.0;
    double refinement_growth = 0.0;  // max_ratio(2n) / max_ratio(n); 0 if unmeasured
};

// ||uv||_{H-dot^s_r} / (||u||_{H-dot^s_p} ||v||_{H-dot^s_q}) for scalar u, v
// with 1/r = 1/p + 1/q - s/d; the product is dealiased and recentred to zero
// mean (removed mass reported through *removed_mean).
double product_estimate_ratio(const SpectralField& u, const SpectralField& v, double s,
                              double p, double q, double* removed_mean = nullptr);

// Embedding quotient ||f||_target / ||f||_source for the implemented pairs.
//   a1: B-dot^{s,q}_q -> H-dot^s_q      (1 < q <= 2)
//   a2: H-dot^s_q     -> B-dot^{s,2}_q  (1 < q <= 2)
//   b1: B-dot^{s,2}_q -> H-dot^s_q      (2 <= q < inf)
//   b2: H-dot^s_q     -> B-dot^{s,q}_q  (2 <= q < inf)
//   c : B-dot^{s,p1}_q -> B-dot^{s,p2}_q  (p1 < p2)
//   d : B-dot^{s1,p}_{q1} -> B-dot^{s2,p}_{q2}  (s1 > s2, s1 - d/q1 = s2 - d/q2)
struct EmbeddingSpec {
    std::string pair_id;  // a1, a2, b1, b2, c, d
    double s = 0.0, q = 2.0;
    double p1 = 1.0, p2 = 2.0;                      // pair c
    double s1 = 0.0, q1 = 2.0, s2 = 0.0, q2 = 2.0;  // pair d
    double p = 2.0;                                 // pair d

    void validate(int d) const;
    NormSpec source(int d) const;
    NormSpec target(int d) const;
};

double embedding_check(const SpectralField& f, const EmbeddingSpec& spec);

struct HeatEquivalence {
    double ratio = 0.0;  // besov_norm_heat / besov_norm_lp
    NormValue heat;
    NormValue lp;
};

HeatEquivalence heat_characterization_equivalence(const SpectralField& f, double s,
                                                  double p, double q, double alpha);

// The three quantities of the family's caloric lemma: the truncated
// [0, t_cap) time-space norm of the heat flow, the matching Besov norm
// B-dot^{s-2/r, r}_p of the datum, and the critical Sobolev norm
// H-dot^{d/q-1}_q, plus their pairwise quotients.
struct CaloricReport {
    IndexFamily family;
    double caloric = 0.0;
    double besov = 0.0;
    double sobolev = 0.0;
    double caloric_over_besov = 0.0;
    double besov_over_caloric = 0.0;
    double caloric_over_sobolev = 0.0;
    double besov_over_sobolev = 0.0;
    bool degenerate = false;
    double t_cap = 0.0;
};

CaloricReport initial_data_inequality_check(const SpectralField& u0,
                                            const IndexFamily& family,
                                            double t_cap = 50.0);

// --- ensemble drivers -------------------------------------------------------

RatioReport product_estimate_ensemble(const Grid& grid,
                                      const std::vector<double>& shell_profile,
                                      int ensemble_size, std::uint64_t seed, double s,
                                      double p, double q, bool with_refinement);

RatioReport embedding_ensemble(const Grid& grid, const std::vector<double>& shell_profile,
                               int ensemble_size, std::uint64_t seed,
                               const EmbeddingSpec& spec, bool with_refinement);

// Two-sided caloric equivalence: ratios holds caloric/besov and
// besov/caloric interleaved, so max_ratio bounds both quotient directions.
RatioReport caloric_ensemble(const Grid& grid, const std::vector<double>& shell_profile,
                             int ensemble_size, std::uint64_t seed,
                             const IndexFamily& family, double t_cap = 50.0);

RatioReport heat_equiv_ensemble(const Grid& grid, const std::vector<double>& shell_profile,
                                int ensemble_size, std::uint64_t seed, double s, double p,
                                double q, double alpha);

std::string ratio_report_csv(const RatioReport& rep);

}  // namespace critflow
