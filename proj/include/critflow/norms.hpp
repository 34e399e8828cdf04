#pragma once

#include <string>

#include "critflow/field.hpp"
#include "critflow/trajectory.hpp"

namespace critflow {

enum class NormKind { Lebesgue, SobolevHom, SobolevInhom, BesovLpHom, BesovHeatHom };

const char* norm_kind_name(NormKind k);

// Selects one of L^q, H-dot^s_q, H^s_q, B-dot^{s,p}_q (Littlewood-Paley) or
// the heat-semigroup characterization of the latter.  p may be INFINITY.
struct NormSpec {
    NormKind kind = NormKind::Lebesgue;
    double s = 0.0;
    double q = 2.0;      // spatial integrability
    double p = 2.0;      // Besov summation exponent
    double alpha = 0.0;  // derivative lift (heat characterization)
    double t_max = 0.0;  // 0 selects the default truncation horizon

    void validate(int d) const;
};

struct NormValue {
    double value = 0.0;
    NormSpec spec;
    // quadrature / truncation provenance
    double t_min = 0.0, t_max = 0.0;
    int panels = 0, gauss_points = 0;
    int grid_n = 0;
    double box_L = 0.0;
    std::string notes;
};

// (integral |f|^q dx)^{1/q} by the rectangle rule on the n^d physical grid;
// vector fields contribute their pointwise Euclidean magnitude.
NormValue lebesgue_norm(const SpectralField& f, double q);

// || Lambda^s f ||_q with the Riesz (homogeneous) or Bessel (inhomogeneous)
// potential.  The homogeneous kind needs a zero-mean field.
NormValue sobolev_norm(const SpectralField& f, double s, double q, bool homogeneous);

// ( sum_j (2^{js} ||Delta_j f||_q)^p )^{1/p} over sharp integer-|k| annuli
// 2^j <= |k| < 2^{j+1}, j = 0 .. floor(log2(n/3)); the last annulus is open
// above so band-edge content is not dropped.  p = INFINITY takes the sup.
NormValue besov_norm_lp(const SpectralField& f, double s, double p, double q);

// ( integral_0^inf (t^{-s/2} ||e^{tD} t^{a/2} Riesz^a f||_q)^p dt/t )^{1/p},
// s < alpha, by composite Gauss-Legendre on a geometric panel ladder.
NormValue besov_norm_heat(const SpectralField& f, double s, double p, double q,
                          double alpha, double t_max = 0.0);

NormValue spatial_norm(const SpectralField& f, const NormSpec& spec);

// ( integral_0^T phi(t)^r dt )^{1/r} with phi the nodal spatial norm and the
// trapezoid rule between nodes; r = INFINITY takes the max over nodes.
NormValue time_space_norm(const Trajectory& traj, double r, const NormSpec& spec);

// CSV row: kind,s,p,q,alpha,value,t_min,t_max,grid_n,box_L
std::string norm_csv_header();
std::string norm_csv_row(const NormValue& nv);

}  // namespace critflow
