#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "critflow/field.hpp"

namespace critflow {

// Fractional Laplacian power: mode-wise |2*pi*k/L|^s, zero at k = 0.
// Negative orders require a zero-mean input.
SpectralField riesz_potential(const SpectralField& f, double s);

// Mode-wise (1 + |2*pi*k/L|^2)^(s/2).
SpectralField bessel_potential(const SpectralField& f, double s);

// Mode-wise exp(-|2*pi*k/L|^2 t), t >= 0.
SpectralField heat_semigroup(const SpectralField& f, double t);

// Mode-wise I - k k^T / |k|^2 for k != 0; the k = 0 mode passes through.
SpectralField leray_project(const SpectralField& f);

// (grad f)_a = i kappa_a f_hat for a scalar field.
SpectralField gradient(const SpectralField& scalar);

// Scalar sum_a i kappa_a u_hat_a of a vector field.
SpectralField divergence(const SpectralField& vec);

// max_k |sum_a kappa_a u_hat_a(k)| relative to the field's own gradient
// scale max_k |kappa| |u_hat(k)|; 0 for the zero field.
double spectral_divergence(const SpectralField& vec);

// Zero every mode with any |k_a| > n/3 (sharp 2/3 truncation).
SpectralField dealias_two_thirds(const SpectralField& f);

// Leray-projected divergence of the dealiased tensor product u (x) v.
SpectralField nonlinear_term(const SpectralField& u, const SpectralField& v);

// Hermitian, zero-mean, exactly divergence-free random field.  shell_profile
// gives the coefficient amplitude on each integer shell floor(|k|); modes on
// the Nyquist lines are left zero.  Deterministic in (grid, profile, seed).
SpectralField random_divfree_field(const Grid& grid,
                                   const std::vector<double>& shell_profile,
                                   std::uint64_t seed);

// Scalar variant (no projection), for product-estimate ensembles.
SpectralField random_scalar_field(const Grid& grid,
                                  const std::vector<double>& shell_profile,
                                  std::uint64_t seed);

// g(x) = f(m x) carried on the box [0, L/m)^d: same coefficients, same
// integer modes, shrunken box.
SpectralField dilate(const SpectralField& f, int m);

// Same box, modes k -> 2k (g(x) = f(2x) for band-limited f).  Content with
// any |k_a| >= n/4 would alias and is rejected.
SpectralField shift_octave(const SpectralField& f);

// The same function carried on a finer grid (n2 >= n, same box).
SpectralField refine(const SpectralField& f, int n2);

// Shear profile (0, A sin x1, 0, ...) and a Taylor-Green-type vortex
// (d = 3); both zero-mean and exactly divergence-free.
SpectralField make_shear_field(const Grid& grid, double amplitude);
SpectralField make_taylor_green(const Grid& grid, double amplitude);

namespace detail {
// Integer |k|^2 per flat mode, cached per (d, n).
const std::vector<std::int32_t>& k2_table(const Grid& g);

// Signed integer k_a per flat mode, axis-major (size d * modes), cached.
const std::vector<std::int32_t>& k_axis_table(const Grid& g);

// Nonlinear term from physical samples of u and v (each d arrays of n^d
// reals); the fast path under trajectory quadrature.
SpectralField nonlinear_from_physical(const Grid& g,
                                      const std::vector<std::vector<double>>& uphys,
                                      const std::vector<std::vector<double>>& vphys);
}  // namespace detail

}  // namespace critflow
