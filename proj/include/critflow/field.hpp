#pragma once

#include <complex>
#include <vector>

#include "critflow/grid.hpp"

namespace critflow {

using cplx = std::complex<double>;

// A real vector field on the periodic box, stored as complex Fourier
// coefficients in DFT layout (see Grid).  components is 1 for scalars and
// grid.d for velocity-like fields.  Fields are treated as immutable values:
// every operator returns a fresh field.
struct SpectralField {
    Grid grid;
    int components = 0;
    std::vector<cplx> coeffs;  // [component * modes + flat_mode]

    SpectralField() = default;
    SpectralField(const Grid& g, int m)
        : grid(g), components(m), coeffs(g.modes() * m, cplx(0.0, 0.0)) {}

    std::size_t modes() const { return grid.modes(); }

    cplx& at(int c, std::size_t flat) { return coeffs[c * modes() + flat]; }
    const cplx& at(int c, std::size_t flat) const { return coeffs[c * modes() + flat]; }

    cplx* component(int c) { return coeffs.data() + c * modes(); }
    const cplx* component(int c) const { return coeffs.data() + c * modes(); }

    cplx mean_mode(int c) const { return at(c, 0); }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

// Largest |coefficient| over all components and modes.
double max_abs_coeff(const SpectralField& f);

// Largest |coeff(c,-k) - conj(coeff(c,k))| over all mode pairs.
double hermitian_defect(const SpectralField& f);

// True when every mean (k = 0) coefficient is negligible relative to the
// field amplitude.  Zero fields count as zero-mean.
bool is_zero_mean(const SpectralField& f, double rel_tol = 1e-12);

// Zero the k = 0 coefficient of every component, returning the removed mass
// (largest |mean| over components) through *removed when non-null.
SpectralField remove_mean(const SpectralField& f, double* removed = nullptr);

// Physical-space samples of one component (row-major over the grid).
// The imaginary residue of the inverse transform is discarded; use
// max_physical_imag to audit it.
std::vector<double> physical_samples(const SpectralField& f, int c);
double max_physical_imag(const SpectralField& f);

// Forward transform of real samples (one component's worth per block of
// n^d values) into a spectral field.
SpectralField field_from_physical(const Grid& g, int components,
                                  const std::vector<double>& samples);

namespace detail {
// DFT without normalization, executed in place on modes() complex values.
// sign = -1: physical -> raw spectral sums;  sign = +1: spectral -> physical.
void dft_inplace(const Grid& g, cplx* data, int sign);
}  // namespace detail

}  // namespace critflow
