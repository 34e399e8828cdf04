#include "critflow/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace critflow {

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
}
SpectralField& SpectralField::operator-=(const SpectralField& o) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
}
SpectralField& SpectralField::operator*=(double a) {
    for (auto& c : coeffs) c *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

double max_abs_coeff(const SpectralField& f) {
    double m = 0.0;
    for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
    return m;
}

double hermitian_defect(const SpectralField& f) {
    const Grid& g = f.grid;
    const std::size_t modes = g.modes();
    std::vector<int> kv(g.d), kneg(g.d);
    double defect = 0.0;
    for (std::size_t i = 0; i < modes; ++i) {
        g.wavevector(i, kv.data());
        // -k mod n; the Nyquist line maps to itself.
        for (int a = 0; a < g.d; ++a) {
            kneg[a] = kv[a] == -g.n / 2 ? kv[a] : -kv[a];
        }
        std::size_t j = g.flat_index(kneg.data());
        for (int c = 0; c < f.components; ++c) {
            defect = std::max(defect, std::abs(f.at(c, j) - std::conj(f.at(c, i))));
        }
    }
    return defect;
}

bool is_zero_mean(const SpectralField& f, double rel_tol) {
    double scale = std::max(1.0, max_abs_coeff(f));
    for (int c = 0; c < f.components; ++c) {
        if (std::abs(f.mean_mode(c)) > rel_tol * scale) return false;
    }
    return true;
}

SpectralField remove_mean(const SpectralField& f, double* removed) {
    SpectralField g = f;
    double worst = 0.0;
    for (int c = 0; c < g.components; ++c) {
        worst = std::max(worst, std::abs(g.at(c, 0)));
        g.at(c, 0) = cplx(0.0, 0.0);
    }
    if (removed) *removed = worst;
    return g;
}

namespace detail {

namespace {

struct PlanKey {
    int d, n, sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(d, n, sign) < std::tie(o.d, o.n, o.sign);
    }
};

// One in-place unaligned plan per (d, n, sign); fftw_execute_dft is
// thread-safe, planner access is not.
fftw_plan lookup_plan(const Grid& g, int sign) {
    static std::mutex mu;
    static std::map<PlanKey, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(mu);
    PlanKey key{g.d, g.n, sign};
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;

    std::vector<int> dims(g.d, g.n);
    std::vector<cplx> dummy(g.modes());
    auto* buf = reinterpret_cast<fftw_complex*>(dummy.data());
    fftw_plan p = fftw_plan_dft(g.d, dims.data(), buf, buf, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw Error("fftw plan creation failed");
    plans.emplace(key, p);
    return p;
}

}  // namespace

void dft_inplace(const Grid& g, cplx* data, int sign) {
    fftw_plan p = lookup_plan(g, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, buf, buf);
}

}  // namespace detail

std::vector<double> physical_samples(const SpectralField& f, int c) {
    std::vector<cplx> work(f.component(c), f.component(c) + f.modes());
    detail::dft_inplace(f.grid, work.data(), FFTW_BACKWARD);
    std::vector<double> out(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) out[i] = work[i].real();
    return out;
}

double max_physical_imag(const SpectralField& f) {
    double m = 0.0;
    std::vector<cplx> work(f.modes());
    for (int c = 0; c < f.components; ++c) {
        std::copy(f.component(c), f.component(c) + f.modes(), work.begin());
        detail::dft_inplace(f.grid, work.data(), FFTW_BACKWARD);
        for (const auto& z : work) m = std::max(m, std::abs(z.imag()));
    }
    return m;
}

SpectralField field_from_physical(const Grid& g, int components,
                                  const std::vector<double>& samples) {
    if (samples.size() != g.modes() * static_cast<std::size_t>(components)) {
        throw Error("sample count does not match grid");
    }
    SpectralField f(g, components);
    const double scale = 1.0 / static_cast<double>(g.modes());
    for (int c = 0; c < components; ++c) {
        cplx* dst = f.component(c);
        const double* src = samples.data() + c * g.modes();
        for (std::size_t i = 0; i < g.modes(); ++i) dst[i] = cplx(src[i], 0.0);
        detail::dft_inplace(g, dst, FFTW_FORWARD);
        for (std::size_t i = 0; i < g.modes(); ++i) dst[i] *= scale;
    }
    return f;
}

}  // namespace critflow
