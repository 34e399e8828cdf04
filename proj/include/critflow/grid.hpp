#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace critflow {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// All precondition and configuration failures surface as this type.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Periodic box [0, L)^d sampled with n points per axis.  Spectral data is
// stored in DFT layout: axis index i in [0, n) carries the signed integer
// wavenumber k = i for i < n/2 and k = i - n otherwise, so k ranges over
// [-n/2, n/2).  The physical wavenumber of mode k is 2*pi*k / L.
struct Grid {
    int d = 0;
    int n = 0;
    double box_length = 0.0;

    std::size_t modes() const {
        std::size_t m = 1;
        for (int a = 0; a < d; ++a) m *= static_cast<std::size_t>(n);
        return m;
    }

    double dx() const { return box_length / n; }
    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < d; ++a) v *= dx();
        return v;
    }
    double volume() const {
        double v = 1.0;
        for (int a = 0; a < d; ++a) v *= box_length;
        return v;
    }

    // Physical wavenumber per unit integer mode.
    double dk() const { return two_pi / box_length; }

    int signed_index(int axis_index) const {
        return axis_index < n / 2 ? axis_index : axis_index - n;
    }

    // Decode the flat (row-major, axis 0 slowest) mode index into signed k.
    // kv must have room for d entries.
    void wavevector(std::size_t flat, int* kv) const {
        for (int a = d - 1; a >= 0; --a) {
            kv[a] = signed_index(static_cast<int>(flat % n));
            flat /= n;
        }
    }

    std::size_t flat_index(const int* kv) const {
        std::size_t idx = 0;
        for (int a = 0; a < d; ++a) {
            int i = kv[a] >= 0 ? kv[a] : kv[a] + n;
            idx = idx * n + static_cast<std::size_t>(i);
        }
        return idx;
    }

    bool operator==(const Grid& o) const {
        return d == o.d && n == o.n && box_length == o.box_length;
    }
};

// Default ceiling for one field allocation; catches accidental huge grids.
inline constexpr std::size_t default_memory_budget = std::size_t(4) << 30;

Grid make_grid(int d, int n, double box_length,
               std::size_t memory_budget_bytes = default_memory_budget);

}  // namespace critflow
