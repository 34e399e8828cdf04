#include "critflow/grid.hpp"

namespace critflow {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid make_grid(int d, int n, double box_length, std::size_t memory_budget_bytes) {
    if (d < 2 || d > 4) throw Error("d out of range (need 2 <= d <= 4)");
    if (!power_of_two(n) || n < 8) throw Error("n must be a power of two >= 8");
    if (!(box_length > 0.0)) throw Error("box_length must be positive");

    // One full vector field (d components of complex doubles) has to fit.
    std::size_t m = 1;
    for (int a = 0; a < d; ++a) {
        if (m > memory_budget_bytes / static_cast<std::size_t>(n)) {
            throw Error("grid exceeds memory budget");
        }
        m *= static_cast<std::size_t>(n);
    }
    std::size_t bytes = m * sizeof(double) * 2 * static_cast<std::size_t>(d);
    if (bytes > memory_budget_bytes) throw Error("grid exceeds memory budget");

    return Grid{d, n, box_length};
}

}  // namespace critflow
