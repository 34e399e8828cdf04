#include "critflow/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "critflow/grid.hpp"

namespace critflow {

namespace {

// Newton iteration on Legendre polynomials; standard construction.
GaussRule build_rule(int g) {
    GaussRule rule;
    rule.nodes.resize(g);
    rule.weights.resize(g);
    for (int i = 0; i < g; ++i) {
        double x = std::cos(pi * (i + 0.75) / (g + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= g; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = g * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // map [-1, 1] -> [0, 1]
        rule.nodes[i] = 0.5 * (1.0 - x);  // reversed order, harmless
        rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre_unit(int points) {
    if (points < 2 || points > 64) throw Error("gauss_points out of range [2, 64]");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, build_rule(points)).first;
    return it->second;
}

}  // namespace critflow
