#pragma once

#include <vector>

namespace critflow {

// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre_unit(int points);

}  // namespace critflow
