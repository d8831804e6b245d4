#pragma once

#include <vector>

namespace wallindex {

/// Gauss-Legendre rule on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Order-q Gauss-Legendre nodes and weights mapped to [a, b]; exact for
/// polynomials of degree <= 2q - 1.
QuadratureRule gauss_legendre(int order, double a = 0.0, double b = 1.0);

}  // namespace wallindex
