#pragma once

#include <vector>

namespace tempered {

// Gaussian rule on [a, b].  For the Jacobi kind the weight function
// (s - a)^exponent is absorbed into the weights, so sums of w_i * f(s_i)
// approximate the weighted integral of f.
struct QuadratureRule {
    enum class Kind { Legendre, Jacobi };
    Kind kind = Kind::Legendre;
    double a = -1.0;
    double b = 1.0;
    double exponent = 0.0;  // left-endpoint weight exponent (Jacobi only)
    std::vector<double> nodes;
    std::vector<double> weights;

    double integrate(const std::vector<double>& fvals) const;
};

// Exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_legendre(int n, double a, double b);

// Weight (s-a)^exponent, exponent > -1; exact for that weight times
// polynomials of degree <= 2n-1.  exponent = 0 degenerates to Legendre.
QuadratureRule gauss_jacobi(int n, double a, double b, double exponent);

}  // namespace tempered
