#include "tempered/convolution.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tempered/mittag_leffler.hpp"
#include "tempered/quadrature.hpp"

namespace tempered {

namespace {

// Smooth factor of the integrand.
double smooth_part(double alpha, double rho, double k, double eta) {
    return std::exp(-rho * eta) *
           mittag_leffler2_real(alpha, alpha, -k * std::pow(eta, alpha));
}

double evaluate(double alpha, double rho, double k, double t, int n_jac, int n_leg) {
    // Innermost cutoff: the eta^alpha terms the Jacobi rule cannot represent
    // must contribute below tolerance-scale on [0, delta].
    double scale = 1.0 + std::abs(k) + rho;
    int panels = static_cast<int>(std::ceil(
        std::max(8.0, std::log2(t * std::pow(scale / 1e-13, 1.0 / (2.0 * alpha)) + 2.0))));
    panels = std::min(panels, 400);

    double delta = t * std::ldexp(1.0, -panels);
    double acc = 0.0;

    QuadratureRule jac = gauss_jacobi(n_jac, 0.0, delta, alpha - 1.0);
    for (size_t q = 0; q < jac.nodes.size(); ++q)
        acc += jac.weights[q] * smooth_part(alpha, rho, k, jac.nodes[q]);

    for (int j = panels - 1; j >= 0; --j) {
        double lo = t * std::ldexp(1.0, -(j + 1));
        double hi = t * std::ldexp(1.0, -j);
        QuadratureRule leg = gauss_legendre(n_leg, lo, hi);
        for (size_t q = 0; q < leg.nodes.size(); ++q) {
            double eta = leg.nodes[q];
            acc += leg.weights[q] * std::pow(eta, alpha - 1.0) *
                   smooth_part(alpha, rho, k, eta);
        }
    }
    return acc;
}

}  // namespace

double singular_convolution(double alpha, double rho, double k, double t, double tol) {
    if (!(t >= 0.0)) throw std::domain_error("singular_convolution: t must be >= 0");
    if (t == 0.0) return 0.0;

    double prev = evaluate(alpha, rho, k, t, 12, 16);
    for (int n = 24; n <= 56; n += 16) {
        double cur = evaluate(alpha, rho, k, t, n, n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw std::runtime_error("singular_convolution: quadrature did not converge");
}

}  // namespace tempered
