#include "tempered/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tempered/convolution.hpp"
#include "tempered/mittag_leffler.hpp"
#include "tempered/quadrature.hpp"

namespace tempered {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// <g, phi_n> on [0, l] with phi_n = sqrt(2/l) sin(n pi x / l); panel count
// grows with the mode number to track the oscillation.
double sine_mode_inner(const std::function<double(double)>& g, double l, int n) {
    int panels = std::max(8, n);
    double acc = 0.0;
    double lam = n * kPi / l;
    double norm = std::sqrt(2.0 / l);
    for (int p = 0; p < panels; ++p) {
        double a = l * p / panels, b = l * (p + 1) / panels;
        QuadratureRule rule = gauss_legendre(12, a, b);
        for (size_t q = 0; q < rule.nodes.size(); ++q) {
            double x = rule.nodes[q];
            acc += rule.weights[q] * g(x) * norm * std::sin(lam * x);
        }
    }
    return acc;
}

}  // namespace

double benchmark_exact(const BenchmarkProblem& p, double t) {
    double z = -p.k0 * std::pow(t, p.params.alpha);
    return p.u0 * std::exp(-p.params.rho * t) * mittag_leffler_real(p.params.alpha, z);
}

double bloch_mz_exact(const BlochParams& p, double t) {
    double alpha = p.params.alpha, rho = p.params.rho;
    double k1 = 1.0 / p.T1p;
    double relaxed = p.Mz0 * std::exp(-rho * t) *
                     mittag_leffler_real(alpha, -k1 * std::pow(t, alpha));
    double driven = (p.M0 / p.T1p) * singular_convolution(alpha, rho, k1, t);
    return relaxed + driven;
}

std::complex<double> bloch_mplus_exact(const BlochParams& p, double t) {
    double alpha = p.params.alpha, rho = p.params.rho;
    std::complex<double> mplus0(p.Mx0, p.My0);
    std::complex<double> k3(1.0 / p.T2p, p.varpi0);
    std::complex<double> z = -k3 * std::pow(t, alpha);
    return mplus0 * std::exp(-rho * t) * mittag_leffler(alpha, z);
}

double diffusion_exact(const DiffusionProblem& p, double x, double t, int n_modes) {
    if (!(x >= 0.0 && x <= p.l)) throw std::domain_error("diffusion_exact: x outside [0,l]");
    if (n_modes < 1) throw std::domain_error("diffusion_exact: n_modes must be >= 1");
    double alpha = p.params.alpha, rho = p.params.rho;
    double damp = std::exp(-rho * t);
    double norm = std::sqrt(2.0 / p.l);
    double acc = 0.0;
    for (int n = 1; n <= n_modes; ++n) {
        double lam = n * kPi / p.l;
        double lam2 = p.D * lam * lam;
        double psi_n = sine_mode_inner(p.psi, p.l, n);
        double coeff = psi_n * damp *
                       mittag_leffler_real(alpha, -lam2 * std::pow(t, alpha));
        if (p.f) {
            double f_n = sine_mode_inner(p.f, p.l, n);
            if (f_n != 0.0)
                coeff += f_n * singular_convolution(alpha, rho, lam2, t);
        }
        acc += coeff * norm * std::sin(lam * x);
    }
    return acc;
}

double msd_exact(const TemperedParams& params, double D, double t) {
    return std::exp(-params.rho * t) * 2.0 * D * std::pow(t, params.alpha) /
           std::tgamma(1.0 + params.alpha);
}

}  // namespace tempered
