#include "tempered/mittag_leffler.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tempered {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.141592653589793238462643383279502884;

// Power series sum_{n>=0} z^n / Gamma(n alpha + beta).  Safe for |z| <= 1
// (terms never grow enough to cancel catastrophically).
cplx ml_taylor(double alpha, double beta, cplx z, double tol) {
    cplx sum = 0.0;
    cplx zn = 1.0;
    for (int n = 0; n < 4000; ++n) {
        double g = rgamma(n * alpha + beta);
        cplx term = zn * g;
        sum += term;
        if (n * alpha + beta > 2.0 && std::abs(term) <= tol * (std::abs(sum) + 1e-300))
            return sum;
        zn *= z;
    }
    throw std::runtime_error("mittag_leffler: series did not converge");
}

// Algebraic expansion for large |z| with alpha <= 1:
//   E ~ (1/alpha) z^{(1-beta)/alpha} exp(z^{1/alpha})  (growth sector only)
//       - sum_{k>=1} z^{-k} / Gamma(beta - alpha k)
cplx ml_asymptotic(double alpha, double beta, cplx z) {
    cplx sum = 0.0;
    cplx zinv = 1.0 / z;
    cplx zk = zinv;
    double prev = 1e300;
    for (int k = 1; k <= 80; ++k) {
        cplx term = zk * rgamma(beta - alpha * k);
        double mag = std::abs(term);
        if (mag > prev) break;  // asymptotic tail started growing
        sum -= term;
        prev = mag;
        zk *= zinv;
        if (mag < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    if (std::abs(std::arg(z)) <= alpha * kPi) {
        cplx s = std::pow(z, 1.0 / alpha);
        sum += std::exp(s) * std::pow(z, (1.0 - beta) / alpha) / alpha;
    }
    return sum;
}

// Laplace inversion of s^{alpha-beta}/(s^alpha - z) over the parabola
// s(u) = mu (1+iu)^2, trapezoid in u, plus residues of principal-sheet poles
// lying right of the contour.  The pole set is s_j = (z)^{1/alpha} rotated by
// 2 pi j / alpha for the j with |arg z + 2 pi j| <= alpha pi.
cplx ml_contour(double alpha, double beta, cplx z, double tol) {
    struct Pole {
        cplx s;
        double r, phi;
    };
    std::vector<Pole> poles;
    double az = std::arg(z);
    for (int j = -1; j <= 1; ++j) {
        double a = az + 2.0 * kPi * j;
        if (std::abs(a) <= alpha * kPi + 1e-14) {
            double r = std::pow(std::abs(z), 1.0 / alpha);
            double phi = a / alpha;
            poles.push_back({std::polar(r, phi), r, phi});
        }
    }

    double mu = 4.0;
    for (const Pole& p : poles) {
        if (std::abs(p.phi) >= kPi) continue;
        double rc = p.r * std::cos(0.5 * p.phi) * std::cos(0.5 * p.phi);
        double ratio = rc / mu;
        if (ratio > 0.2 && ratio < 5.0) mu = std::min(mu, rc / 10.0);
    }

    // residues of poles right of the contour: (1/alpha) s^{1-beta} e^{s}
    cplx residues = 0.0;
    for (const Pole& p : poles) {
        double cc = std::cos(0.5 * p.phi);
        bool right = std::abs(p.phi) < kPi && p.r * cc * cc > mu;
        if (right) residues += std::pow(p.s, 1.0 - beta) * std::exp(p.s) / alpha;
    }

    auto integrand = [&](double u) -> cplx {
        cplx iu(1.0, u);
        cplx s = mu * iu * iu;
        cplx F = std::pow(s, alpha - beta) / (std::pow(s, alpha) - z);
        return (mu / kPi) * std::exp(s) * F * iu;
    };

    double umax = std::sqrt(1.0 + (std::log(1.0 / tol) + 6.0) / mu);
    bool realz = (z.imag() == 0.0);
    cplx value = 0.0, prev_value = 0.0;
    double h = 0.15;
    for (int level = 0; level < 7; ++level) {
        int K = static_cast<int>(std::ceil(umax / h));
        cplx acc = integrand(0.0);
        if (realz) {
            cplx side = 0.0;
            for (int k = 1; k <= K; ++k) side += integrand(k * h);
            acc = cplx(acc.real() + 2.0 * side.real(), 0.0);
        } else {
            for (int k = 1; k <= K; ++k) acc += integrand(k * h) + integrand(-k * h);
        }
        value = h * acc + residues;
        if (level > 0 && std::abs(value - prev_value) <= tol * std::max(1.0, std::abs(value)))
            return value;
        prev_value = value;
        h *= 0.5;
    }
    throw std::runtime_error("mittag_leffler: contour quadrature did not converge");
}

}  // namespace

double rgamma(double x) {
    if (x > 0.5) {
        if (x > 171.0) return 0.0;  // 1/Gamma underflows
        return 1.0 / std::tgamma(x);
    }
    if (x == std::floor(x)) return 0.0;  // pole of Gamma
    // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    double s = std::sin(kPi * x);
    if (s == 0.0) return 0.0;
    double lg = std::lgamma(1.0 - x);
    if (lg > 700.0) {
        // Gamma(1-x) overflows but the product may not; work in logs.
        double mag = lg + std::log(std::abs(s) / kPi);
        if (mag > 700.0) return std::copysign(INFINITY, s);
        return std::copysign(std::exp(mag), s);
    }
    return std::exp(lg) * s / kPi;
}

std::complex<double> mittag_leffler2(double alpha, double beta,
                                     std::complex<double> z, double accuracy) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::domain_error("mittag_leffler: alpha must lie in (0,2]");
    double tol = std::min(1e-6, std::max(accuracy, 1e-14));
    double r = std::abs(z);
    if (r == 0.0) return rgamma(beta);
    if (r <= 1.0) return ml_taylor(alpha, beta, z, tol);
    if (alpha <= 1.0 && r > 50.0) return ml_asymptotic(alpha, beta, z);
    return ml_contour(alpha, beta, z, tol);
}

std::complex<double> mittag_leffler(double alpha, std::complex<double> z,
                                    double accuracy) {
    return mittag_leffler2(alpha, 1.0, z, accuracy);
}

double mittag_leffler_real(double alpha, double x, double accuracy) {
    return mittag_leffler2(alpha, 1.0, std::complex<double>(x, 0.0), accuracy).real();
}

double mittag_leffler2_real(double alpha, double beta, double x, double accuracy) {
    return mittag_leffler2(alpha, beta, std::complex<double>(x, 0.0), accuracy).real();
}

}  // namespace tempered
