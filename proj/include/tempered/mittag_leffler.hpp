#pragma once

#include <complex>

namespace tempered {

// 1/Gamma(x) for any real x; zero at the poles x = 0, -1, -2, ...
double rgamma(double x);

// Two-parameter Mittag-Leffler function E_{alpha,beta}(z), alpha in (0, 2].
// Relative accuracy ~1e-12 where |E| is not denormal-small.
std::complex<double> mittag_leffler2(double alpha, double beta,
                                     std::complex<double> z,
                                     double accuracy = 1e-12);

// One-parameter function E_alpha(z) = E_{alpha,1}(z).
std::complex<double> mittag_leffler(double alpha, std::complex<double> z,
                                    double accuracy = 1e-12);

// Convenience for real arguments (imaginary part of the result is discarded;
// it is zero up to roundoff for real z).
double mittag_leffler_real(double alpha, double x, double accuracy = 1e-12);
double mittag_leffler2_real(double alpha, double beta, double x,
                            double accuracy = 1e-12);

}  // namespace tempered
