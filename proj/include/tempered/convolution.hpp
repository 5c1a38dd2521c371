#pragma once

namespace tempered {

// integral_0^t e^{-rho eta} eta^{alpha-1} E_{alpha,alpha}(-k eta^alpha) d eta
//
// Gauss-Jacobi absorbs the eta^{alpha-1} endpoint weight on the innermost
// panel; dyadic Gauss-Legendre panels cover the rest.  Throws when the
// panel-order refinement fails to reach the tolerance.
double singular_convolution(double alpha, double rho, double k, double t,
                            double tol = 1e-11);

}  // namespace tempered
