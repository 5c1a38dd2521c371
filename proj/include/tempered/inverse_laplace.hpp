#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace tempered {

// Poles and residues of the near-best type-(K,K) rational approximation of
// e^z on the negative real axis (Caratheodory-Fejer construction).  Poles are
// stored in conjugate pairs, the upper-half-plane member first, so
// poles[2k] drives the K/2-term inversion sum.
struct RationalILT {
    int K = 14;
    std::vector<std::complex<double>> poles;
    std::vector<std::complex<double>> residues;
};

// Builds and validates the approximation against known transform pairs
// (1/s, 1/(s+1), and a Mittag-Leffler pair).  Validation failure throws.
RationalILT build_rational_ilt(int K = 14);

// f(t) ~= -(2/t) Re sum_{k=1}^{K/2} c_k F(z_k / t) over the upper-half poles.
double invert_laplace(const RationalILT& ilt,
                      const std::function<std::complex<double>(std::complex<double>)>& F,
                      double t);

}  // namespace tempered
