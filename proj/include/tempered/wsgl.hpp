#pragma once

#include <vector>

#include "tempered/mesh.hpp"

namespace tempered {

// Weighted shifted Grunwald-Letnikov convolution weights plus the starting
// weights that make the formula exact on the correction exponents t^{sigma_j}.
struct WsglWeights {
    double alpha = 0.5;
    int N = 0;
    int m = 0;
    std::vector<double> sigmas;  // m correction exponents, increasing
    std::vector<double> conv;    // omega_0 .. omega_N
    std::vector<double> start;   // start[(n-1)*m + (j-1)] = W_j^{(n)}
    double condition_estimate = 1.0;
    bool ill_conditioned = false;  // estimate above 1e12

    double W(int n, int j) const { return start[static_cast<size_t>(n - 1) * m + (j - 1)]; }
};

// omega_0 = (2+alpha)/2, omega_k = (2+alpha)/2 g_k - (alpha/2) g_{k-1} with
// the binomial factors from the stable recursion g_k = (1-(alpha+1)/k) g_{k-1}.
std::vector<double> wsgl_conv_weights(double alpha, int N);

// Correction exponents sigma_j = j*alpha for j = 1..m.
std::vector<double> default_correction_exponents(double alpha, int m);

// Solves the m x m exponential-Vandermonde system per step n and records a
// 1-norm condition estimate (the system is shared by all n).
WsglWeights wsgl_starting_weights(double alpha, const std::vector<double>& sigmas, int N);

// Discrete tempered Caputo derivative at t_n = n*tau on the uniform mesh.
// With corrections (m > 0) the history must extend through max(n, m).
double wsgl_tempered_apply(const TemperedParams& params, double tau,
                           const WsglWeights& weights,
                           const std::vector<double>& history, int n);

}  // namespace tempered
