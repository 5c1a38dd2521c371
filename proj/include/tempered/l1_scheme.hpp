#pragma once

#include <vector>

#include "tempered/mesh.hpp"

namespace tempered {

// Direct L1 discretization state: mesh plus solution samples u(t_0..t_n).
struct L1State {
    TemperedParams params;
    GradedMesh mesh;
    std::vector<double> history;
};

// Discrete tempered Caputo derivative at t_n from the damped-difference form:
// local two-point term plus the exponentially damped history sum.
double l1_tempered_apply(const L1State& state, int n);

// Coefficients c_{n,0..n} with  D u(t_n) = sum_k c_{n,k} u(t_k);
// c_{n,n} = tau_n^{-alpha} / Gamma(2-alpha).
void l1_step_coefficients(const GradedMesh& mesh, const TemperedParams& params,
                          int n, std::vector<double>& coeff);
std::vector<double> l1_step_coefficients(const GradedMesh& mesh,
                                         const TemperedParams& params, int n);

}  // namespace tempered
