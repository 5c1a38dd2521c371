#pragma once

#include <vector>

#include "tempered/mesh.hpp"

namespace tempered {

// Sum-of-exponentials compression of the kernel t^{-beta} on [sigma, T]:
// |t^{-beta} - sum_i w_i e^{-s_i t}| <= epsilon * t^{-beta} on the
// verification sample (the construction targets the kernel-relative bound;
// see build_soe).
struct SoeApprox {
    double beta = 1.5;
    double epsilon = 1e-9;
    double sigma = 1e-6;
    double T = 1.0;
    std::vector<double> nodes;    // s_i
    std::vector<double> weights;  // w_i
    double max_relative_deviation = 0.0;  // recorded by the builder
    int n0 = 0, ns = 0, nl = 0, M = 0, n_large = 0;

    int nexp() const { return static_cast<int>(nodes.size()); }
    double eval(double t) const;
};

struct SoeBuildOptions {
    int nexp_cap = 2000;
    int sample_points = 10000;
};

// Three-part split of the Gamma-integral representation: Gauss-Jacobi with
// weight s^{beta-1} on [0, 2^-M], dyadic Gauss-Legendre panels on [2^-M, 1],
// geometric Gauss-Legendre panels from 1 up past the truncation point.
// Fails hard when the verification sample misses epsilon or the node count
// exceeds the cap.
SoeApprox build_soe(double beta, double epsilon, double sigma, double T,
                    const SoeBuildOptions& opts = {});

// Per-step update coefficients shared by every accumulator track:
//   acc_i <- decay[i] * acc_i + w_prev[i] * u_{n-1} + w_prev2[i] * u_{n-2}
// realizes the exact integral of the linear interpolant on [t_{n-2}, t_{n-1}].
struct SoeStepCoeffs {
    std::vector<double> decay, w_prev, w_prev2;
};
void soe_step_coeffs(const SoeApprox& soe, double rho, double tau_prev,
                     double tau_cur, SoeStepCoeffs& out);

// Scalar fast-L1 state: per-node accumulators for one unknown.  Accumulators
// at step n hold U_his,i(t_n); advance() must be called once per step in
// order (staleness is a contract violation).
class FastHistory {
public:
    FastHistory(const TemperedParams& params, SoeApprox soe, double u0);

    void advance(double tau_prev, double tau_cur, double u_prev, double u_prev2, int n);
    double diag_coeff(double tau_n) const;  // tau^{-alpha}/Gamma(2-alpha)
    double known_terms(double u_prev, double t_n, double tau_n, int n) const;
    double apply(double u_n, double u_prev, double t_n, double tau_n, int n) const;

    const SoeApprox& soe() const { return soe_; }
    const TemperedParams& params() const { return params_; }
    int step() const { return step_; }

private:
    TemperedParams params_;
    SoeApprox soe_;
    double u0_;
    std::vector<double> acc_;
    SoeStepCoeffs coeffs_;
    int step_ = 1;
};

// Operator value at t_n per the fast scheme; accumulators must be advanced
// through n.
double fast_l1_step(const FastHistory& fh, const GradedMesh& mesh, double u_n,
                    double u_prev, int n);

}  // namespace tempered
