#pragma once

#include <complex>
#include <functional>

#include "tempered/mesh.hpp"

namespace tempered {

// D^{(alpha,rho)} u = -k0 u, u(0) = u0, with solution
// u(t) = u0 e^{-rho t} E_alpha(-k0 t^alpha).
struct BenchmarkProblem {
    TemperedParams params;
    double k0 = 1.0;
    double u0 = 1.0;
    double T = 1.0;
};

double benchmark_exact(const BenchmarkProblem& p, double t);

// Rescaled Bloch system parameters (units absorbed into T1', T2', varpi0).
struct BlochParams {
    TemperedParams params;
    double T1p = 1.0;     // ms^alpha
    double T2p = 20.0;    // ms^alpha
    double varpi0 = 0.0;  // rad/ms
    double M0 = 100.0;
    double Mz0 = 0.0;
    double Mx0 = 0.0;
    double My0 = 100.0;
};

double bloch_mz_exact(const BlochParams& p, double t);
std::complex<double> bloch_mplus_exact(const BlochParams& p, double t);

// Tempered diffusion on (0, l) with homogeneous Dirichlet boundaries.
// The source, when present, must be time-independent for the analytic
// evaluator (the solvers accept general forcing separately).
struct DiffusionProblem {
    TemperedParams params;
    double D = 1.0;
    double l = 1.0;
    std::function<double(double)> psi;  // initial condition
    std::function<double(double)> f;    // time-independent source; null = 0
    double T = 1.0;
};

double diffusion_exact(const DiffusionProblem& p, double x, double t, int n_modes = 200);

// Mean squared displacement e^{-rho t} 2 D t^alpha / Gamma(1+alpha).
double msd_exact(const TemperedParams& params, double D, double t);

}  // namespace tempered
