#pragma once

#include <string>
#include <vector>

namespace tempered {

// Relaxometry signal models.  Parameter layout:
//   Monoexp:    A0, T2, C
//   Fractional: A0, T2, C, alpha
//   Tempered:   A0, T2, C, alpha, rho, varpi0
enum class SignalKind { Monoexp, Fractional, Tempered };

struct SignalModel {
    SignalKind kind = SignalKind::Monoexp;
    std::vector<double> p;

    static SignalModel monoexp(double A0, double T2, double C);
    static SignalModel fractional(double A0, double T2, double C, double alpha);
    static SignalModel tempered(double A0, double T2, double C, double alpha,
                                double rho, double varpi0);
};

double eval_model(const SignalModel& m, double t);

struct FitConfig {
    int max_iterations = 4000;
    double tolerance = 1e-12;   // simplex spread stopping tolerance
    int restarts = 3;           // deterministic perturbed restarts
    double box_lo = 0.7;        // box factors around stage-seeded parameters
    double box_hi = 1.3;
    double varpi0_init = 10.0;  // free new parameters and their absolute boxes
    double varpi0_max = 250.0;
    double rho_init = 0.1;
    double rho_max = 1.0;
};

struct FitResult {
    SignalModel model;
    double mse = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Staged protocol: Monoexp from data-driven seeds, Fractional seeded from the
// Monoexp optimum, Tempered seeded from the Fractional optimum; stage-seeded
// parameters are boxed to [box_lo, box_hi] of their seeds, the free new
// parameters use their absolute ranges.
FitResult fit(SignalKind kind, const std::vector<double>& t,
              const std::vector<double>& y, const FitConfig& cfg = {});

double fit_mse(const SignalModel& m, const std::vector<double>& t,
               const std::vector<double>& y);

// Two-column delimited text (time, signal); '#' comments and an optional
// non-numeric header line are skipped.
void load_fit_data(const std::string& path, std::vector<double>& t,
                   std::vector<double>& y);

}  // namespace tempered
