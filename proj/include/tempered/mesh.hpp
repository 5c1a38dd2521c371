#pragma once

#include <stdexcept>
#include <vector>

namespace tempered {

// Fractional index and exponential tempering rate of the operator
// e^{-rho t} D^alpha (e^{rho t} u).  alpha = 1 is the classical limit.
struct TemperedParams {
    double alpha = 0.5;  // fractional index, in (0, 1]
    double rho = 0.0;    // tempering rate, >= 0, units 1/time

    TemperedParams() = default;
    TemperedParams(double a, double r) : alpha(a), rho(r) { validate(); }

    void validate() const {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::domain_error("alpha must lie in (0,1]");
        if (!(rho >= 0.0)) throw std::domain_error("rho must be >= 0");
    }
};

// Time grid t_n = T (n/N)^r.  r = 1 recovers the uniform mesh; larger r
// clusters nodes near t = 0 where the solution loses regularity.
struct GradedMesh {
    double T = 1.0;
    int N = 1;
    double r = 1.0;
    std::vector<double> nodes;  // t_0 .. t_N
    std::vector<double> steps;  // steps[n-1] = t_n - t_{n-1}, n = 1..N

    double node(int n) const { return nodes[static_cast<size_t>(n)]; }
    double step(int n) const { return steps[static_cast<size_t>(n - 1)]; }
    bool uniform() const { return r == 1.0; }
    double min_step() const;
};

GradedMesh build_graded_mesh(double T, int N, double r);

// Mesh grading exponent for the L1 scheme: (2-alpha)/alpha, or the safer
// 2(2-alpha)/alpha recommended when the sharpest admissible grading is wanted.
double optimal_grading(double alpha, bool safety);

}  // namespace tempered
