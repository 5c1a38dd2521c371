#include "tempered/soe.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tempered/quadrature.hpp"

namespace tempered {

double SoeApprox::eval(double t) const {
    double acc = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i)
        acc += weights[i] * std::exp(-nodes[i] * t);
    return acc;
}

SoeApprox build_soe(double beta, double epsilon, double sigma, double T,
                    const SoeBuildOptions& opts) {
    if (!(beta > 0.0 && beta < 2.0)) throw std::domain_error("soe: beta must lie in (0,2)");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("soe: epsilon must lie in (0,1)");
    if (!(sigma > 0.0 && sigma <= 1.0 && T >= 1.0))
        throw std::domain_error("soe: need 0 < sigma <= 1 <= T");

    SoeApprox soe;
    soe.beta = beta;
    soe.epsilon = epsilon;
    soe.sigma = sigma;
    soe.T = T;

    double L = std::log(1.0 / epsilon);
    soe.n0 = static_cast<int>(std::ceil(L)) + 2;
    soe.ns = static_cast<int>(std::ceil(0.7 * L)) + 6;
    soe.nl = soe.ns;
    soe.M = static_cast<int>(std::ceil(std::log2(T))) + 4;
    double p = (L + 12.0) / sigma;  // truncation point of the tail integral
    soe.n_large = static_cast<int>(std::ceil(std::log(p) / std::log(4.0)));

    const double gb = std::tgamma(beta);
    auto add_legendre = [&](double lo, double hi, int n) {
        QuadratureRule rule = gauss_legendre(n, lo, hi);
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            soe.nodes.push_back(rule.nodes[i]);
            soe.weights.push_back(rule.weights[i] * std::pow(rule.nodes[i], beta - 1.0) / gb);
        }
    };

    QuadratureRule jac = gauss_jacobi(soe.n0, 0.0, std::ldexp(1.0, -soe.M), beta - 1.0);
    for (size_t i = 0; i < jac.nodes.size(); ++i) {
        soe.nodes.push_back(jac.nodes[i]);
        soe.weights.push_back(jac.weights[i] / gb);
    }
    for (int j = -soe.M; j < 0; ++j)
        add_legendre(std::ldexp(1.0, j), std::ldexp(1.0, j + 1), soe.ns);
    double lo = 1.0;
    for (int j = 0; j < soe.n_large; ++j) {
        add_legendre(lo, 4.0 * lo, soe.nl);
        lo *= 4.0;
    }

    // prune terms whose largest possible contribution on [sigma, T] is noise
    double floor = epsilon * std::numeric_limits<double>::epsilon();
    size_t kept = 0;
    for (size_t i = 0; i < soe.nodes.size(); ++i) {
        if (soe.weights[i] * std::exp(-soe.nodes[i] * sigma) >= floor) {
            soe.nodes[kept] = soe.nodes[i];
            soe.weights[kept] = soe.weights[i];
            ++kept;
        }
    }
    soe.nodes.resize(kept);
    soe.weights.resize(kept);

    if (soe.nexp() > opts.nexp_cap)
        throw std::runtime_error("soe: node count exceeds the configured cap");

    // hard verification of the kernel-relative bound on a log-spaced sample
    double worst = 0.0;
    int np = opts.sample_points;
    double lr = std::log(T / sigma);
    for (int q = 0; q < np; ++q) {
        double t = sigma * std::exp(lr * q / (np - 1.0));
        double kernel = std::pow(t, -beta);
        double dev = std::abs(kernel - soe.eval(t)) / kernel;
        if (dev > worst) worst = dev;
    }
    soe.max_relative_deviation = worst;
    if (worst > epsilon)
        throw std::runtime_error("soe: verification sample misses the target precision");
    return soe;
}

namespace {

// Brackets of the closed-form linear-interpolant integral; Taylor below
// x = 1e-4 to dodge the cancellation in e^{-x} - 1 + x.
inline void soe_brackets(double x, double& b_new, double& b_old) {
    if (x < 1e-4) {
        double x2 = x * x;
        b_new = x2 * (0.5 - x / 6.0 + x2 / 24.0);
        b_old = x2 * (0.5 - x / 3.0 + x2 / 8.0);
    } else {
        double em = std::expm1(-x);
        b_new = x + em;
        b_old = -em - x * std::exp(-x);
    }
}

}  // namespace

void soe_step_coeffs(const SoeApprox& soe, double rho, double tau_prev,
                     double tau_cur, SoeStepCoeffs& out) {
    size_t n = soe.nodes.size();
    out.decay.resize(n);
    out.w_prev.resize(n);
    out.w_prev2.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double lam = rho + soe.nodes[i];
        double d = std::exp(-lam * tau_cur);
        double bn, bo;
        soe_brackets(lam * tau_prev, bn, bo);
        double scale = d / (lam * lam * tau_prev);
        out.decay[i] = d;
        out.w_prev[i] = scale * bn;
        out.w_prev2[i] = scale * bo;
    }
}

FastHistory::FastHistory(const TemperedParams& params, SoeApprox soe, double u0)
    : params_(params), soe_(std::move(soe)), u0_(u0) {
    acc_.assign(soe_.nodes.size(), 0.0);
}

void FastHistory::advance(double tau_prev, double tau_cur, double u_prev,
                          double u_prev2, int n) {
    assert(n == step_ + 1 && "fast history advanced out of order");
    soe_step_coeffs(soe_, params_.rho, tau_prev, tau_cur, coeffs_);
    for (size_t i = 0; i < acc_.size(); ++i)
        acc_[i] = coeffs_.decay[i] * acc_[i] + coeffs_.w_prev[i] * u_prev +
                  coeffs_.w_prev2[i] * u_prev2;
    step_ = n;
}

double FastHistory::diag_coeff(double tau_n) const {
    return std::pow(tau_n, -params_.alpha) / std::tgamma(2.0 - params_.alpha);
}

double FastHistory::known_terms(double u_prev, double t_n, double tau_n, int n) const {
    const double alpha = params_.alpha;
    const double rho = params_.rho;
    const double g2a = std::tgamma(2.0 - alpha);
    if (n == 1) return -std::exp(-rho * tau_n) * u0_ / (std::pow(tau_n, alpha) * g2a);
    assert(n == step_ && "fast history accumulators are stale");
    const double g1a = std::tgamma(1.0 - alpha);
    double hist = 0.0;
    for (size_t i = 0; i < acc_.size(); ++i) hist += soe_.weights[i] * acc_[i];
    return -alpha * std::exp(-rho * tau_n) * u_prev / (std::pow(tau_n, alpha) * g2a) -
           std::exp(-rho * t_n) * u0_ / (g1a * std::pow(t_n, alpha)) -
           alpha / g1a * hist;
}

double FastHistory::apply(double u_n, double u_prev, double t_n, double tau_n, int n) const {
    return diag_coeff(tau_n) * u_n + known_terms(u_prev, t_n, tau_n, n);
}

double fast_l1_step(const FastHistory& fh, const GradedMesh& mesh, double u_n,
                    double u_prev, int n) {
    return fh.apply(u_n, u_prev, mesh.node(n), mesh.step(n), n);
}

}  // namespace tempered
