#include "tempered/l1_scheme.hpp"

#include <cmath>
#include <stdexcept>

namespace tempered {

double l1_tempered_apply(const L1State& state, int n) {
    const GradedMesh& mesh = state.mesh;
    const double alpha = state.params.alpha;
    const double rho = state.params.rho;
    if (n < 1 || n > mesh.N) throw std::out_of_range("l1_tempered_apply: n out of range");
    if (static_cast<int>(state.history.size()) < n + 1)
        throw std::out_of_range("l1_tempered_apply: history incomplete");

    const double g2a = std::tgamma(2.0 - alpha);
    const double tn = mesh.node(n);
    const double tau_n = mesh.step(n);
    const std::vector<double>& u = state.history;

    double value = (u[static_cast<size_t>(n)] -
                    std::exp(-rho * tau_n) * u[static_cast<size_t>(n - 1)]) /
                   (std::pow(tau_n, alpha) * g2a);
    for (int k = 0; k <= n - 2; ++k) {
        double dpow = std::pow(tn - mesh.node(k), 1.0 - alpha) -
                      std::pow(tn - mesh.node(k + 1), 1.0 - alpha);
        double diff = std::exp(-rho * (tn - mesh.node(k + 1))) * u[static_cast<size_t>(k + 1)] -
                      std::exp(-rho * (tn - mesh.node(k))) * u[static_cast<size_t>(k)];
        value += diff / mesh.step(k + 1) * dpow / g2a;
    }
    return value;
}

void l1_step_coefficients(const GradedMesh& mesh, const TemperedParams& params,
                          int n, std::vector<double>& coeff) {
    if (n < 1 || n > mesh.N) throw std::out_of_range("l1_step_coefficients: n out of range");
    const double alpha = params.alpha;
    const double rho = params.rho;
    const double g2a = std::tgamma(2.0 - alpha);
    const double tn = mesh.node(n);

    coeff.assign(static_cast<size_t>(n) + 1, 0.0);
    // b_k = [(t_n - t_k)^{1-a} - (t_n - t_{k+1})^{1-a}] / (tau_{k+1} Gamma(2-a)),
    // with the last one taken in closed form so alpha = 1 stays finite.
    double b_prev = 0.0;
    for (int k = 0; k <= n - 1; ++k) {
        double b;
        if (k == n - 1) {
            b = std::pow(mesh.step(n), -alpha) / g2a;
        } else {
            b = (std::pow(tn - mesh.node(k), 1.0 - alpha) -
                 std::pow(tn - mesh.node(k + 1), 1.0 - alpha)) /
                (mesh.step(k + 1) * g2a);
        }
        if (k == 0) {
            coeff[0] = -b * std::exp(-rho * tn);
        } else {
            coeff[static_cast<size_t>(k)] = std::exp(-rho * (tn - mesh.node(k))) * (b_prev - b);
        }
        b_prev = b;
    }
    coeff[static_cast<size_t>(n)] = b_prev;
}

std::vector<double> l1_step_coefficients(const GradedMesh& mesh,
                                         const TemperedParams& params, int n) {
    std::vector<double> c;
    l1_step_coefficients(mesh, params, n, c);
    return c;
}

}  // namespace tempered
