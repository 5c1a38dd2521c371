#include "tempered/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tempered {

double QuadratureRule::integrate(const std::vector<double>& fvals) const {
    double acc = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) acc += weights[i] * fvals[i];
    return acc;
}

namespace {

// Three-term recurrence coefficients (monic form) for the Jacobi weight
// (1-x)^A (1+x)^B on [-1,1]:  pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1}.
struct JacobiRecurrence {
    double A, B;
    double mu0;  // integral of the weight over [-1,1]

    JacobiRecurrence(double a, double b) : A(a), B(b) {
        mu0 = std::pow(2.0, A + B + 1.0) *
              std::exp(std::lgamma(A + 1.0) + std::lgamma(B + 1.0) -
                       std::lgamma(A + B + 2.0));
    }
    double alpha(int k) const {
        if (k == 0) return (B - A) / (A + B + 2.0);
        double d = 2.0 * k + A + B;
        return (B * B - A * A) / (d * (d + 2.0));
    }
    double beta(int k) const {
        // beta(0) is conventionally mu0; not used by the recurrence itself.
        if (k == 0) return mu0;
        double d = 2.0 * k + A + B;
        return 4.0 * k * (k + A) * (k + B) * (k + A + B) /
               (d * d * (d + 1.0) * (d - 1.0));
    }
};

// Orthonormal polynomial values q_0..q_n at x, plus q_n'.
// sqrt(beta_{k+1}) q_{k+1} = (x - alpha_k) q_k - sqrt(beta_k) q_{k-1}
void eval_orthonormal(const JacobiRecurrence& rec, int n, double x,
                      std::vector<double>& q, double& qn_prime) {
    q.resize(static_cast<size_t>(n) + 1);
    std::vector<double> dq(static_cast<size_t>(n) + 1);
    q[0] = 1.0 / std::sqrt(rec.mu0);
    dq[0] = 0.0;
    double sb_prev = 0.0;
    for (int k = 0; k < n; ++k) {
        double sb = std::sqrt(rec.beta(k + 1));
        double xa = x - rec.alpha(k);
        double qm1 = (k == 0) ? 0.0 : q[static_cast<size_t>(k - 1)];
        double dqm1 = (k == 0) ? 0.0 : dq[static_cast<size_t>(k - 1)];
        q[static_cast<size_t>(k + 1)] =
            (xa * q[static_cast<size_t>(k)] - sb_prev * qm1) / sb;
        dq[static_cast<size_t>(k + 1)] =
            (q[static_cast<size_t>(k)] + xa * dq[static_cast<size_t>(k)] -
             sb_prev * dqm1) / sb;
        sb_prev = sb;
    }
    qn_prime = dq[static_cast<size_t>(n)];
}

// Christoffel weight at a node: 1 / sum_{k<n} q_k(x)^2.
double christoffel_weight(const std::vector<double>& q, int n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += q[static_cast<size_t>(k)] * q[static_cast<size_t>(k)];
    return 1.0 / s;
}

// Eigenvalues of the symmetric tridiagonal Jacobi matrix by the implicit QL
// method.  Eigenvectors are not needed (weights come from the Christoffel
// function), which keeps this a plain tql1-style routine.
std::vector<double> tridiag_eigenvalues(std::vector<double> d, std::vector<double> e) {
    int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                double dd = std::abs(d[static_cast<size_t>(m)]) +
                            std::abs(d[static_cast<size_t>(m + 1)]);
                if (std::abs(e[static_cast<size_t>(m)]) <= 1e-300 ||
                    std::abs(e[static_cast<size_t>(m)]) <= 2.3e-16 * dd)
                    break;
            }
            if (m == l) break;
            if (++iter > 60) throw std::runtime_error("quadrature: QL iteration failed");
            double g = (d[static_cast<size_t>(l + 1)] - d[static_cast<size_t>(l)]) /
                       (2.0 * e[static_cast<size_t>(l)]);
            double rr = std::hypot(g, 1.0);
            g = d[static_cast<size_t>(m)] - d[static_cast<size_t>(l)] +
                e[static_cast<size_t>(l)] / (g + std::copysign(rr, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[static_cast<size_t>(i)];
                double bb = c * e[static_cast<size_t>(i)];
                rr = std::hypot(f, g);
                e[static_cast<size_t>(i + 1)] = rr;
                if (rr == 0.0) {
                    d[static_cast<size_t>(i + 1)] -= p;
                    e[static_cast<size_t>(m)] = 0.0;
                    break;
                }
                s = f / rr;
                c = g / rr;
                g = d[static_cast<size_t>(i + 1)] - p;
                rr = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * bb;
                p = s * rr;
                d[static_cast<size_t>(i + 1)] = g + p;
                g = c * rr - bb;
            }
            if (rr == 0.0 && m - 1 >= l) continue;
            d[static_cast<size_t>(l)] -= p;
            e[static_cast<size_t>(l)] = g;
            e[static_cast<size_t>(m)] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> golub_welsch_nodes(const JacobiRecurrence& rec, int n) {
    std::vector<double> diag(static_cast<size_t>(n)), off;
    for (int k = 0; k < n; ++k) diag[static_cast<size_t>(k)] = rec.alpha(k);
    for (int k = 1; k < n; ++k) off.push_back(std::sqrt(rec.beta(k)));
    return tridiag_eigenvalues(std::move(diag), std::move(off));
}

// Newton iteration on q_n from Chebyshev-like initial guesses.  Returns false
// when a node fails to converge or ordering breaks, in which case the caller
// falls back to the eigenvalue method.
bool newton_nodes(const JacobiRecurrence& rec, int n, std::vector<double>& x) {
    x.resize(static_cast<size_t>(n));
    std::vector<double> q;
    double dq;
    for (int i = 0; i < n; ++i) {
        // guess angle shifted by the endpoint exponents (Gatteschi-flavoured)
        double theta = M_PI * (i + 0.75 + 0.5 * rec.A) /
                       (n + 0.5 * (rec.A + rec.B + 1.0));
        double xi = std::cos(theta);
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            eval_orthonormal(rec, n, xi, q, dq);
            double f = q[static_cast<size_t>(n)];
            if (dq == 0.0) break;
            double step = f / dq;
            xi -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(xi))) {
                ok = true;
                break;
            }
            if (!(xi > -1.0 && xi < 1.0)) break;
        }
        if (!ok) return false;
        x[static_cast<size_t>(i)] = xi;
    }
    std::sort(x.begin(), x.end());
    for (int i = 0; i + 1 < n; ++i)
        if (!(x[static_cast<size_t>(i + 1)] - x[static_cast<size_t>(i)] > 1e-14))
            return false;
    if (!(x.front() > -1.0 && x.back() < 1.0)) return false;
    return true;
}

QuadratureRule build_rule(int n, double a, double b, double A, double B,
                          QuadratureRule::Kind kind, double exponent) {
    if (n < 1) throw std::domain_error("quadrature: n must be >= 1");
    if (!(a < b)) throw std::domain_error("quadrature: need a < b");

    JacobiRecurrence rec(A, B);
    std::vector<double> x;
    if (n == 1) {
        x = {rec.alpha(0)};
    } else if (!newton_nodes(rec, n, x)) {
        x = golub_welsch_nodes(rec, n);
    }

    QuadratureRule rule;
    rule.kind = kind;
    rule.a = a;
    rule.b = b;
    rule.exponent = exponent;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));

    double half = 0.5 * (b - a);
    double scale = std::pow(half, A + B + 1.0);
    std::vector<double> q;
    double dq;
    for (int i = 0; i < n; ++i) {
        eval_orthonormal(rec, n, x[static_cast<size_t>(i)], q, dq);
        double w = christoffel_weight(q, n);
        rule.nodes[static_cast<size_t>(i)] = a + half * (x[static_cast<size_t>(i)] + 1.0);
        rule.weights[static_cast<size_t>(i)] = w * scale;
    }
    return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    return build_rule(n, a, b, 0.0, 0.0, QuadratureRule::Kind::Legendre, 0.0);
}

QuadratureRule gauss_jacobi(int n, double a, double b, double exponent) {
    if (!(exponent > -1.0)) throw std::domain_error("gauss_jacobi: exponent must be > -1");
    return build_rule(n, a, b, 0.0, exponent, QuadratureRule::Kind::Jacobi, exponent);
}

}  // namespace tempered
