#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "tempered/l1_scheme.hpp"
#include "tempered/quadrature.hpp"

using namespace tempered;

namespace {

// Quadrature oracle: evaluates the tempered Caputo integral of the
// piecewise-linear interpolant of the history exactly (panelwise), with a
// right-endpoint Gauss-Jacobi rule absorbing the (t_n - s)^{-alpha} weight
// on the final panel.  Independent of the L1 summation formula under test.
double oracle_tempered_caputo(const GradedMesh& mesh, const TemperedParams& prm,
                              const std::vector<double>& u, int n) {
    const double alpha = prm.alpha, rho = prm.rho;
    const double tn = mesh.node(n);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        double a = mesh.node(k), b = mesh.node(k + 1);
        double slope = (u[static_cast<size_t>(k + 1)] - u[static_cast<size_t>(k)]) / (b - a);
        auto dF = [&](double s) {
            double uh = u[static_cast<size_t>(k)] + slope * (s - a);
            return std::exp(rho * s) * (slope + rho * uh);
        };
        if (k == n - 1) {
            // weight (t_n - s)^{-alpha}: reflect so the singular endpoint is at the left
            QuadratureRule jac = gauss_jacobi(40, 0.0, b - a, -alpha);
            for (size_t q = 0; q < jac.nodes.size(); ++q)
                acc += jac.weights[q] * dF(tn - jac.nodes[q]);
        } else {
            // dyadic refinement toward the singularity side keeps panels analytic
            int sub = 6;
            for (int j = 0; j < sub; ++j) {
                double lo = a + (b - a) * j / sub, hi = a + (b - a) * (j + 1) / sub;
                QuadratureRule leg = gauss_legendre(32, lo, hi);
                for (size_t q = 0; q < leg.nodes.size(); ++q)
                    acc += leg.weights[q] * std::pow(tn - leg.nodes[q], -alpha) * dF(leg.nodes[q]);
            }
        }
    }
    return std::exp(-rho * tn) / std::tgamma(1.0 - alpha) * acc;
}

std::vector<double> sample(const GradedMesh& mesh, const std::function<double(double)>& f) {
    std::vector<double> u(static_cast<size_t>(mesh.N) + 1);
    for (int k = 0; k <= mesh.N; ++k) u[static_cast<size_t>(k)] = f(mesh.node(k));
    return u;
}

}  // namespace

TEST_CASE("constant history annihilated when rho = 0") {
    GradedMesh mesh = build_graded_mesh(1.0, 12, 2.0);
    L1State st{TemperedParams(0.6, 0.0), mesh, std::vector<double>(13, 3.25)};
    for (int n = 1; n <= 12; ++n) CHECK(std::abs(l1_tempered_apply(st, n)) < 1e-13);
}

TEST_CASE("rho = 0 matches the classical graded-mesh L1 formula") {
    GradedMesh mesh = build_graded_mesh(1.0, 10, 3.0);
    TemperedParams prm(0.7, 0.0);
    auto u = sample(mesh, [](double t) { return t * t + 0.5 * t; });
    L1State st{prm, mesh, u};
    const double g2a = std::tgamma(2.0 - prm.alpha);
    for (int n = 1; n <= 10; ++n) {
        double direct = 0.0;
        for (int k = 0; k < n; ++k) {
            double br = std::pow(mesh.node(n) - mesh.node(k), 1.0 - prm.alpha) -
                        std::pow(mesh.node(n) - mesh.node(k + 1), 1.0 - prm.alpha);
            direct += (u[static_cast<size_t>(k + 1)] - u[static_cast<size_t>(k)]) /
                      mesh.step(k + 1) * br / g2a;
        }
        CHECK(l1_tempered_apply(st, n) == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("quadrature oracle equivalence at the spec example") {
    GradedMesh mesh = build_graded_mesh(1.0, 8, 1.0);
    TemperedParams prm(0.5, 0.5);
    auto u = sample(mesh, [](double t) { return t; });
    L1State st{prm, mesh, u};
    double got = l1_tempered_apply(st, 8);
    double want = oracle_tempered_caputo(mesh, prm, u, 8);
    CHECK(std::abs(got - want) < 1e-12);
}

TEST_CASE("quadrature oracle equivalence across meshes and histories") {
    for (double alpha : {0.4, 0.8}) {
        for (double rho : {0.0, 1.5}) {
            for (double r : {1.0, 3.0}) {
                GradedMesh mesh = build_graded_mesh(1.0, 16, r);
                TemperedParams prm(alpha, rho);
                for (auto f : {
                         std::function<double(double)>([](double t) { return t; }),
                         std::function<double(double)>([](double t) { return std::sin(3 * t) + 2; }),
                         std::function<double(double)>([](double t) { return std::pow(t, 0.3); }),
                     }) {
                    auto u = sample(mesh, f);
                    L1State st{prm, mesh, u};
                    for (int n : {1, 5, 16}) {
                        double got = l1_tempered_apply(st, n);
                        double want = oracle_tempered_caputo(mesh, prm, u, n);
                        CHECK(std::abs(got - want) < 1e-12 * std::max(1.0, std::abs(want)) + 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("step coefficients match the apply form") {
    GradedMesh mesh = build_graded_mesh(2.0, 9, 2.5);
    TemperedParams prm(0.35, 0.8);
    auto u = sample(mesh, [](double t) { return std::cos(t) + t; });
    L1State st{prm, mesh, u};
    for (int n = 1; n <= 9; ++n) {
        std::vector<double> c = l1_step_coefficients(mesh, prm, n);
        REQUIRE(static_cast<int>(c.size()) == n + 1);
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) acc += c[static_cast<size_t>(k)] * u[static_cast<size_t>(k)];
        CHECK(acc == doctest::Approx(l1_tempered_apply(st, n)).epsilon(1e-12));
        CHECK(c[static_cast<size_t>(n)] ==
              doctest::Approx(std::pow(mesh.step(n), -prm.alpha) / std::tgamma(2.0 - prm.alpha)));
    }
}

TEST_CASE("n = 1 coefficients in closed form") {
    GradedMesh mesh = build_graded_mesh(1.0, 4, 2.0);
    TemperedParams prm(0.6, 0.9);
    std::vector<double> c = l1_step_coefficients(mesh, prm, 1);
    double tau1 = mesh.step(1);
    double lead = std::pow(tau1, -prm.alpha) / std::tgamma(2.0 - prm.alpha);
    CHECK(c[1] == doctest::Approx(lead));
    CHECK(c[0] == doctest::Approx(-std::exp(-prm.rho * tau1) * lead));
}

TEST_CASE("coefficients annihilate constants when rho = 0") {
    GradedMesh mesh = build_graded_mesh(1.0, 7, 2.0);
    TemperedParams prm(0.45, 0.0);
    for (int n = 1; n <= 7; ++n) {
        std::vector<double> c = l1_step_coefficients(mesh, prm, n);
        double s = 0.0;
        for (double v : c) s += v;
        CHECK(std::abs(s) < 1e-12 * std::abs(c.back()));
    }
}

TEST_CASE("kernel increments stay positive") {
    GradedMesh mesh = build_graded_mesh(1.0, 24, 3.0);
    double alpha = 0.55;
    for (int n = 1; n <= 24; ++n) {
        for (int k = 0; k < n; ++k) {
            double inc = std::pow(mesh.node(n) - mesh.node(k), 1.0 - alpha) -
                         std::pow(mesh.node(n) - mesh.node(k + 1), 1.0 - alpha);
            CHECK(inc > 0.0);
        }
    }
}

TEST_CASE("history length is enforced") {
    GradedMesh mesh = build_graded_mesh(1.0, 4, 1.0);
    L1State st{TemperedParams(0.5, 0.0), mesh, std::vector<double>(3, 1.0)};
    CHECK_THROWS_AS(l1_tempered_apply(st, 4), std::out_of_range);
}
