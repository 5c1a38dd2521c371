#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tempered/quadrature.hpp"

using namespace tempered;

namespace {
double integrate(const QuadratureRule& r, double (*f)(double)) {
    double acc = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(r.nodes[i]);
    return acc;
}
}  // namespace

TEST_CASE("legendre midpoint") {
    QuadratureRule r = gauss_legendre(1, 2.0, 5.0);
    REQUIRE(r.nodes.size() == 1);
    CHECK(r.nodes[0] == doctest::Approx(3.5));
    CHECK(r.weights[0] == doctest::Approx(3.0));
}

TEST_CASE("legendre exactness degree") {
    QuadratureRule r5 = gauss_legendre(5, 0.0, 1.0);
    CHECK(integrate(r5, [](double x) { return std::pow(x, 9); }) ==
          doctest::Approx(0.1).epsilon(1e-14));
    QuadratureRule r16 = gauss_legendre(16, 0.0, 1.0);
    CHECK(integrate(r16, [](double x) { return std::pow(x, 20); }) ==
          doctest::Approx(1.0 / 21).epsilon(1e-13));
}

TEST_CASE("jacobi with zero exponent matches legendre") {
    QuadratureRule j = gauss_jacobi(8, -1.0, 2.0, 0.0);
    QuadratureRule l = gauss_legendre(8, -1.0, 2.0);
    for (size_t i = 0; i < 8; ++i) {
        CHECK(j.nodes[i] == doctest::Approx(l.nodes[i]).epsilon(1e-13));
        CHECK(j.weights[i] == doctest::Approx(l.weights[i]).epsilon(1e-13));
    }
}

TEST_CASE("jacobi singular weight closed form") {
    // integral of s^{-1/2} * s over [0,1] = 2/3
    QuadratureRule r = gauss_jacobi(4, 0.0, 1.0, -0.5);
    double acc = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * r.nodes[i];
    CHECK(acc == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("jacobi node containment at strong exponent") {
    QuadratureRule r = gauss_jacobi(20, 0.0, 1.0, -0.9);
    for (size_t i = 0; i < r.nodes.size(); ++i) {
        CHECK(r.nodes[i] > 0.0);
        CHECK(r.nodes[i] < 1.0);
        CHECK(r.weights[i] > 0.0);
        if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
}

TEST_CASE("weights sum to the weighted measure") {
    // Legendre: sum w = b - a
    QuadratureRule l = gauss_legendre(12, 0.5, 2.5);
    double sw = 0.0;
    for (double w : l.weights) sw += w;
    CHECK(sw == doctest::Approx(2.0).epsilon(1e-13));
    // Jacobi: sum w = integral of (s-a)^g = (b-a)^{g+1}/(g+1)
    for (double g : {-0.7, -0.2, 0.5, 1.0}) {
        QuadratureRule j = gauss_jacobi(10, 0.0, 2.0, g);
        double sj = 0.0;
        for (double w : j.weights) sj += w;
        CHECK(sj == doctest::Approx(std::pow(2.0, g + 1.0) / (g + 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("larger jacobi rules integrate weighted polynomials") {
    for (int n : {16, 32, 48}) {
        QuadratureRule r = gauss_jacobi(n, 0.0, 1.0, 0.8);
        // integral s^{0.8} s^3 = 1/4.8
        double acc = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i)
            acc += r.weights[i] * std::pow(r.nodes[i], 3);
        CHECK(acc == doctest::Approx(1.0 / 4.8).epsilon(1e-12));
    }
}

TEST_CASE("quadrature argument validation") {
    CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_legendre(4, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_jacobi(4, 0.0, 1.0, -1.0), std::domain_error);
}
