#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "tempered/inverse_laplace.hpp"
#include "tempered/mittag_leffler.hpp"

using namespace tempered;
using cplx = std::complex<double>;

TEST_CASE("construction validates and pairs poles conjugately") {
    RationalILT ilt = build_rational_ilt(14);
    REQUIRE(static_cast<int>(ilt.poles.size()) == 14);
    for (size_t k = 0; k < ilt.poles.size(); k += 2) {
        CHECK(ilt.poles[k].imag() > 0.0);
        CHECK(ilt.poles[k + 1].imag() == doctest::Approx(-ilt.poles[k].imag()).epsilon(1e-10));
        CHECK(ilt.poles[k + 1].real() == doctest::Approx(ilt.poles[k].real()).epsilon(1e-10));
        CHECK(ilt.poles[k].real() > 0.0);  // rotated convention: right half plane
    }
}

TEST_CASE("known transforms") {
    RationalILT ilt = build_rational_ilt(14);
    for (double t : {0.1, 1.0, 10.0}) {
        double v = invert_laplace(ilt, [](cplx s) { return 1.0 / s; }, t);
        CHECK(std::abs(v - 1.0) < 1e-10);
    }
    double e = invert_laplace(ilt, [](cplx s) { return 1.0 / (s + 1.0); }, 1.0);
    CHECK(std::abs(e - std::exp(-1.0)) < 1e-10);
    // t e^{-t} <-> 1/(s+1)^2
    double te = invert_laplace(ilt, [](cplx s) { return 1.0 / ((s + 1.0) * (s + 1.0)); }, 0.5);
    CHECK(std::abs(te - 0.5 * std::exp(-0.5)) < 1e-10);
}

TEST_CASE("Mittag-Leffler transform pair") {
    RationalILT ilt = build_rational_ilt(14);
    double alpha = 0.8;
    for (double t : {0.5, 1.0, 2.0}) {
        double v = invert_laplace(
            ilt, [alpha](cplx s) { return std::pow(s, alpha - 1.0) / (std::pow(s, alpha) + 1.0); },
            t);
        double want = mittag_leffler_real(alpha, -std::pow(t, alpha));
        CHECK(std::abs(v - want) < 1e-8);
    }
}

TEST_CASE("full conjugate sum has negligible imaginary part") {
    RationalILT ilt = build_rational_ilt(14);
    double t = 1.0;
    cplx acc = 0.0;
    for (size_t k = 0; k < ilt.poles.size(); ++k)
        acc += ilt.residues[k] / (ilt.poles[k] / t + 1.0);
    CHECK(std::abs(acc.imag()) < 1e-12 * std::max(1.0, std::abs(acc.real())));
}

TEST_CASE("other admissible orders also validate") {
    CHECK_NOTHROW(build_rational_ilt(12));
    CHECK_NOTHROW(build_rational_ilt(16));
}

TEST_CASE("order domain errors") {
    CHECK_THROWS_AS(build_rational_ilt(7), std::domain_error);
    CHECK_THROWS_AS(build_rational_ilt(13), std::domain_error);
    CHECK_THROWS_AS(build_rational_ilt(22), std::domain_error);
}
