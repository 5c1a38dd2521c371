#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tempered/mittag_leffler.hpp"
#include "tempered/wsgl.hpp"

using namespace tempered;

TEST_CASE("leading convolution weights") {
    double alpha = 0.8;
    std::vector<double> w = wsgl_conv_weights(alpha, 10);
    CHECK(w[0] == doctest::Approx(1.4));
    // g_1 = -alpha, omega_1 = (2+a)/2 g_1 - a/2 g_0
    CHECK(w[1] == doctest::Approx(1.4 * (-0.8) - 0.4 * 1.0));  // = -1.52
    CHECK(w[1] == doctest::Approx(-1.52));
}

TEST_CASE("binomial partial sums decrease to zero") {
    double alpha = 0.6;
    int N = 4000;
    // g_k = (-1)^k binom(alpha, k): partial sums tend to (1-1)^alpha = 0
    double g = 1.0, sum = 1.0;
    double prev_abs = 1.0;
    for (int k = 1; k <= N; ++k) {
        g *= 1.0 - (alpha + 1.0) / k;
        sum += g;
        if (k > 10) {
            CHECK(std::abs(sum) <= prev_abs + 1e-15);
            prev_abs = std::abs(sum);
        }
    }
    CHECK(std::abs(sum) < 2e-3);
}

TEST_CASE("empty correction set reduces to plain weights") {
    WsglWeights ww = wsgl_starting_weights(0.7, {}, 32);
    CHECK(ww.m == 0);
    CHECK(ww.start.empty());
    CHECK(ww.conv.size() == 33);
}

TEST_CASE("single correction weight closed form") {
    double alpha = 0.65;
    int N = 24;
    WsglWeights ww = wsgl_starting_weights(alpha, {alpha}, N);
    for (int n = 1; n <= N; ++n) {
        double conv = 0.0;
        for (int k = 0; k <= n; ++k)
            conv += ww.conv[static_cast<size_t>(n - k)] * std::pow(k, alpha);
        double want = std::tgamma(alpha + 1.0) - conv;  // n^{alpha-alpha} = 1
        CHECK(ww.W(n, 1) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("defining identity holds after the solve") {
    double alpha = 0.8;
    int N = 40;
    std::vector<double> sig = default_correction_exponents(alpha, 2);
    WsglWeights ww = wsgl_starting_weights(alpha, sig, N);
    for (int n = 1; n <= N; ++n) {
        for (int j = 0; j < 2; ++j) {
            double s = sig[static_cast<size_t>(j)];
            double lhs = 0.0;
            for (int k = 1; k <= 2; ++k) lhs += ww.W(n, k) * std::pow(k, s);
            double rhs = std::tgamma(s + 1.0) * rgamma(s + 1.0 - alpha) * std::pow(n, s - alpha);
            for (int k = 0; k <= n; ++k)
                rhs -= ww.conv[static_cast<size_t>(n - k)] * std::pow(k, s);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("exactness on the correction powers, untempered") {
    // discrete operator applied to t^{sigma_j} must reproduce the
    // Riemann-Liouville derivative at every node
    double alpha = 0.8;
    int N = 64;
    double T = 1.0, tau = T / N;
    std::vector<double> sig = default_correction_exponents(alpha, 2);
    WsglWeights ww = wsgl_starting_weights(alpha, sig, N);
    TemperedParams prm(alpha, 0.0);
    for (int j = 0; j < 2; ++j) {
        double s = sig[static_cast<size_t>(j)];
        std::vector<double> hist(static_cast<size_t>(N) + 1);
        for (int k = 0; k <= N; ++k) hist[static_cast<size_t>(k)] = std::pow(k * tau, s);
        for (int n = 1; n <= N; ++n) {
            double got = wsgl_tempered_apply(prm, tau, ww, hist, n);
            double want = std::tgamma(s + 1.0) * rgamma(s + 1.0 - alpha) *
                          std::pow(n * tau, s - alpha);
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("tempering off and constants annihilate") {
    double alpha = 0.55;
    int N = 20;
    WsglWeights ww = wsgl_starting_weights(alpha, {}, N);
    TemperedParams prm(alpha, 0.0);
    std::vector<double> hist(static_cast<size_t>(N) + 1, 7.5);
    double tau = 1.0 / N;
    for (int n = 1; n <= N; ++n)
        CHECK(std::abs(wsgl_tempered_apply(prm, tau, ww, hist, n)) < 1e-12);
}

TEST_CASE("condition estimate grows with the correction count") {
    double alpha = 0.4;
    WsglWeights w2 = wsgl_starting_weights(alpha, default_correction_exponents(alpha, 2), 16);
    WsglWeights w6 = wsgl_starting_weights(alpha, default_correction_exponents(alpha, 6), 16);
    CHECK(w2.condition_estimate >= 1.0);
    CHECK(w6.condition_estimate > w2.condition_estimate);
    CHECK_FALSE(w2.ill_conditioned);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(wsgl_conv_weights(1.2, 8), std::domain_error);
    CHECK_THROWS_AS(wsgl_starting_weights(0.5, {0.5, 0.4}, 8), std::domain_error);
    CHECK_THROWS_AS(wsgl_starting_weights(0.5, {0.5, 1.0, 1.5}, 3), std::domain_error);
    std::vector<double> nine(9);
    for (int i = 0; i < 9; ++i) nine[static_cast<size_t>(i)] = 0.1 * (i + 1);
    CHECK_THROWS_AS(wsgl_starting_weights(0.5, nine, 32), std::domain_error);
}
