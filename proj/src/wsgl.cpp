#include "tempered/wsgl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tempered/mittag_leffler.hpp"

namespace tempered {

namespace {

// Column-equilibrated LU with partial pivoting, plus an explicit inverse for
// the 1-norm condition estimate (m <= 8, so the direct inverse is cheap).
struct SmallLU {
    int m;
    std::vector<double> lu;
    std::vector<int> piv;
    std::vector<double> colscale;
    double cond1 = 1.0;

    explicit SmallLU(std::vector<double> A, int mm) : m(mm), lu(std::move(A)) {
        colscale.assign(static_cast<size_t>(m), 1.0);
        double norm1 = 0.0;
        for (int j = 0; j < m; ++j) {
            double cmax = 0.0, csum = 0.0;
            for (int i = 0; i < m; ++i) {
                cmax = std::max(cmax, std::abs(at(i, j)));
                csum += std::abs(at(i, j));
            }
            norm1 = std::max(norm1, csum);
            if (cmax > 0.0) colscale[static_cast<size_t>(j)] = 1.0 / cmax;
        }
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) at(i, j) *= colscale[static_cast<size_t>(j)];

        piv.resize(static_cast<size_t>(m));
        for (int k = 0; k < m; ++k) {
            int p = k;
            for (int i = k + 1; i < m; ++i)
                if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
            piv[static_cast<size_t>(k)] = p;
            if (p != k)
                for (int j = 0; j < m; ++j) std::swap(at(k, j), at(p, j));
            if (at(k, k) == 0.0) throw std::runtime_error("wsgl: singular starting-weight system");
            for (int i = k + 1; i < m; ++i) {
                at(i, k) /= at(k, k);
                for (int j = k + 1; j < m; ++j) at(i, j) -= at(i, k) * at(k, j);
            }
        }

        // inverse column-by-column for ||A^{-1}||_1 (on the original matrix)
        double inorm = 0.0;
        std::vector<double> e(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j) {
            std::fill(e.begin(), e.end(), 0.0);
            e[static_cast<size_t>(j)] = 1.0;
            solve(e);
            double csum = 0.0;
            for (double v : e) csum += std::abs(v);
            inorm = std::max(inorm, csum);
        }
        cond1 = norm1 * inorm;
    }

    double& at(int i, int j) { return lu[static_cast<size_t>(i) * m + j]; }
    double cat(int i, int j) const { return lu[static_cast<size_t>(i) * m + j]; }

    void solve(std::vector<double>& b) const {
        for (int k = 0; k < m; ++k)
            if (piv[static_cast<size_t>(k)] != k)
                std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(piv[static_cast<size_t>(k)])]);
        for (int i = 1; i < m; ++i)
            for (int j = 0; j < i; ++j) b[static_cast<size_t>(i)] -= cat(i, j) * b[static_cast<size_t>(j)];
        for (int i = m - 1; i >= 0; --i) {
            for (int j = i + 1; j < m; ++j) b[static_cast<size_t>(i)] -= cat(i, j) * b[static_cast<size_t>(j)];
            b[static_cast<size_t>(i)] /= cat(i, i);
        }
        for (int i = 0; i < m; ++i) b[static_cast<size_t>(i)] *= colscale[static_cast<size_t>(i)];
    }
};

}  // namespace

std::vector<double> wsgl_conv_weights(double alpha, int N) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("wsgl: alpha must lie in (0,1)");
    if (N < 1) throw std::domain_error("wsgl: N must be >= 1");
    std::vector<double> w(static_cast<size_t>(N) + 1);
    double c1 = 0.5 * (2.0 + alpha), c2 = 0.5 * alpha;
    double g_prev = 1.0;  // g_0
    w[0] = c1;
    for (int k = 1; k <= N; ++k) {
        double g = (1.0 - (alpha + 1.0) / k) * g_prev;
        w[static_cast<size_t>(k)] = c1 * g - c2 * g_prev;
        g_prev = g;
    }
    return w;
}

std::vector<double> default_correction_exponents(double alpha, int m) {
    std::vector<double> s(static_cast<size_t>(m));
    for (int j = 1; j <= m; ++j) s[static_cast<size_t>(j - 1)] = j * alpha;
    return s;
}

WsglWeights wsgl_starting_weights(double alpha, const std::vector<double>& sigmas, int N) {
    int m = static_cast<int>(sigmas.size());
    if (m > 8) throw std::domain_error("wsgl: at most 8 correction exponents");
    for (int j = 0; j < m; ++j) {
        if (!(sigmas[static_cast<size_t>(j)] > 0.0))
            throw std::domain_error("wsgl: correction exponents must be positive");
        if (j > 0 && !(sigmas[static_cast<size_t>(j)] > sigmas[static_cast<size_t>(j - 1)]))
            throw std::domain_error("wsgl: correction exponents must be increasing");
    }
    if (N <= m) throw std::domain_error("wsgl: need N > m");

    WsglWeights ww;
    ww.alpha = alpha;
    ww.N = N;
    ww.m = m;
    ww.sigmas = sigmas;
    ww.conv = wsgl_conv_weights(alpha, N);
    if (m == 0) return ww;

    std::vector<double> A(static_cast<size_t>(m) * m);
    for (int j = 0; j < m; ++j)
        for (int k = 1; k <= m; ++k)
            A[static_cast<size_t>(j) * m + (k - 1)] = std::pow(k, sigmas[static_cast<size_t>(j)]);
    SmallLU lu(A, m);
    ww.condition_estimate = lu.cond1;
    ww.ill_conditioned = lu.cond1 > 1e12;

    // k^{sigma_j} tables and the full convolution sums for every n
    ww.start.assign(static_cast<size_t>(N) * m, 0.0);
    std::vector<double> rhs(static_cast<size_t>(m));
    std::vector<double> kpow(static_cast<size_t>(N) + 1);
    std::vector<std::vector<double>> convsum(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
        double sj = sigmas[static_cast<size_t>(j)];
        kpow[0] = 0.0;
        for (int k = 1; k <= N; ++k) kpow[static_cast<size_t>(k)] = std::pow(k, sj);
        convsum[static_cast<size_t>(j)].assign(static_cast<size_t>(N) + 1, 0.0);
        for (int n = 1; n <= N; ++n) {
            double acc = 0.0;
            const double* wv = ww.conv.data();
            const double* pv = kpow.data();
            for (int k = 1; k <= n; ++k) acc += wv[n - k] * pv[k];
            convsum[static_cast<size_t>(j)][static_cast<size_t>(n)] = acc;
        }
    }
    for (int n = 1; n <= N; ++n) {
        for (int j = 0; j < m; ++j) {
            double sj = sigmas[static_cast<size_t>(j)];
            double exact = std::tgamma(sj + 1.0) * rgamma(sj + 1.0 - alpha) *
                           std::pow(n, sj - alpha);
            rhs[static_cast<size_t>(j)] = exact - convsum[static_cast<size_t>(j)][static_cast<size_t>(n)];
        }
        lu.solve(rhs);
        for (int j = 0; j < m; ++j)
            ww.start[static_cast<size_t>(n - 1) * m + j] = rhs[static_cast<size_t>(j)];
    }
    return ww;
}

double wsgl_tempered_apply(const TemperedParams& params, double tau,
                           const WsglWeights& weights,
                           const std::vector<double>& history, int n) {
    if (n < 1 || n > weights.N) throw std::out_of_range("wsgl_tempered_apply: n out of range");
    int need = std::max(n, weights.m);
    if (static_cast<int>(history.size()) < need + 1)
        throw std::out_of_range("wsgl_tempered_apply: history incomplete");

    const double rho = params.rho;
    const double u0 = history[0];
    double conv = 0.0, conv_w = 0.0;
    for (int k = 0; k <= n; ++k) {
        double w = weights.conv[static_cast<size_t>(n - k)];
        conv += w * std::exp(-rho * tau * (n - k)) * history[static_cast<size_t>(k)];
        conv_w += w;
    }
    double corr = 0.0, corr_w = 0.0;
    for (int j = 1; j <= weights.m; ++j) {
        double W = weights.W(n, j);
        corr += W * std::exp(-rho * tau * (n - j)) * history[static_cast<size_t>(j)];
        corr_w += W;
    }
    double damp0 = std::exp(-rho * tau * n);
    return std::pow(tau, -params.alpha) *
           (conv - damp0 * conv_w * u0 + corr - damp0 * corr_w * u0);
}

}  // namespace tempered
