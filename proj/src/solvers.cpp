#include "tempered/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "tempered/l1_scheme.hpp"
#include "tempered/soe.hpp"
#include "tempered/wsgl.hpp"

namespace tempered {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_seconds(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// L1 coefficient row with a shared exp(rho t_k) table; one pow per k.
void l1_row(const GradedMesh& mesh, double alpha, double rho, int n,
            const std::vector<double>& etab, std::vector<double>& c) {
    const double g2a = std::tgamma(2.0 - alpha);
    const double tn = mesh.node(n);
    const double emin = std::exp(-rho * tn);
    c.resize(static_cast<size_t>(n) + 1);
    double Pk = std::pow(tn, 1.0 - alpha);
    double b_prev = 0.0;
    for (int k = 0; k < n; ++k) {
        double b;
        if (k == n - 1) {
            b = std::pow(mesh.step(n), -alpha) / g2a;
        } else {
            double Pk1 = std::pow(tn - mesh.node(k + 1), 1.0 - alpha);
            b = (Pk - Pk1) / (mesh.step(k + 1) * g2a);
            Pk = Pk1;
        }
        if (k == 0)
            c[0] = -b * emin;
        else
            c[static_cast<size_t>(k)] = emin * etab[static_cast<size_t>(k)] * (b_prev - b);
        b_prev = b;
    }
    c[static_cast<size_t>(n)] = b_prev;
}

std::vector<double> exp_table(const GradedMesh& mesh, double rho) {
    if (rho * mesh.T > 600.0)
        throw std::domain_error("solver: rho*T too large for the damping table");
    std::vector<double> etab(static_cast<size_t>(mesh.N) + 1);
    for (int k = 0; k <= mesh.N; ++k) etab[static_cast<size_t>(k)] = std::exp(rho * mesh.node(k));
    return etab;
}

void dense_solve(std::vector<double>& A, std::vector<double>& b, int n) {
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[static_cast<size_t>(i) * n + k]) > std::abs(A[static_cast<size_t>(p) * n + k])) p = i;
        if (p != k) {
            for (int j = 0; j < n; ++j)
                std::swap(A[static_cast<size_t>(k) * n + j], A[static_cast<size_t>(p) * n + j]);
            std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(p)]);
        }
        double piv = A[static_cast<size_t>(k) * n + k];
        if (piv == 0.0) throw std::runtime_error("solver: singular start-up block");
        for (int i = k + 1; i < n; ++i) {
            double f = A[static_cast<size_t>(i) * n + k] / piv;
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j)
                A[static_cast<size_t>(i) * n + j] -= f * A[static_cast<size_t>(k) * n + j];
            b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(k)];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j)
            b[static_cast<size_t>(i)] -= A[static_cast<size_t>(i) * n + j] * b[static_cast<size_t>(j)];
        b[static_cast<size_t>(i)] /= A[static_cast<size_t>(i) * n + i];
    }
}

// Thomas algorithm for the constant-coefficient tridiagonal (off, diag, off).
void thomas_const(double off, double diag, std::vector<double>& rhs,
                  std::vector<double>& cw) {
    size_t n = rhs.size();
    cw.resize(n);
    cw[0] = off / diag;
    rhs[0] /= diag;
    for (size_t i = 1; i < n; ++i) {
        double m = diag - off * cw[i - 1];
        cw[i] = off / m;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / m;
    }
    for (size_t i = n - 1; i-- > 0;) rhs[i] -= cw[i] * rhs[i + 1];
}

// Banded LU (kl = ku = 2) with partial pivoting, LAPACK gbtf2-style layout.
struct Banded5 {
    int n = 0;
    static constexpr int kl = 2, ku = 2, kv = 4, ldab = 7;
    std::vector<double> ab;
    std::vector<int> ipiv;

    void reset(int nn) {
        n = nn;
        ab.assign(static_cast<size_t>(ldab) * n, 0.0);
        ipiv.assign(static_cast<size_t>(n), 0);
    }
    double& entry(int i, int j) { return ab[static_cast<size_t>(j) * ldab + (kv + i - j)]; }

    void factor() {
        int ju = 0;
        for (int j = 0; j < n; ++j) {
            int km = std::min(kl, n - 1 - j);
            int jp = 0;
            for (int t = 1; t <= km; ++t)
                if (std::abs(ab[static_cast<size_t>(j) * ldab + kv + t]) >
                    std::abs(ab[static_cast<size_t>(j) * ldab + kv + jp]))
                    jp = t;
            ipiv[static_cast<size_t>(j)] = j + jp;
            ju = std::max(ju, std::min(j + ku + jp, n - 1));
            if (jp != 0)
                for (int jj = j; jj <= ju; ++jj)
                    std::swap(ab[static_cast<size_t>(jj) * ldab + kv + j - jj],
                              ab[static_cast<size_t>(jj) * ldab + kv + j + jp - jj]);
            double piv = ab[static_cast<size_t>(j) * ldab + kv];
            if (piv == 0.0) throw std::runtime_error("solver: singular banded system");
            for (int t = 1; t <= km; ++t) ab[static_cast<size_t>(j) * ldab + kv + t] /= piv;
            for (int jj = j + 1; jj <= ju; ++jj) {
                double f = ab[static_cast<size_t>(jj) * ldab + kv + j - jj];
                if (f == 0.0) continue;
                for (int t = 1; t <= km; ++t)
                    ab[static_cast<size_t>(jj) * ldab + kv + j - jj + t] -=
                        f * ab[static_cast<size_t>(j) * ldab + kv + t];
            }
        }
    }
    void solve(std::vector<double>& b) const {
        for (int j = 0; j < n; ++j) {
            int km = std::min(kl, n - 1 - j);
            int p = ipiv[static_cast<size_t>(j)];
            if (p != j) std::swap(b[static_cast<size_t>(p)], b[static_cast<size_t>(j)]);
            for (int t = 1; t <= km; ++t)
                b[static_cast<size_t>(j + t)] -= ab[static_cast<size_t>(j) * ldab + kv + t] * b[static_cast<size_t>(j)];
        }
        for (int j = n - 1; j >= 0; --j) {
            b[static_cast<size_t>(j)] /= ab[static_cast<size_t>(j) * ldab + kv];
            int top = std::max(0, j - (kl + ku));
            for (int i = top; i < j; ++i)
                b[static_cast<size_t>(i)] -= ab[static_cast<size_t>(j) * ldab + kv + i - j] * b[static_cast<size_t>(j)];
        }
    }
};

SolverRun solve_scalar(const TemperedParams& params, const GradedMesh& mesh,
                       double k0, const std::function<double(double)>& f,
                       double u0, Scheme scheme, const SolveOptions& opts) {
    SolverRun run;
    run.scheme = scheme;
    const int N = mesh.N;
    std::vector<double>& u = run.trajectory;
    u.assign(static_cast<size_t>(N) + 1, 0.0);
    u[0] = u0;

    if (scheme == Scheme::L1) {
        std::vector<double> etab = exp_table(mesh, params.rho);
        std::vector<double> c;
        auto t0 = clock_type::now();
        for (int n = 1; n <= N; ++n) {
            l1_row(mesh, params.alpha, params.rho, n, etab, c);
            double hist = 0.0;
            for (int k = 0; k < n; ++k) hist += c[static_cast<size_t>(k)] * u[static_cast<size_t>(k)];
            double fn = f ? f(mesh.node(n)) : 0.0;
            u[static_cast<size_t>(n)] = (fn - hist) / (c[static_cast<size_t>(n)] + k0);
        }
        run.seconds = elapsed_seconds(t0);
        return run;
    }

    if (scheme == Scheme::WSGL) {
        if (!mesh.uniform())
            throw std::invalid_argument("solver: the WSGL scheme requires a uniform mesh");
        const double tau = mesh.T / N;
        std::vector<double> sigmas = opts.sigmas;
        if (sigmas.empty() && opts.wsgl_m > 0)
            sigmas = default_correction_exponents(params.alpha, opts.wsgl_m);
        WsglWeights ww = wsgl_starting_weights(params.alpha, sigmas, N);
        const int m = ww.m;
        const double tma = std::pow(tau, -params.alpha);

        std::vector<double> damp(static_cast<size_t>(N) + 1), prefix(static_cast<size_t>(N) + 1);
        for (int j = 0; j <= N; ++j) damp[static_cast<size_t>(j)] = std::exp(-params.rho * tau * j);
        prefix[0] = ww.conv[0];
        for (int j = 1; j <= N; ++j) prefix[static_cast<size_t>(j)] = prefix[static_cast<size_t>(j - 1)] + ww.conv[static_cast<size_t>(j)];
        std::vector<double> wd(static_cast<size_t>(N) + 1);
        for (int j = 0; j <= N; ++j) wd[static_cast<size_t>(j)] = ww.conv[static_cast<size_t>(j)] * damp[static_cast<size_t>(j)];

        auto wsum = [&](int n) {
            double s = 0.0;
            for (int j = 1; j <= m; ++j) s += ww.W(n, j);
            return s;
        };
        auto dampnk = [&](int n, int k) {
            return (k <= n) ? damp[static_cast<size_t>(n - k)]
                            : std::exp(params.rho * tau * (k - n));
        };
        auto coef0 = [&](int n) {
            return tma * damp[static_cast<size_t>(n)] *
                   (ww.conv[static_cast<size_t>(n)] - prefix[static_cast<size_t>(n)] - wsum(n));
        };

        auto t0 = clock_type::now();
        if (m > 0) {
            // the first m implicit equations couple u^1..u^m through the
            // starting weights; solve them as one block
            std::vector<double> B(static_cast<size_t>(m) * m, 0.0), rb(static_cast<size_t>(m));
            for (int n = 1; n <= m; ++n) {
                for (int k = 1; k <= m; ++k) {
                    double conv_part = (k <= n) ? ww.conv[static_cast<size_t>(n - k)] : 0.0;
                    double coef = tma * dampnk(n, k) * (conv_part + ww.W(n, k));
                    if (k == n) coef += k0;
                    B[static_cast<size_t>(n - 1) * m + (k - 1)] = coef;
                }
                double fn = f ? f(mesh.node(n)) : 0.0;
                rb[static_cast<size_t>(n - 1)] = fn - coef0(n) * u0;
            }
            dense_solve(B, rb, m);
            for (int n = 1; n <= m; ++n) u[static_cast<size_t>(n)] = rb[static_cast<size_t>(n - 1)];
        }
        for (int n = m + 1; n <= N; ++n) {
            double hist = coef0(n) * u0;
            const double* wdp = wd.data();
            const double* up = u.data();
            double acc = 0.0;
            for (int k = 1; k < n; ++k) acc += wdp[n - k] * up[k];
            hist += tma * acc;
            for (int j = 1; j <= m; ++j)
                hist += tma * ww.W(n, j) * damp[static_cast<size_t>(n - j)] * u[static_cast<size_t>(j)];
            double fn = f ? f(mesh.node(n)) : 0.0;
            u[static_cast<size_t>(n)] = (fn - hist) / (tma * ww.conv[0] + k0);
        }
        run.seconds = elapsed_seconds(t0);
        return run;
    }

    // FastL1
    double sigma = std::min(mesh.min_step(), 1.0);
    SoeBuildOptions sopts;
    sopts.nexp_cap = opts.soe_cap;
    SoeApprox soe = build_soe(1.0 + params.alpha, opts.soe_eps, sigma,
                              std::max(mesh.T, 1.0), sopts);
    FastHistory fh(params, std::move(soe), u0);
    auto t0 = clock_type::now();
    for (int n = 1; n <= N; ++n) {
        if (n >= 2)
            fh.advance(mesh.step(n - 1), mesh.step(n), u[static_cast<size_t>(n - 1)],
                       u[static_cast<size_t>(n - 2)], n);
        double fn = f ? f(mesh.node(n)) : 0.0;
        double known = fh.known_terms(u[static_cast<size_t>(n - 1)], mesh.node(n), mesh.step(n), n);
        u[static_cast<size_t>(n)] = (fn - known) / (fh.diag_coeff(mesh.step(n)) + k0);
    }
    run.seconds = elapsed_seconds(t0);
    return run;
}

}  // namespace

SpatialGrid build_spatial_grid(double x0, double xM, int M) {
    if (M < 2) throw std::domain_error("grid: M must be >= 2");
    if (!(x0 < xM)) throw std::domain_error("grid: need x0 < xM");
    SpatialGrid g;
    g.M = M;
    g.x0 = x0;
    g.xM = xM;
    g.h = (xM - x0) / M;
    g.x.resize(static_cast<size_t>(M) + 1);
    for (int i = 0; i <= M; ++i) g.x[static_cast<size_t>(i)] = x0 + g.h * i;
    g.x[static_cast<size_t>(M)] = xM;
    return g;
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::L1: return "l1";
        case Scheme::WSGL: return "wsgl";
        case Scheme::FastL1: return "fast";
    }
    return "?";
}

SolverRun solve_benchmark(const BenchmarkProblem& p, const GradedMesh& mesh,
                          Scheme scheme, const SolveOptions& opts) {
    return solve_scalar(p.params, mesh, p.k0, nullptr, p.u0, scheme, opts);
}

SolverRun solve_benchmark_forced(const BenchmarkProblem& p, const GradedMesh& mesh,
                                 Scheme scheme, const std::function<double(double)>& f,
                                 const SolveOptions& opts) {
    return solve_scalar(p.params, mesh, p.k0, f, p.u0, scheme, opts);
}

BlochRun solve_bloch(const BlochParams& p, const GradedMesh& mesh) {
    const int N = mesh.N;
    BlochRun run;
    run.Mz.assign(static_cast<size_t>(N) + 1, 0.0);
    run.Mx.assign(static_cast<size_t>(N) + 1, 0.0);
    run.My.assign(static_cast<size_t>(N) + 1, 0.0);
    run.Mz[0] = p.Mz0;
    run.Mx[0] = p.Mx0;
    run.My[0] = p.My0;

    std::vector<double> etab = exp_table(mesh, p.params.rho);
    std::vector<double> c;
    const double k1 = 1.0 / p.T1p, k2 = 1.0 / p.T2p, w0 = p.varpi0;
    auto t0 = clock_type::now();
    for (int n = 1; n <= N; ++n) {
        l1_row(mesh, p.params.alpha, p.params.rho, n, etab, c);
        double hz = 0.0, hx = 0.0, hy = 0.0;
        for (int k = 0; k < n; ++k) {
            double ck = c[static_cast<size_t>(k)];
            hz += ck * run.Mz[static_cast<size_t>(k)];
            hx += ck * run.Mx[static_cast<size_t>(k)];
            hy += ck * run.My[static_cast<size_t>(k)];
        }
        double cn = c[static_cast<size_t>(n)];
        run.Mz[static_cast<size_t>(n)] = (p.M0 * k1 - hz) / (cn + k1);
        // coupled transverse block: (cn + k2) Mx - w0 My = -hx ; w0 Mx + (cn + k2) My = -hy
        double a = cn + k2;
        double det = a * a + w0 * w0;
        run.Mx[static_cast<size_t>(n)] = (a * (-hx) + w0 * (-hy)) / det;
        run.My[static_cast<size_t>(n)] = (-w0 * (-hx) + a * (-hy)) / det;
    }
    run.seconds = elapsed_seconds(t0);
    return run;
}

FieldRun solve_diffusion(const DiffusionProblem& p, const GradedMesh& mesh,
                         const SpatialGrid& grid, const DiffusionOptions& opts) {
    const int N = mesh.N, M = grid.M;
    const double h = grid.h;
    const double alpha = p.params.alpha, rho = p.params.rho;
    const double g2a = std::tgamma(2.0 - alpha), g1a = std::tgamma(1.0 - alpha);

    FieldRun run;
    run.N = N;
    run.M = M;
    run.field.assign(static_cast<size_t>(N + 1) * (M + 1), 0.0);
    for (int i = 0; i <= M; ++i)
        run.field[static_cast<size_t>(i)] = p.psi ? p.psi(grid.x[static_cast<size_t>(i)]) : 0.0;

    auto forcing = [&](int i, double t) -> double {
        if (opts.forcing) return opts.forcing(grid.x[static_cast<size_t>(i)], t);
        if (p.f) return p.f(grid.x[static_cast<size_t>(i)]);
        return 0.0;
    };

    const double off = -p.D / (h * h);
    std::vector<double> rhs(static_cast<size_t>(M) - 1), cw;

    if (!opts.fast) {
        std::vector<double> etab = exp_table(mesh, rho);
        std::vector<double> c;
        auto t0 = clock_type::now();
        for (int n = 1; n <= N; ++n) {
            l1_row(mesh, alpha, rho, n, etab, c);
            double tn = mesh.node(n);
            for (int i = 1; i < M; ++i) rhs[static_cast<size_t>(i - 1)] = forcing(i, tn);
            for (int k = 0; k < n; ++k) {
                double ck = c[static_cast<size_t>(k)];
                const double* row = run.field.data() + static_cast<size_t>(k) * (M + 1);
                for (int i = 1; i < M; ++i) rhs[static_cast<size_t>(i - 1)] -= ck * row[i];
            }
            double diag = c[static_cast<size_t>(n)] - 2.0 * off;
            thomas_const(off, diag, rhs, cw);
            double* out = run.field.data() + static_cast<size_t>(n) * (M + 1);
            out[0] = 0.0;
            out[M] = 0.0;
            for (int i = 1; i < M; ++i) out[i] = rhs[static_cast<size_t>(i - 1)];
        }
        run.seconds = elapsed_seconds(t0);
        return run;
    }

    // fast scheme: per-node SOE accumulators, shared per-step coefficients
    double sigma = std::min(mesh.min_step(), 1.0);
    SoeBuildOptions sopts;
    sopts.nexp_cap = opts.soe_cap;
    SoeApprox soe = build_soe(1.0 + alpha, opts.soe_eps, sigma, std::max(mesh.T, 1.0), sopts);
    const int ne = soe.nexp();
    std::vector<double> acc(static_cast<size_t>(M - 1) * ne, 0.0);
    SoeStepCoeffs sc;

    auto t0 = clock_type::now();
    for (int n = 1; n <= N; ++n) {
        double tn = mesh.node(n), tau = mesh.step(n);
        double cloc = std::pow(tau, -alpha) / g2a;
        double c_prev = alpha * std::exp(-rho * tau) / (std::pow(tau, alpha) * g2a);
        double c_zero = std::exp(-rho * tn) / (g1a * std::pow(tn, alpha));
        const double* row_prev = run.field.data() + static_cast<size_t>(n - 1) * (M + 1);
        const double* row0 = run.field.data();

        if (n >= 2) {
            soe_step_coeffs(soe, rho, mesh.step(n - 1), tau, sc);
            const double* row_prev2 = run.field.data() + static_cast<size_t>(n - 2) * (M + 1);
            const double* wts = soe.weights.data();
            for (int i = 1; i < M; ++i) {
                double u1 = row_prev[i], u2 = row_prev2[i];
                double* a = acc.data() + static_cast<size_t>(i - 1) * ne;
                double dot = 0.0;
                for (int q = 0; q < ne; ++q) {
                    a[q] = sc.decay[static_cast<size_t>(q)] * a[q] +
                           sc.w_prev[static_cast<size_t>(q)] * u1 +
                           sc.w_prev2[static_cast<size_t>(q)] * u2;
                    dot += wts[q] * a[q];
                }
                rhs[static_cast<size_t>(i - 1)] = forcing(i, tn) + c_prev * u1 +
                                                  c_zero * row0[i] + (alpha / g1a) * dot;
            }
        } else {
            double c1 = std::exp(-rho * tau) / (std::pow(tau, alpha) * g2a);
            for (int i = 1; i < M; ++i)
                rhs[static_cast<size_t>(i - 1)] = forcing(i, tn) + c1 * row0[i];
        }
        double diag = cloc - 2.0 * off;
        thomas_const(off, diag, rhs, cw);
        double* out = run.field.data() + static_cast<size_t>(n) * (M + 1);
        out[0] = 0.0;
        out[M] = 0.0;
        for (int i = 1; i < M; ++i) out[i] = rhs[static_cast<size_t>(i - 1)];
    }
    run.seconds = elapsed_seconds(t0);
    return run;
}

FieldRun solve_twolayer(const TwoLayerProblem& p, const GradedMesh& mesh,
                        const SpatialGrid& grid, const TwoLayerOptions& opts) {
    p.validate();
    const int N = mesh.N, M = grid.M;
    const double h = grid.h;
    const LayerSpec& L1 = p.layer1;
    const LayerSpec& L2 = p.layer2;

    double m1_real = (p.interface() - grid.x0) / h;
    int M1 = static_cast<int>(std::lround(m1_real));
    if (std::abs(m1_real - M1) > 1e-9 || M1 < 2 || M1 > M - 2)
        throw std::invalid_argument("twolayer: interface must coincide with an interior grid node");

    FieldRun run;
    run.N = N;
    run.M = M;
    run.field.assign(static_cast<size_t>(N + 1) * (M + 1), 0.0);
    for (int i = 0; i <= M; ++i) {
        double x = grid.x[static_cast<size_t>(i)];
        double v;
        if (i < M1)
            v = p.X10_constant ? p.X10_value : p.X10(x);
        else if (i > M1)
            v = p.X20_constant ? p.X20_value : p.X20(x);
        else
            v = 0.5 * ((p.X10_constant ? p.X10_value : p.X10(x)) +
                       (p.X20_constant ? p.X20_value : p.X20(x)));
        run.field[static_cast<size_t>(i)] = v;
    }

    std::vector<double> etab1 = exp_table(mesh, L1.params.rho);
    std::vector<double> etab2 = exp_table(mesh, L2.params.rho);
    std::vector<double> c1, c2, rhs(static_cast<size_t>(M) + 1);
    Banded5 band;

    auto t0 = clock_type::now();
    for (int n = 1; n <= N; ++n) {
        double tn = mesh.node(n);
        l1_row(mesh, L1.params.alpha, L1.params.rho, n, etab1, c1);
        l1_row(mesh, L2.params.alpha, L2.params.rho, n, etab2, c2);

        std::fill(rhs.begin(), rhs.end(), 0.0);
        for (int i = 1; i < M1; ++i) rhs[static_cast<size_t>(i)] = L1.Sa;
        for (int i = M1 + 1; i < M; ++i) rhs[static_cast<size_t>(i)] = L2.Sa;
        if (opts.iface == InterfaceScheme::Conservative)
            rhs[static_cast<size_t>(M1)] = 0.5 * (L1.Sa + L2.Sa);
        for (int k = 0; k < n; ++k) {
            double a1 = c1[static_cast<size_t>(k)], a2 = c2[static_cast<size_t>(k)];
            const double* row = run.field.data() + static_cast<size_t>(k) * (M + 1);
            for (int i = 1; i < M1; ++i) rhs[static_cast<size_t>(i)] -= a1 * row[i];
            for (int i = M1 + 1; i < M; ++i) rhs[static_cast<size_t>(i)] -= a2 * row[i];
            if (opts.iface == InterfaceScheme::Conservative)
                rhs[static_cast<size_t>(M1)] -= 0.5 * (a1 + a2) * row[M1];
        }
        rhs[0] = p.fL ? p.fL(tn) : 0.0;
        rhs[static_cast<size_t>(M)] = p.fR ? p.fR(tn) : 0.0;

        band.reset(M + 1);
        band.entry(0, 0) = 1.0;
        band.entry(M, M) = 1.0;
        double o1 = -L1.D / (h * h), o2 = -L2.D / (h * h);
        for (int i = 1; i < M1; ++i) {
            band.entry(i, i - 1) = o1;
            band.entry(i, i) = c1[static_cast<size_t>(n)] - 2.0 * o1 - L1.Sb;
            band.entry(i, i + 1) = o1;
        }
        for (int i = M1 + 1; i < M; ++i) {
            band.entry(i, i - 1) = o2;
            band.entry(i, i) = c2[static_cast<size_t>(n)] - 2.0 * o2 - L2.Sb;
            band.entry(i, i + 1) = o2;
        }
        switch (opts.iface) {
            case InterfaceScheme::OneSided2:
                // D1(3X - 4X- + X--) + D2(3X - 4X+ + X++) = 0
                band.entry(M1, M1 - 2) = L1.D;
                band.entry(M1, M1 - 1) = -4.0 * L1.D;
                band.entry(M1, M1) = 3.0 * (L1.D + L2.D);
                band.entry(M1, M1 + 1) = -4.0 * L2.D;
                band.entry(M1, M1 + 2) = L2.D;
                break;
            case InterfaceScheme::OneSided1:
                band.entry(M1, M1 - 1) = -L1.D;
                band.entry(M1, M1) = L1.D + L2.D;
                band.entry(M1, M1 + 1) = -L2.D;
                break;
            case InterfaceScheme::Conservative:
                band.entry(M1, M1 - 1) = o1;
                band.entry(M1, M1) = 0.5 * (c1[static_cast<size_t>(n)] + c2[static_cast<size_t>(n)]) -
                                     o1 - o2 - 0.5 * (L1.Sb + L2.Sb);
                band.entry(M1, M1 + 1) = o2;
                break;
        }
        band.factor();
        band.solve(rhs);
        double* out = run.field.data() + static_cast<size_t>(n) * (M + 1);
        for (int i = 0; i <= M; ++i) out[i] = rhs[static_cast<size_t>(i)];
    }
    run.seconds = elapsed_seconds(t0);
    return run;
}

std::vector<double> stability_theta(const GradedMesh& mesh, double alpha, int n) {
    // d_{nu,k} = [(t_nu - t_{nu-k})^{1-a} - (t_nu - t_{nu-k+1})^{1-a}] / tau_{nu-k+1}
    auto dval = [&](int nu, int k) {
        if (k == 1) return std::pow(mesh.step(nu), -alpha);
        return (std::pow(mesh.node(nu) - mesh.node(nu - k), 1.0 - alpha) -
                std::pow(mesh.node(nu) - mesh.node(nu - k + 1), 1.0 - alpha)) /
               mesh.step(nu - k + 1);
    };
    std::vector<std::vector<double>> theta(static_cast<size_t>(n) + 1);
    for (int nu = 1; nu <= n; ++nu) {
        theta[static_cast<size_t>(nu)].assign(static_cast<size_t>(nu) + 1, 0.0);
        theta[static_cast<size_t>(nu)][static_cast<size_t>(nu)] = 1.0;
        for (int j = nu - 1; j >= 1; --j) {
            double acc = 0.0;
            for (int k = 1; k <= nu - j; ++k)
                acc += std::pow(mesh.step(nu - k), alpha) * (dval(nu, k) - dval(nu, k + 1)) *
                       theta[static_cast<size_t>(nu - k)][static_cast<size_t>(j)];
            theta[static_cast<size_t>(nu)][static_cast<size_t>(j)] = acc;
        }
    }
    return theta[static_cast<size_t>(n)];
}

}  // namespace tempered
