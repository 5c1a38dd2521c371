#include "tempered/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tempered/mittag_leffler.hpp"

namespace tempered {

namespace {

struct Box {
    std::vector<double> lo, hi;
    void clamp(std::vector<double>& x) const {
        for (size_t i = 0; i < x.size(); ++i)
            x[i] = std::min(hi[i], std::max(lo[i], x[i]));
    }
};

double objective(SignalKind kind, const std::vector<double>& p,
                 const std::vector<double>& t, const std::vector<double>& y) {
    SignalModel m;
    m.kind = kind;
    m.p = p;
    double acc = 0.0;
    for (size_t j = 0; j < t.size(); ++j) {
        double r = eval_model(m, t[j]) - y[j];
        acc += r * r;
    }
    return acc / static_cast<double>(t.size());
}

// Nelder-Mead with box projection; deterministic.
struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

SimplexResult nelder_mead(SignalKind kind, std::vector<double> x0, const Box& box,
                          const std::vector<double>& t, const std::vector<double>& y,
                          int max_iter, double tol) {
    size_t n = x0.size();
    box.clamp(x0);
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (size_t i = 0; i < n; ++i) {
        double span = box.hi[i] - box.lo[i];
        double step = (span > 0.0) ? 0.1 * span : 0.05 * (1.0 + std::abs(x0[i]));
        pts[i + 1][i] += step;
        if (pts[i + 1][i] > box.hi[i]) pts[i + 1][i] = x0[i] - step;
        box.clamp(pts[i + 1]);
    }
    std::vector<double> fv(n + 1);
    for (size_t i = 0; i <= n; ++i) fv[i] = objective(kind, pts[i], t, y);

    SimplexResult res;
    int iter = 0;
    auto order = [&]() {
        std::vector<size_t> idx(n + 1);
        for (size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> p2;
        std::vector<double> f2;
        for (size_t i : idx) {
            p2.push_back(pts[i]);
            f2.push_back(fv[i]);
        }
        pts.swap(p2);
        fv.swap(f2);
    };

    for (; iter < max_iter; ++iter) {
        order();
        double spread = std::abs(fv[n] - fv[0]);
        double xspread = 0.0;
        for (size_t i = 0; i < n; ++i)
            xspread = std::max(xspread, std::abs(pts[n][i] - pts[0][i]) /
                                            (1.0 + std::abs(pts[0][i])));
        if (spread <= tol * (1.0 + std::abs(fv[0])) && xspread <= 1e3 * tol) {
            res.converged = true;
            break;
        }
        std::vector<double> cen(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = 0; k < n; ++k) cen[k] += pts[i][k];
        }
        for (size_t k = 0; k < n; ++k) cen[k] /= static_cast<double>(n);

        auto blend = [&](double c) {
            std::vector<double> p(n);
            for (size_t k = 0; k < n; ++k) p[k] = cen[k] + c * (cen[k] - pts[n][k]);
            box.clamp(p);
            return p;
        };
        std::vector<double> xr = blend(1.0);
        double fr = objective(kind, xr, t, y);
        if (fr < fv[0]) {
            std::vector<double> xe = blend(2.0);
            double fe = objective(kind, xe, t, y);
            if (fe < fr) {
                pts[n] = xe;
                fv[n] = fe;
            } else {
                pts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            pts[n] = xr;
            fv[n] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[n] ? 0.5 : -0.5);
            double fc = objective(kind, xc, t, y);
            if (fc < std::min(fr, fv[n])) {
                pts[n] = xc;
                fv[n] = fc;
            } else {
                for (size_t i = 1; i <= n; ++i) {
                    for (size_t k = 0; k < n; ++k)
                        pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
                    box.clamp(pts[i]);
                    fv[i] = objective(kind, pts[i], t, y);
                }
            }
        }
    }
    order();
    res.x = pts[0];
    res.f = fv[0];
    res.iterations = iter;
    return res;
}

SimplexResult fit_in_box(SignalKind kind, const std::vector<double>& x0, const Box& box,
                         const std::vector<double>& t, const std::vector<double>& y,
                         const FitConfig& cfg) {
    SimplexResult best = nelder_mead(kind, x0, box, t, y, cfg.max_iterations, cfg.tolerance);
    for (int r = 1; r <= cfg.restarts; ++r) {
        std::vector<double> xp = best.x;
        for (size_t i = 0; i < xp.size(); ++i) {
            double span = box.hi[i] - box.lo[i];
            double wiggle = 0.05 * span * ((r + static_cast<int>(i)) % 2 == 0 ? 1.0 : -1.0) /
                            static_cast<double>(r);
            xp[i] += wiggle;
        }
        SimplexResult alt = nelder_mead(kind, xp, box, t, y, cfg.max_iterations, cfg.tolerance);
        alt.iterations += best.iterations;
        if (alt.f < best.f) best = alt;
        else best.iterations = alt.iterations;
    }
    return best;
}

Box stage_box(const std::vector<double>& seed, size_t n_seeded, const FitConfig& cfg) {
    Box box;
    box.lo.resize(seed.size());
    box.hi.resize(seed.size());
    for (size_t i = 0; i < n_seeded; ++i) {
        double a = cfg.box_lo * seed[i], b = cfg.box_hi * seed[i];
        if (a > b) std::swap(a, b);
        if (a == b) b = a + 1e-12 + 1e-6 * std::abs(a);
        box.lo[i] = a;
        box.hi[i] = b;
    }
    return box;
}

}  // namespace

SignalModel SignalModel::monoexp(double A0, double T2, double C) {
    return {SignalKind::Monoexp, {A0, T2, C}};
}
SignalModel SignalModel::fractional(double A0, double T2, double C, double alpha) {
    return {SignalKind::Fractional, {A0, T2, C, alpha}};
}
SignalModel SignalModel::tempered(double A0, double T2, double C, double alpha,
                                  double rho, double varpi0) {
    return {SignalKind::Tempered, {A0, T2, C, alpha, rho, varpi0}};
}

double eval_model(const SignalModel& m, double t) {
    switch (m.kind) {
        case SignalKind::Monoexp:
            return m.p[0] * std::exp(-t / m.p[1]) + m.p[2];
        case SignalKind::Fractional: {
            double alpha = m.p[3];
            double z = -std::pow(t, alpha) / m.p[1];
            return m.p[0] * mittag_leffler_real(alpha, z, 1e-10) + m.p[2];
        }
        case SignalKind::Tempered: {
            double alpha = m.p[3], rho = m.p[4], w0 = m.p[5];
            std::complex<double> k3(1.0 / m.p[1], w0);
            std::complex<double> z = -k3 * std::pow(t, alpha);
            double mag = std::abs(mittag_leffler(alpha, z, 1e-10));
            return m.p[0] * std::exp(-rho * t) * mag + m.p[2];
        }
    }
    return 0.0;
}

double fit_mse(const SignalModel& m, const std::vector<double>& t,
               const std::vector<double>& y) {
    return objective(m.kind, m.p, t, y);
}

FitResult fit(SignalKind kind, const std::vector<double>& t,
              const std::vector<double>& y, const FitConfig& cfg) {
    if (t.size() != y.size() || t.empty())
        throw std::invalid_argument("fit: data vectors must be nonempty and equal-sized");
    size_t n_params = (kind == SignalKind::Monoexp) ? 3 : (kind == SignalKind::Fractional) ? 4 : 6;
    if (t.size() < n_params) throw std::invalid_argument("fit: too few data points");

    // stage 1: Monoexp with data-driven seeds inside generous scale boxes
    double ymax = *std::max_element(y.begin(), y.end());
    double ymin = *std::min_element(y.begin(), y.end());
    double tmax = *std::max_element(t.begin(), t.end());
    double C0 = std::max(ymin, 1e-6);
    double A0 = std::max(ymax - ymin, 1e-6);
    double T20 = std::max(tmax / 4.0, 1e-6);
    std::vector<double> seed1 = {A0, T20, C0};
    Box box1;
    box1.lo = {1e-3 * A0, 1e-3 * T20, 0.0};
    box1.hi = {1e3 * A0, 1e3 * T20, std::max(ymax, 1e-6)};
    SimplexResult mono = fit_in_box(SignalKind::Monoexp, seed1, box1, t, y, cfg);

    FitResult out;
    if (kind == SignalKind::Monoexp) {
        out.model = SignalModel{kind, mono.x};
        out.mse = mono.f;
        out.iterations = mono.iterations;
        out.converged = mono.converged;
        return out;
    }

    // stage 2: Fractional seeded from Monoexp; alpha free in (0, 1]
    std::vector<double> seed2 = {mono.x[0], mono.x[1], mono.x[2], 0.9};
    Box box2 = stage_box(seed2, 3, cfg);
    box2.lo[3] = 0.05;
    box2.hi[3] = 1.0;
    SimplexResult frac = fit_in_box(SignalKind::Fractional, seed2, box2, t, y, cfg);
    if (kind == SignalKind::Fractional) {
        out.model = SignalModel{kind, frac.x};
        out.mse = frac.f;
        out.iterations = mono.iterations + frac.iterations;
        out.converged = frac.converged;
        return out;
    }

    // stage 3: Tempered seeded from Fractional; rho and varpi0 free
    std::vector<double> seed3 = {frac.x[0], frac.x[1], frac.x[2], frac.x[3],
                                 cfg.rho_init, cfg.varpi0_init};
    Box box3 = stage_box(seed3, 4, cfg);
    box3.lo[4] = 0.0;
    box3.hi[4] = cfg.rho_max;
    box3.lo[5] = 0.0;
    box3.hi[5] = cfg.varpi0_max;
    SimplexResult temp = fit_in_box(SignalKind::Tempered, seed3, box3, t, y, cfg);
    out.model = SignalModel{kind, temp.x};
    out.mse = temp.f;
    out.iterations = mono.iterations + frac.iterations + temp.iterations;
    out.converged = temp.converged;
    return out;
}

void load_fit_data(const std::string& path, std::vector<double>& t,
                   std::vector<double>& y) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fit: cannot open data file " + path);
    t.clear();
    y.clear();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream ss(line);
        double a, b;
        if (ss >> a >> b) {
            t.push_back(a);
            y.push_back(b);
        }
        // non-numeric lines (headers) are skipped
    }
    if (t.empty()) throw std::runtime_error("fit: no usable rows in " + path);
}

}  // namespace tempered
