#include "tempered/inverse_laplace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tempered/mittag_leffler.hpp"

namespace tempered {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.141592653589793238462643383279502884;

// In-place radix-2 FFT, forward convention X_k = sum_m x_m e^{-2 pi i k m / n}.
void fft(std::vector<cplx>& x) {
    size_t n = x.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = -2.0 * kPi / static_cast<double>(len);
        cplx wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (size_t k = 0; k < len / 2; ++k) {
                cplx a = x[i + k], b = x[i + k + len / 2] * w;
                x[i + k] = a + b;
                x[i + k + len / 2] = a - b;
                w *= wl;
            }
        }
    }
}

// Cyclic Jacobi eigensolver for a symmetric matrix (row-major, n x n).
// Returns eigenvalues; V's columns (V[i*n+j] = component i of eigenvector j)
// hold the eigenvectors.
std::vector<double> jacobi_eigen(std::vector<double> a, int n, std::vector<double>& V) {
    V.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) V[static_cast<size_t>(i) * n + i] = 1.0;
    auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        if (off < 1e-300) break;
        double thresh = (sweep < 3) ? 0.2 * off / (n * n) : 0.0;
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = A(p, q);
                if (std::abs(apq) <= thresh) continue;
                double app = A(p, p), aqq = A(q, q);
                if (std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq)) + 1e-300)
                    continue;
                double theta = 0.5 * (aqq - app) / apq;
                double t = std::copysign(1.0, theta) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V[static_cast<size_t>(k) * n + p];
                    double vkq = V[static_cast<size_t>(k) * n + q];
                    V[static_cast<size_t>(k) * n + p] = c * vkp - s * vkq;
                    V[static_cast<size_t>(k) * n + q] = s * vkp + c * vkq;
                }
                rotated = true;
            }
        }
        if (!rotated && sweep >= 3) break;
    }
    std::vector<double> eig(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = A(i, i);
    return eig;
}

cplx horner(const std::vector<cplx>& lead_first, cplx x) {
    cplx r = 0.0;
    for (const cplx& c : lead_first) r = r * x + c;
    return r;
}

// Aberth-Ehrlich simultaneous root iteration (leading coefficient first).
std::vector<cplx> poly_roots(std::vector<cplx> c) {
    double cmax = 0.0;
    for (const cplx& v : c) cmax = std::max(cmax, std::abs(v));
    if (cmax == 0.0) throw std::runtime_error("poly_roots: zero polynomial");
    size_t lead = 0;
    while (lead < c.size() && std::abs(c[lead]) < 1e-14 * cmax) ++lead;
    c.erase(c.begin(), c.begin() + static_cast<long>(lead));
    int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1) return {};

    std::vector<cplx> dc(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i)
        dc[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] * static_cast<double>(deg - i);

    std::vector<cplx> x(static_cast<size_t>(deg));
    double base = std::pow(std::abs(c.back() / c.front()), 1.0 / deg);
    if (!(base > 1e-8 && base < 1e8)) base = 1.0;
    for (int i = 0; i < deg; ++i) {
        double ang = 2.0 * kPi * i / deg + 0.7;
        double rad = base * (0.6 + 0.8 * ((i * 2654435761u >> 16) % 97) / 96.0);
        x[static_cast<size_t>(i)] = std::polar(rad, ang);
    }

    for (int iter = 0; iter < 800; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < deg; ++i) {
            cplx xi = x[static_cast<size_t>(i)];
            cplx p = horner(c, xi);
            cplx dp = horner(dc, xi);
            if (dp == cplx(0.0)) {
                x[static_cast<size_t>(i)] = xi + 1e-6;
                worst = 1.0;
                continue;
            }
            cplx newton = p / dp;
            cplx sum = 0.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) sum += 1.0 / (xi - x[static_cast<size_t>(j)]);
            cplx w = newton / (1.0 - newton * sum);
            x[static_cast<size_t>(i)] = xi - w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(xi)));
        }
        if (worst < 1e-14) return x;
    }
    throw std::runtime_error("poly_roots: Aberth iteration did not converge");
}

// Caratheodory-Fejer approximation of e^z on (-inf, 0], type (K, K).
// Chebyshev coefficients via FFT, Hankel singular triple via the symmetric
// eigendecomposition, Blaschke correction on the unit circle, poles from the
// singular-vector polynomial.
void cf_poles_residues(int K, std::vector<cplx>& zpol, std::vector<cplx>& cres) {
    const int nf = 1024;
    const int Kc = 75;
    const double scl = 9.0;

    std::vector<cplx> w(nf), F(nf);
    for (int m = 0; m < nf; ++m) {
        double ang = 2.0 * kPi * m / nf;
        w[static_cast<size_t>(m)] = std::polar(1.0, ang);
        double t = std::cos(ang);
        F[static_cast<size_t>(m)] = std::exp(scl * (t - 1.0) / (t + 1.0 + 1e-16));
    }
    std::vector<cplx> Fc = F;
    fft(Fc);
    std::vector<double> c(nf);
    for (int j = 0; j < nf; ++j) c[static_cast<size_t>(j)] = Fc[static_cast<size_t>(j)].real() / nf;

    // Hankel H[i][j] = c[1+i+j] (zero past the anti-diagonal)
    std::vector<double> H(static_cast<size_t>(Kc) * Kc, 0.0);
    for (int i = 0; i < Kc; ++i)
        for (int j = 0; j < Kc; ++j)
            if (1 + i + j <= Kc) H[static_cast<size_t>(i) * Kc + j] = c[static_cast<size_t>(1 + i + j)];

    std::vector<double> V;
    std::vector<double> eig = jacobi_eigen(H, Kc, V);
    std::vector<int> order(static_cast<size_t>(Kc));
    for (int i = 0; i < Kc; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(eig[static_cast<size_t>(a)]) > std::abs(eig[static_cast<size_t>(b)]);
    });
    int idx = order[static_cast<size_t>(K)];  // (K+1)-th singular triple
    double lambda = eig[static_cast<size_t>(idx)];
    double s = std::abs(lambda);
    double sgn = (lambda >= 0.0) ? 1.0 : -1.0;

    std::vector<double> vvec(static_cast<size_t>(Kc)), uvec(static_cast<size_t>(Kc));
    for (int i = 0; i < Kc; ++i) {
        double q = V[static_cast<size_t>(i) * Kc + idx];
        vvec[static_cast<size_t>(i)] = q;
        uvec[static_cast<size_t>(Kc - 1 - i)] = sgn * q;  // reversed U column
    }

    std::vector<cplx> upad(nf, 0.0), vpad(nf, 0.0);
    for (int i = 0; i < Kc; ++i) {
        upad[static_cast<size_t>(i)] = uvec[static_cast<size_t>(i)];
        vpad[static_cast<size_t>(i)] = vvec[static_cast<size_t>(i)];
    }
    fft(upad);
    fft(vpad);

    // analytic part f, extended function rt = f - s w^Kc b
    std::vector<cplx> rt(nf);
    for (int m = 0; m < nf; ++m) {
        cplx f = 0.0;
        cplx wm = w[static_cast<size_t>(m)];
        for (int j = Kc; j >= 0; --j) f = f * wm + c[static_cast<size_t>(j)];
        cplx b = upad[static_cast<size_t>(m)] / vpad[static_cast<size_t>(m)];
        rt[static_cast<size_t>(m)] = f - s * std::pow(wm, Kc) * b;
    }

    // poles: roots of the v polynomial (leading coefficient first) outside
    // the unit circle; exactly K of them for the (K+1)-th singular vector
    std::vector<cplx> vpoly(static_cast<size_t>(Kc));
    for (int i = 0; i < Kc; ++i) vpoly[static_cast<size_t>(i)] = vvec[static_cast<size_t>(i)];
    std::vector<cplx> roots = poly_roots(vpoly);
    std::vector<cplx> qk;
    for (const cplx& rt_ : roots)
        if (std::abs(rt_) > 1.0) qk.push_back(rt_);
    if (static_cast<int>(qk.size()) != K)
        throw std::runtime_error("rational_ilt: unexpected pole count from CF step");

    // monic denominator through the outside roots
    std::vector<cplx> qc = {cplx(1.0)};
    for (const cplx& q : qk) {
        std::vector<cplx> nxt(qc.size() + 1, cplx(0.0));
        for (size_t i = 0; i < qc.size(); ++i) {
            nxt[i] += qc[i];
            nxt[i + 1] -= qc[i] * q;
        }
        qc = nxt;
    }

    std::vector<cplx> pt(nf);
    for (int m = 0; m < nf; ++m)
        pt[static_cast<size_t>(m)] = rt[static_cast<size_t>(m)] * horner(qc, w[static_cast<size_t>(m)]);
    fft(pt);
    std::vector<double> ptc(static_cast<size_t>(K) + 1);
    for (int j = 0; j <= K; ++j) ptc[static_cast<size_t>(j)] = pt[static_cast<size_t>(j)].real() / nf;

    zpol.resize(static_cast<size_t>(K));
    cres.resize(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) {
        cplx q = qk[static_cast<size_t>(k)];
        cplx num = 0.0;  // numerator polynomial sum_j ptc[j] q^j
        cplx qp = 1.0;
        for (int j = 0; j <= K; ++j) {
            num += ptc[static_cast<size_t>(j)] * qp;
            qp *= q;
        }
        cplx den = 1.0;  // Q'(q) for the monic denominator
        for (int j = 0; j < K; ++j)
            if (j != k) den *= (q - qk[static_cast<size_t>(j)]);
        cplx ck = num / den;
        // chain rule through z(w) = scl (w-1)^2/(w+1)^2: z'(q) = 4 z/(q^2-1)
        cplx zp = scl * (q - 1.0) * (q - 1.0) / ((q + 1.0) * (q + 1.0));
        zpol[static_cast<size_t>(k)] = zp;
        cres[static_cast<size_t>(k)] = 4.0 * ck * zp / (q * q - 1.0);
    }
}

}  // namespace

RationalILT build_rational_ilt(int K) {
    if (K < 8 || K > 20 || K % 2 != 0)
        throw std::domain_error("rational_ilt: K must be even and in [8, 20]");

    std::vector<cplx> zpol, cres;
    cf_poles_residues(K, zpol, cres);

    // conjugate pairing, upper-half member first
    std::vector<int> idx(zpol.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const cplx &za = zpol[static_cast<size_t>(a)], &zb = zpol[static_cast<size_t>(b)];
        if (std::abs(za.real() - zb.real()) > 1e-10) return za.real() < zb.real();
        return za.imag() > zb.imag();
    });
    RationalILT ilt;
    ilt.K = K;
    for (int i : idx) {
        ilt.poles.push_back(zpol[static_cast<size_t>(i)]);
        ilt.residues.push_back(cres[static_cast<size_t>(i)]);
    }

    // known-transform validation gates construction
    auto one_over_s = [](cplx s) { return 1.0 / s; };
    for (double t : {0.1, 1.0, 10.0}) {
        double v = invert_laplace(ilt, one_over_s, t);
        if (std::abs(v - 1.0) > 1e-10)
            throw std::runtime_error("rational_ilt: validation failed on 1/s");
    }
    double v = invert_laplace(ilt, [](cplx s) { return 1.0 / (s + 1.0); }, 1.0);
    if (std::abs(v - std::exp(-1.0)) > 1e-10)
        throw std::runtime_error("rational_ilt: validation failed on 1/(s+1)");
    double alpha = 0.8;
    double ml = invert_laplace(
        ilt,
        [alpha](cplx s) { return std::pow(s, alpha - 1.0) / (std::pow(s, alpha) + 1.0); },
        1.0);
    if (std::abs(ml - mittag_leffler_real(alpha, -1.0)) > 1e-8)
        throw std::runtime_error("rational_ilt: validation failed on Mittag-Leffler pair");
    return ilt;
}

double invert_laplace(const RationalILT& ilt,
                      const std::function<std::complex<double>(std::complex<double>)>& F,
                      double t) {
    if (!(t > 0.0)) throw std::domain_error("invert_laplace: t must be > 0");
    cplx acc = 0.0;
    for (size_t k = 0; k < ilt.poles.size(); k += 2)
        acc += ilt.residues[k] * F(ilt.poles[k] / t);
    return -2.0 * acc.real() / t;
}

}  // namespace tempered
