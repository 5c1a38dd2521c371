#include "tempered/twolayer.hpp"

#include <cmath>
#include <stdexcept>

#include "tempered/quadrature.hpp"

namespace tempered {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.141592653589793238462643383279502884;

struct LayerGeom {
    double d, norm;  // width, sqrt(2/d)
    double lambda(int n) const { return (2 * n + 1) * kPi / (2.0 * d); }
};

// <g, phi_n> over one layer; phi is the quarter-wave sine of that layer.
double layer_mode_inner(const std::function<double(double)>& g, const LayerSpec& L,
                        bool left_layer, int n) {
    LayerGeom geo{L.width(), std::sqrt(2.0 / L.width())};
    double lam = geo.lambda(n);
    int panels = std::max(8, n + 1);
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        double a = L.xl + L.width() * p / panels;
        double b = L.xl + L.width() * (p + 1) / panels;
        QuadratureRule rule = gauss_legendre(12, a, b);
        for (size_t q = 0; q < rule.nodes.size(); ++q) {
            double x = rule.nodes[q];
            double phi = left_layer ? geo.norm * std::sin(lam * (x - L.xl))
                                    : geo.norm * std::sin(lam * (L.xr - x));
            acc += rule.weights[q] * g(x) * phi;
        }
    }
    return acc;
}

}  // namespace

void TwoLayerProblem::validate() const {
    if (!(layer1.width() > 0.0 && layer2.width() > 0.0))
        throw std::domain_error("twolayer: layer widths must be positive");
    if (std::abs(layer1.xr - layer2.xl) > 1e-12 * (std::abs(layer2.xr) + 1.0))
        throw std::domain_error("twolayer: layers must share the interface");
    if (!(layer1.D > 0.0 && layer2.D > 0.0))
        throw std::domain_error("twolayer: diffusivities must be positive");
    if (n_modes < 1) throw std::domain_error("twolayer: n_modes must be >= 1");
}

TwoLayerProblem make_twolayer_constant(const LayerSpec& l1, const LayerSpec& l2,
                                       double X0, int n_modes, int ilt_order) {
    TwoLayerProblem p;
    p.layer1 = l1;
    p.layer2 = l2;
    p.X10_constant = p.X20_constant = true;
    p.X10_value = p.X20_value = X0;
    p.n_modes = n_modes;
    p.ilt = build_rational_ilt(ilt_order);
    p.validate();
    return p;
}

TwoLayerTransform twolayer_transform_solution(const TwoLayerProblem& p, cplx s) {
    const LayerSpec& L1 = p.layer1;
    const LayerSpec& L2 = p.layer2;
    LayerGeom g1{L1.width(), std::sqrt(2.0 / L1.width())};
    LayerGeom g2{L2.width(), std::sqrt(2.0 / L2.width())};
    int NM = p.n_modes;

    cplx pow1 = std::pow(s + L1.params.rho, L1.params.alpha);
    cplx pow2 = std::pow(s + L2.params.rho, L2.params.alpha);
    cplx pow1m = std::pow(s + L1.params.rho, L1.params.alpha - 1.0);
    cplx pow2m = std::pow(s + L2.params.rho, L2.params.alpha - 1.0);
    cplx fL = p.fL_bar ? p.fL_bar(s) : cplx(0.0);
    cplx fR = p.fR_bar ? p.fR_bar(s) : cplx(0.0);

    std::vector<double> X10(static_cast<size_t>(NM)), X20(static_cast<size_t>(NM));
    for (int n = 0; n < NM; ++n) {
        double I1 = g1.norm / g1.lambda(n), I2 = g2.norm / g2.lambda(n);
        X10[static_cast<size_t>(n)] =
            p.X10_constant ? p.X10_value * I1 : layer_mode_inner(p.X10, L1, true, n);
        X20[static_cast<size_t>(n)] =
            p.X20_constant ? p.X20_value * I2 : layer_mode_inner(p.X20, L2, false, n);
    }

    // base_i(n): everything in X_i_bar except the v12 forcing
    std::vector<cplx> base1(static_cast<size_t>(NM)), base2(static_cast<size_t>(NM));
    std::vector<cplx> inv_eta1(static_cast<size_t>(NM)), inv_eta2(static_cast<size_t>(NM));
    cplx A = 0.0, rhs = 0.0;
    for (int n = 0; n < NM; ++n) {
        double lam1 = g1.lambda(n), lam2 = g2.lambda(n);
        cplx eta1 = pow1 + L1.D * lam1 * lam1 - L1.Sb;
        cplx eta2 = pow2 + L2.D * lam2 * lam2 - L2.Sb;
        inv_eta1[static_cast<size_t>(n)] = 1.0 / eta1;
        inv_eta2[static_cast<size_t>(n)] = 1.0 / eta2;
        double I1 = g1.norm / lam1, I2 = g2.norm / lam2;
        base1[static_cast<size_t>(n)] =
            (pow1m * X10[static_cast<size_t>(n)] + L1.D * fL * g1.norm * lam1 +
             L1.Sa * I1 / s) / eta1;
        base2[static_cast<size_t>(n)] =
            (pow2m * X20[static_cast<size_t>(n)] + L2.D * fR * g2.norm * lam2 +
             L2.Sa * I2 / s) / eta2;
        double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        double phi1_if = g1.norm * sgn, phi2_if = g2.norm * sgn;
        A += phi1_if * phi1_if * inv_eta1[static_cast<size_t>(n)] +
             phi2_if * phi2_if * inv_eta2[static_cast<size_t>(n)];
        rhs += -base1[static_cast<size_t>(n)] * phi1_if + base2[static_cast<size_t>(n)] * phi2_if;
    }
    if (std::abs(A) < 1e-300)
        throw std::runtime_error("twolayer: degenerate interface-flux system");
    cplx v12 = rhs / A;

    TwoLayerTransform out;
    out.v12 = v12;
    out.layer1.resize(static_cast<size_t>(NM));
    out.layer2.resize(static_cast<size_t>(NM));
    for (int n = 0; n < NM; ++n) {
        double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        out.layer1[static_cast<size_t>(n)] =
            base1[static_cast<size_t>(n)] + v12 * g1.norm * sgn * inv_eta1[static_cast<size_t>(n)];
        out.layer2[static_cast<size_t>(n)] =
            base2[static_cast<size_t>(n)] - v12 * g2.norm * sgn * inv_eta2[static_cast<size_t>(n)];
    }
    return out;
}

TwoLayerModes twolayer_modes_at(const TwoLayerProblem& p, double t) {
    if (!(t > 0.0)) throw std::domain_error("twolayer: t must be > 0");
    TwoLayerModes modes;
    modes.layer1.assign(static_cast<size_t>(p.n_modes), 0.0);
    modes.layer2.assign(static_cast<size_t>(p.n_modes), 0.0);
    for (size_t k = 0; k < p.ilt.poles.size(); k += 2) {
        cplx ck = p.ilt.residues[k];
        TwoLayerTransform tr = twolayer_transform_solution(p, p.ilt.poles[k] / t);
        for (int n = 0; n < p.n_modes; ++n) {
            modes.layer1[static_cast<size_t>(n)] +=
                (-2.0 / t) * (ck * tr.layer1[static_cast<size_t>(n)]).real();
            modes.layer2[static_cast<size_t>(n)] +=
                (-2.0 / t) * (ck * tr.layer2[static_cast<size_t>(n)]).real();
        }
    }
    return modes;
}

double twolayer_series_eval(const TwoLayerProblem& p, const TwoLayerModes& modes,
                            int layer, double x) {
    const LayerSpec& L = (layer == 1) ? p.layer1 : p.layer2;
    LayerGeom geo{L.width(), std::sqrt(2.0 / L.width())};
    double acc = 0.0;
    for (int n = 0; n < p.n_modes; ++n) {
        double lam = geo.lambda(n);
        double phi = (layer == 1) ? geo.norm * std::sin(lam * (x - L.xl))
                                  : geo.norm * std::sin(lam * (L.xr - x));
        double c = (layer == 1) ? modes.layer1[static_cast<size_t>(n)]
                                : modes.layer2[static_cast<size_t>(n)];
        acc += c * phi;
    }
    return acc;
}

double twolayer_semianalytic_layer(const TwoLayerProblem& p, int layer, double x, double t) {
    TwoLayerModes modes = twolayer_modes_at(p, t);
    return twolayer_series_eval(p, modes, layer, x);
}

double twolayer_semianalytic(const TwoLayerProblem& p, double x, double t) {
    if (!(x >= p.layer1.xl && x <= p.layer2.xr))
        throw std::domain_error("twolayer: x outside the domain");
    int layer = (x <= p.interface()) ? 1 : 2;
    return twolayer_semianalytic_layer(p, layer, x, t);
}

}  // namespace tempered
