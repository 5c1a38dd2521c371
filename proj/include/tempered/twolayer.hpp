#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "tempered/inverse_laplace.hpp"
#include "tempered/mesh.hpp"

namespace tempered {

// One layer of the composite medium: interval, operator parameters,
// diffusivity and the constant/linear source coefficients.
struct LayerSpec {
    double xl = 0.0;
    double xr = 1.0;
    TemperedParams params;
    double D = 1.0;
    double Sa = 0.0;
    double Sb = 0.0;

    double width() const { return xr - xl; }
};

// Two-layer problem with interface continuity of value and diffusive flux.
// Boundary data enters the semi-analytic solution through the Laplace
// transforms fL_bar / fR_bar (null = homogeneous) and the finite-difference
// solver through fL / fR (null = homogeneous).
struct TwoLayerProblem {
    LayerSpec layer1, layer2;
    std::function<double(double)> X10, X20;    // initial data per layer
    bool X10_constant = false, X20_constant = false;
    double X10_value = 0.0, X20_value = 0.0;
    std::function<double(double)> fL, fR;
    std::function<std::complex<double>(std::complex<double>)> fL_bar, fR_bar;
    int n_modes = 100;  // per layer
    RationalILT ilt;
    double T = 1.0;

    double interface() const { return layer1.xr; }
    void validate() const;
};

// Helper for constant initial data (the configuration of the worked example).
TwoLayerProblem make_twolayer_constant(const LayerSpec& l1, const LayerSpec& l2,
                                       double X0, int n_modes, int ilt_order = 14);

// Laplace-space mode coefficients at a complex point s: the interface-flux
// scalar solve for v12_bar followed by the per-mode expressions.
struct TwoLayerTransform {
    std::complex<double> v12;
    std::vector<std::complex<double>> layer1, layer2;
};
TwoLayerTransform twolayer_transform_solution(const TwoLayerProblem& p,
                                              std::complex<double> s);

// Time-domain mode coefficients at t via the rational inverse Laplace rule.
struct TwoLayerModes {
    std::vector<double> layer1, layer2;
};
TwoLayerModes twolayer_modes_at(const TwoLayerProblem& p, double t);

// Eigenfunction-series evaluation; x = interface uses the layer-1 series.
double twolayer_semianalytic(const TwoLayerProblem& p, double x, double t);
// Series of a specific layer (1 or 2); for interface-continuity checks.
double twolayer_semianalytic_layer(const TwoLayerProblem& p, int layer, double x, double t);
double twolayer_series_eval(const TwoLayerProblem& p, const TwoLayerModes& modes,
                            int layer, double x);

}  // namespace tempered
