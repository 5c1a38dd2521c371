#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tempered/analytic.hpp"
#include "tempered/mesh.hpp"
#include "tempered/twolayer.hpp"

namespace tempered {

struct SpatialGrid {
    int M = 1;
    double x0 = 0.0, xM = 1.0;
    double h = 1.0;
    std::vector<double> x;
};
SpatialGrid build_spatial_grid(double x0, double xM, int M);

enum class Scheme { L1, WSGL, FastL1 };
std::string scheme_name(Scheme s);

struct SolveOptions {
    int wsgl_m = 0;
    std::vector<double> sigmas;  // empty -> j*alpha ladder
    double soe_eps = 1e-9;
    int soe_cap = 4000;
};

struct SolverRun {
    Scheme scheme = Scheme::L1;
    std::vector<double> trajectory;  // u^0..u^N
    double seconds = 0.0;            // time loop only
};

// D^{(alpha,rho)} u = -k0 u (+ f); implicit scalar step per n.  WSGL requires
// a uniform mesh; its first m steps solve a coupled m x m block.
SolverRun solve_benchmark(const BenchmarkProblem& p, const GradedMesh& mesh,
                          Scheme scheme, const SolveOptions& opts = {});
SolverRun solve_benchmark_forced(const BenchmarkProblem& p, const GradedMesh& mesh,
                                 Scheme scheme, const std::function<double(double)>& f,
                                 const SolveOptions& opts = {});

struct BlochRun {
    std::vector<double> Mz, Mx, My;
    double seconds = 0.0;
};
BlochRun solve_bloch(const BlochParams& p, const GradedMesh& mesh);

// Space-time field, row n holds u(x_0..x_M, t_n).
struct FieldRun {
    int N = 0, M = 0;
    std::vector<double> field;
    double seconds = 0.0;

    double at(int n, int i) const {
        return field[static_cast<size_t>(n) * (M + 1) + static_cast<size_t>(i)];
    }
    const double* row(int n) const { return field.data() + static_cast<size_t>(n) * (M + 1); }
};

struct DiffusionOptions {
    bool fast = false;
    double soe_eps = 1e-9;
    int soe_cap = 4000;
    // optional time-dependent forcing override f(x,t); null uses p.f
    std::function<double(double, double)> forcing;
};
FieldRun solve_diffusion(const DiffusionProblem& p, const GradedMesh& mesh,
                         const SpatialGrid& grid, const DiffusionOptions& opts = {});

enum class InterfaceScheme { OneSided2, OneSided1, Conservative };
struct TwoLayerOptions {
    InterfaceScheme iface = InterfaceScheme::OneSided2;
};
FieldRun solve_twolayer(const TwoLayerProblem& p, const GradedMesh& mesh,
                        const SpatialGrid& grid, const TwoLayerOptions& opts = {});

// Stability-theorem weights theta_{n,j} for the L1 scheme on a mesh
// (theta_{n,n} = 1, recursion over the normalized kernel differences).
std::vector<double> stability_theta(const GradedMesh& mesh, double alpha, int n);

}  // namespace tempered
