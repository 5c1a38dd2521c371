#include "tempered/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace tempered {

double GradedMesh::min_step() const {
    return *std::min_element(steps.begin(), steps.end());
}

GradedMesh build_graded_mesh(double T, int N, double r) {
    if (!(T > 0.0)) throw std::domain_error("mesh: T must be > 0");
    if (N < 1) throw std::domain_error("mesh: N must be >= 1");
    if (!(r >= 1.0)) throw std::domain_error("mesh: r must be >= 1");

    GradedMesh mesh;
    mesh.T = T;
    mesh.N = N;
    mesh.r = r;
    mesh.nodes.resize(static_cast<size_t>(N) + 1);
    mesh.steps.resize(static_cast<size_t>(N));
    for (int n = 0; n <= N; ++n) {
        double frac = static_cast<double>(n) / static_cast<double>(N);
        mesh.nodes[static_cast<size_t>(n)] =
            (r == 1.0) ? T * frac : T * std::pow(frac, r);
    }
    mesh.nodes[0] = 0.0;
    mesh.nodes[static_cast<size_t>(N)] = T;
    for (int n = 1; n <= N; ++n)
        mesh.steps[static_cast<size_t>(n - 1)] =
            mesh.nodes[static_cast<size_t>(n)] - mesh.nodes[static_cast<size_t>(n - 1)];
    return mesh;
}

double optimal_grading(double alpha, bool safety) {
    if (!(alpha > 0.0 && alpha < 1.0 + 1e-15))
        throw std::domain_error("optimal_grading: alpha must lie in (0,1]");
    double r = (2.0 - alpha) / alpha;
    return safety ? 2.0 * r : r;
}

}  // namespace tempered
