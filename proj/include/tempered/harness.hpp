#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tempered/analytic.hpp"
#include "tempered/solvers.hpp"

namespace tempered {

enum class StudyKind { Bench, BenchForced, Diffusion, Bloch };
enum class StudyReference { Analytic, FinestGrid };
enum class TableFormat { Csv, Markdown };

// Parameter grid for one convergence study (one scheme, one alpha; rows are
// the resolutions).  For diffusion studies M fixes the spatial grid, or
// n_is_msq couples N = M^2 and the rows list M.
struct StudySpec {
    StudyKind kind = StudyKind::Bench;
    std::vector<int> resolutions;  // N (or M when n_is_msq)
    bool n_is_msq = false;
    double alpha = 0.8;
    double rho = 0.5;
    double r = 0.0;  // grading; <= 0 means 2(2-alpha)/alpha
    double T = 1.0;
    Scheme scheme = Scheme::L1;
    int wsgl_m = 0;
    double soe_eps = 1e-9;
    // benchmark family
    double k0 = 2.0;
    double u0 = 1.0;
    // diffusion family
    double D = 2.0;
    double domain_l = 3.141592653589793238462643383279502884;
    int M = 0;
    // bloch family
    BlochParams bloch;
    StudyReference reference = StudyReference::Analytic;
    int finest_resolution = 0;  // required for FinestGrid
};

struct ReportRow {
    double resolution = 0.0;
    double error = 0.0;
    double order = 0.0;
    bool has_order = false;
    double cpu_seconds = 0.0;
    bool failed = false;
    std::string message;
};

struct ConvergenceReport {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<ReportRow> rows;
};

ConvergenceReport run_study(const StudySpec& spec);

// order_k = ln(e_{k-1}/e_k) / ln(ratio); NaN for the first entry and for
// non-positive errors.
std::vector<double> estimate_order(const std::vector<double>& errors, double ratio);

std::string emit_table(const ConvergenceReport& report, TableFormat format);
ConvergenceReport parse_table(const std::string& csv);

// Least-squares slope of log(cost) against log(resolution).
double fit_cost_exponent(const std::vector<double>& resolution,
                         const std::vector<double>& seconds);

}  // namespace tempered
