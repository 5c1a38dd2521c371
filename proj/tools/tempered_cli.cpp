// Command-line surface: solvers, convergence studies, SOE diagnostics and
// signal fitting, driven by INI-style configs with --set overrides.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempered/analytic.hpp"
#include "tempered/config.hpp"
#include "tempered/fitting.hpp"
#include "tempered/harness.hpp"
#include "tempered/mittag_leffler.hpp"
#include "tempered/soe.hpp"
#include "tempered/solvers.hpp"
#include "tempered/twolayer.hpp"

namespace {

using namespace tempered;

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string fmt4(double v) { return fmt(v, "%.4E"); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
    std::cout << "wrote " << path << "\n";
}

RunConfig load(const std::string& config_path, const std::vector<std::string>& sets) {
    ParsedConfig cfg = parse_config_file(config_path);
    for (const std::string& s : sets) apply_override(cfg, s);
    return validate_config(cfg);
}

GradedMesh mesh_for(const RunConfig& rc, double alpha) {
    double r = rc.r;
    if (rc.scheme == Scheme::WSGL) r = 1.0;
    if (r <= 0.0) r = optimal_grading(alpha, true);
    return build_graded_mesh(rc.T, rc.N, r);
}

std::string output_path(const RunConfig&, const ParsedConfig& cfg,
                        const std::string& flag_path, const std::string& fallback) {
    if (!flag_path.empty()) return flag_path;
    std::string p = cfg.get("output", "path", "");
    return p.empty() ? fallback : p;
}

int run_bench(const RunConfig& rc, const ParsedConfig& cfg, const std::string& out_flag) {
    BenchmarkProblem p{TemperedParams(rc.alpha, rc.rho), rc.k0, rc.u0, rc.T};
    GradedMesh mesh = mesh_for(rc, rc.alpha);
    SolveOptions so;
    so.wsgl_m = rc.wsgl_m;
    so.soe_eps = rc.soe_eps;

    bool forced = rc.kind == "bench_forced";
    auto ladder_exact = [&](double t) {
        double s = 0.0;
        for (int k = 0; k <= 8; ++k) s += std::pow(t, k * rc.alpha);
        return rc.u0 * std::exp(-rc.rho * t) * s;
    };
    auto ladder_rhs = [&](double t) {
        double s = 0.0;
        for (int k = 1; k <= 8; ++k) {
            double ka = k * rc.alpha;
            s += std::tgamma(ka + 1.0) * rgamma(ka + 1.0 - rc.alpha) * std::pow(t, ka - rc.alpha);
        }
        return rc.u0 * std::exp(-rc.rho * t) * s;
    };

    SolverRun run = forced ? solve_benchmark_forced({p.params, 0.0, rc.u0, rc.T}, mesh,
                                                    rc.scheme, ladder_rhs, so)
                           : solve_benchmark(p, mesh, rc.scheme, so);
    auto exact = [&](double t) { return forced ? ladder_exact(t) : benchmark_exact(p, t); };
    double err = std::abs(run.trajectory.back() - exact(rc.T));

    std::string content;
    content += "# kind: " + rc.kind + "\n# scheme: " + scheme_name(rc.scheme) + "\n";
    content += "# cpu_seconds: " + fmt(run.seconds) + "\n";
    content += "t,u,exact\n";
    for (int n = 0; n <= mesh.N; ++n)
        content += fmt(mesh.node(n)) + "," + fmt(run.trajectory[static_cast<size_t>(n)]) + "," +
                   fmt(exact(mesh.node(n))) + "\n";
    write_file(output_path(rc, cfg, out_flag, "tempered_bench.csv"), content);
    std::cout << "bench: scheme=" << scheme_name(rc.scheme) << " N=" << rc.N
              << " error=" << fmt4(err) << " at t=" << rc.T << "\n";
    return 0;
}

int run_bloch(const RunConfig& rc, const ParsedConfig& cfg, const std::string& out_flag) {
    BlochParams p = rc.bloch;
    p.params = TemperedParams(rc.alpha, rc.rho);
    GradedMesh mesh = mesh_for(rc, rc.alpha);
    BlochRun run = solve_bloch(p, mesh);
    double mz_exact = bloch_mz_exact(p, rc.T);
    double err = std::abs(run.Mz.back() - mz_exact);

    std::string content = "# kind: bloch\n# cpu_seconds: " + fmt(run.seconds) + "\n";
    content += "t,Mz,Mx,My\n";
    for (int n = 0; n <= mesh.N; ++n)
        content += fmt(mesh.node(n)) + "," + fmt(run.Mz[static_cast<size_t>(n)]) + "," +
                   fmt(run.Mx[static_cast<size_t>(n)]) + "," + fmt(run.My[static_cast<size_t>(n)]) + "\n";
    write_file(output_path(rc, cfg, out_flag, "tempered_bloch.csv"), content);
    std::cout << "bloch: N=" << rc.N << " Mz_error=" << fmt4(err) << " at t=" << rc.T << "\n";
    return 0;
}

int run_diffusion(const RunConfig& rc, const ParsedConfig& cfg, const std::string& out_flag) {
    DiffusionProblem p;
    p.params = TemperedParams(rc.alpha, rc.rho);
    p.D = rc.D;
    p.l = rc.domain_l;
    p.T = rc.T;
    double l = rc.domain_l, c = rc.psi_center, w = rc.psi_width;
    if (rc.psi == "sin")
        p.psi = [l](double x) { return std::sin(kPi * x / l); };
    else
        p.psi = [c, w](double x) {
            double z = (x - c) / w;
            return std::exp(-0.5 * z * z) / (w * std::sqrt(2.0 * kPi));
        };

    GradedMesh mesh = mesh_for(rc, rc.alpha);
    SpatialGrid grid = build_spatial_grid(0.0, l, rc.M);
    DiffusionOptions dop;
    dop.fast = (rc.scheme == Scheme::FastL1);
    dop.soe_eps = rc.soe_eps;
    FieldRun run = solve_diffusion(p, mesh, grid, dop);

    double err = 0.0;
    std::string content = "# kind: diffusion\n# scheme: " + scheme_name(rc.scheme) +
                          "\n# cpu_seconds: " + fmt(run.seconds) + "\n";
    content += "x,u,exact\n";
    for (int i = 0; i <= rc.M; ++i) {
        double ex = diffusion_exact(p, grid.x[static_cast<size_t>(i)], rc.T);
        err = std::max(err, std::abs(run.at(mesh.N, i) - ex));
        content += fmt(grid.x[static_cast<size_t>(i)]) + "," + fmt(run.at(mesh.N, i)) + "," +
                   fmt(ex) + "\n";
    }
    write_file(output_path(rc, cfg, out_flag, "tempered_diffusion.csv"), content);
    std::cout << "diffusion: scheme=" << scheme_name(rc.scheme) << " N=" << mesh.N
              << " M=" << rc.M << " max_error=" << fmt4(err) << " at t=" << rc.T << "\n";
    return 0;
}

int run_twolayer(const RunConfig& rc, const ParsedConfig& cfg, const std::string& out_flag) {
    TwoLayerProblem p = make_twolayer_constant(rc.layer1, rc.layer2, rc.X0, rc.n_modes);
    p.T = rc.T;
    double r = rc.r > 0.0 ? rc.r
                          : std::min(optimal_grading(rc.layer1.params.alpha, true),
                                     optimal_grading(rc.layer2.params.alpha, true));
    GradedMesh mesh = build_graded_mesh(rc.T, rc.N, r);
    SpatialGrid grid = build_spatial_grid(rc.layer1.xl, rc.layer2.xr, rc.M);
    TwoLayerOptions topt;
    topt.iface = rc.iface;
    FieldRun run = solve_twolayer(p, mesh, grid, topt);

    TwoLayerModes modes = twolayer_modes_at(p, rc.T);
    double dev = 0.0;
    std::string content = "# kind: twolayer\n# cpu_seconds: " + fmt(run.seconds) + "\n";
    content += "x,u_fd,u_semianalytic\n";
    for (int i = 0; i <= rc.M; ++i) {
        double x = grid.x[static_cast<size_t>(i)];
        int layer = (x <= p.interface()) ? 1 : 2;
        double sa = twolayer_series_eval(p, modes, layer, x);
        dev = std::max(dev, std::abs(run.at(mesh.N, i) - sa));
        content += fmt(x) + "," + fmt(run.at(mesh.N, i)) + "," + fmt(sa) + "\n";
    }
    write_file(output_path(rc, cfg, out_flag, "tempered_twolayer.csv"), content);
    std::cout << "twolayer: N=" << rc.N << " M=" << rc.M << " max_deviation=" << fmt4(dev)
              << " at t=" << rc.T << "\n";
    return 0;
}

int run_study_cmd(const RunConfig& rc, const ParsedConfig& cfg, const std::string& out_flag) {
    if (!rc.has_study) throw std::runtime_error("study subcommand requires a [study] section");
    StudySpec spec;
    if (rc.kind == "bench") spec.kind = StudyKind::Bench;
    else if (rc.kind == "bench_forced") spec.kind = StudyKind::BenchForced;
    else if (rc.kind == "diffusion") spec.kind = StudyKind::Diffusion;
    else if (rc.kind == "bloch") spec.kind = StudyKind::Bloch;
    else throw std::runtime_error("study: unsupported problem kind " + rc.kind);
    spec.resolutions = rc.resolutions;
    spec.n_is_msq = rc.n_is_msq;
    spec.alpha = rc.alpha;
    spec.rho = rc.rho;
    spec.r = rc.r;
    spec.T = rc.T;
    spec.scheme = rc.scheme;
    spec.wsgl_m = rc.wsgl_m;
    spec.soe_eps = rc.soe_eps;
    spec.k0 = rc.k0;
    spec.u0 = rc.u0;
    spec.D = rc.D;
    spec.domain_l = rc.domain_l;
    spec.M = rc.M;
    spec.bloch = rc.bloch;
    spec.reference = rc.reference;
    spec.finest_resolution = rc.finest_resolution;

    ConvergenceReport report = run_study(spec);
    write_file(output_path(rc, cfg, out_flag, "tempered_study.csv"),
               emit_table(report, rc.format));
    const ReportRow& last = report.rows.back();
    std::cout << "study: rows=" << report.rows.size() << " final_error=" << fmt4(last.error);
    if (last.has_order) std::cout << " final_order=" << fmt(last.order, "%.2f");
    std::cout << "\n";
    return 0;
}

int run_fit(const RunConfig& rc, const ParsedConfig& cfg, const std::string& out_flag) {
    std::vector<double> t, y;
    load_fit_data(rc.fit_data, t, y);
    FitConfig fc;
    fc.max_iterations = rc.fit_max_iter;
    fc.tolerance = rc.fit_tol;

    std::vector<SignalKind> kinds;
    if (rc.fit_model == "monoexp") kinds = {SignalKind::Monoexp};
    else if (rc.fit_model == "fractional") kinds = {SignalKind::Fractional};
    else if (rc.fit_model == "tempered") kinds = {SignalKind::Tempered};
    else kinds = {SignalKind::Monoexp, SignalKind::Fractional, SignalKind::Tempered};

    std::string content = "# kind: fit\n# data: " + rc.fit_data + "\n";
    content += "model,mse,converged,parameters\n";
    std::string summary = "fit:";
    for (SignalKind k : kinds) {
        FitResult res = fit(k, t, y, fc);
        const char* name = (k == SignalKind::Monoexp)      ? "monoexp"
                           : (k == SignalKind::Fractional) ? "fractional"
                                                           : "tempered";
        content += std::string(name) + "," + fmt(res.mse) + "," +
                   (res.converged ? "1" : "0");
        for (double v : res.model.p) content += "," + fmt(v);
        content += "\n";
        summary += std::string(" ") + name + "_mse=" + fmt4(res.mse);
    }
    write_file(output_path(rc, cfg, out_flag, "tempered_fit.csv"), content);
    std::cout << summary << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tempered time-fractional operator toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::vector<std::string> sets;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "INI config file");
        if (config_required) opt->required();
        sub->add_option("--set", sets, "override section.key=value (repeatable)");
        sub->add_option("--output", out_path, "output artifact path");
    };

    CLI::App* bench = app.add_subcommand("bench", "tempered benchmark ODE solve");
    CLI::App* bloch = app.add_subcommand("bloch", "tempered Bloch system solve");
    CLI::App* diffusion = app.add_subcommand("diffusion", "tempered 1D diffusion solve");
    CLI::App* twolayer = app.add_subcommand("twolayer", "two-layer composite solve");
    CLI::App* study = app.add_subcommand("study", "convergence study over a resolution grid");
    CLI::App* fitcmd = app.add_subcommand("fit", "relaxometry signal fitting");
    for (CLI::App* sub : {bench, bloch, diffusion, twolayer, study, fitcmd})
        add_common(sub, true);

    CLI::App* soe = app.add_subcommand("soe-check", "sum-of-exponentials kernel diagnostics");
    double beta = 1.8, eps = 1e-9, sigma = 1e-6, horizon = 1.0;
    soe->add_option("--beta", beta, "kernel exponent in (0,2)");
    soe->add_option("--eps", eps, "target precision");
    soe->add_option("--sigma", sigma, "smallest time");
    soe->add_option("--T", horizon, "largest time");
    soe->add_option("--output", out_path, "node/weight CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (soe->parsed()) {
            tempered::SoeApprox s = tempered::build_soe(beta, eps, sigma, horizon);
            if (!out_path.empty()) {
                std::string content = "node,weight\n";
                for (int i = 0; i < s.nexp(); ++i)
                    content += fmt(s.nodes[static_cast<size_t>(i)]) + "," +
                               fmt(s.weights[static_cast<size_t>(i)]) + "\n";
                write_file(out_path, content);
            }
            std::cout << "soe-check: beta=" << beta << " eps=" << fmt4(eps)
                      << " Nexp=" << s.nexp()
                      << " max_deviation=" << fmt4(s.max_relative_deviation) << "\n";
            return 0;
        }
        RunConfig rc = load(config_path, sets);
        ParsedConfig cfg = parse_config_file(config_path);
        for (const std::string& s : sets) apply_override(cfg, s);
        if (bench->parsed()) {
            if (rc.kind != "bench" && rc.kind != "bench_forced")
                throw std::runtime_error("bench subcommand needs problem.kind bench|bench_forced");
            return run_bench(rc, cfg, out_path);
        }
        if (bloch->parsed()) return run_bloch(rc, cfg, out_path);
        if (diffusion->parsed()) return run_diffusion(rc, cfg, out_path);
        if (twolayer->parsed()) return run_twolayer(rc, cfg, out_path);
        if (study->parsed()) return run_study_cmd(rc, cfg, out_path);
        if (fitcmd->parsed()) return run_fit(rc, cfg, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
