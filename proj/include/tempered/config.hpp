#pragma once

#include <map>
#include <string>
#include <vector>

#include "tempered/harness.hpp"
#include "tempered/solvers.hpp"

namespace tempered {

struct ConfigValue {
    std::string value;
    int line = 0;
};

// Flat INI-style sections of key = value pairs; '#' and ';' start comments.
struct ParsedConfig {
    std::map<std::string, std::map<std::string, ConfigValue>> sections;

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback = "") const;
};

ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

// "section.key=value" (or "key=value" when the key is unambiguous).
void apply_override(ParsedConfig& cfg, const std::string& assignment);

// Fully validated run description for the CLI; every physical parameter is
// checked against its type invariants at parse time and all violations are
// reported together with their line numbers.
struct RunConfig {
    std::string kind;  // bench | bench_forced | bloch | diffusion | twolayer | fit
    // mesh / grid
    int N = 100;
    double r = 0.0;  // 0 = optimal grading
    int M = 0;
    double T = 1.0;
    // scheme
    Scheme scheme = Scheme::L1;
    int wsgl_m = 0;
    double soe_eps = 1e-9;
    InterfaceScheme iface = InterfaceScheme::OneSided2;
    // benchmark
    double alpha = 0.8, rho = 0.5, k0 = 2.0, u0 = 1.0;
    // bloch
    BlochParams bloch;
    // diffusion
    double D = 1.0, domain_l = 1.0;
    std::string psi = "sin";
    double psi_center = 0.0, psi_width = 0.1;
    // twolayer
    LayerSpec layer1, layer2;
    double X0 = 1.0;
    int n_modes = 100;
    // study
    bool has_study = false;
    std::vector<int> resolutions;
    bool n_is_msq = false;
    StudyReference reference = StudyReference::Analytic;
    int finest_resolution = 0;
    TableFormat format = TableFormat::Csv;
    // fit
    std::string fit_data;
    std::string fit_model = "all";
    int fit_max_iter = 4000;
    double fit_tol = 1e-12;
};

// Throws std::runtime_error whose message lists every offending key.
RunConfig validate_config(const ParsedConfig& cfg);

}  // namespace tempered
