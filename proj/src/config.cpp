#include "tempered/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tempered {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct ErrorList {
    std::vector<std::string> items;
    void add(int line, const std::string& msg) {
        items.push_back((line > 0 ? "line " + std::to_string(line) + ": " : "") + msg);
    }
    void raise_if_any() const {
        if (items.empty()) return;
        std::string all = "config errors:";
        for (const std::string& it : items) all += "\n  " + it;
        throw std::runtime_error(all);
    }
};

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"problem",
         {"kind", "alpha", "rho", "k0", "u0", "T", "T1p", "T2p", "varpi0", "f0_hz",
          "M0", "Mz0", "Mx0", "My0", "D", "l", "psi", "psi_center", "psi_width",
          "alpha1", "rho1", "D1", "Sa1", "Sb1", "alpha2", "rho2", "D2", "Sa2", "Sb2",
          "l0", "l1", "l2", "X0", "n_modes"}},
        {"mesh", {"N", "r"}},
        {"grid", {"M"}},
        {"scheme", {"method", "m", "soe_eps", "interface"}},
        {"study", {"resolutions", "n_is_msq", "reference", "finest", "format"}},
        {"fit", {"data", "model", "max_iter", "tol"}},
        {"output", {"path"}},
    };
    return s;
}

class Reader {
public:
    Reader(const ParsedConfig& cfg, ErrorList& errs) : cfg_(cfg), errs_(errs) {}

    double num(const std::string& sec, const std::string& key, double fallback) {
        if (!cfg_.has(sec, key)) return fallback;
        const ConfigValue& cv = cfg_.sections.at(sec).at(key);
        try {
            size_t pos = 0;
            double v = std::stod(cv.value, &pos);
            if (pos != cv.value.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (...) {
            errs_.add(cv.line, sec + "." + key + ": not a number: '" + cv.value + "'");
            return fallback;
        }
    }
    int integer(const std::string& sec, const std::string& key, int fallback) {
        double v = num(sec, key, fallback);
        if (v != static_cast<int>(v)) {
            errs_.add(line_of(sec, key), sec + "." + key + ": not an integer");
            return fallback;
        }
        return static_cast<int>(v);
    }
    std::string str(const std::string& sec, const std::string& key,
                    const std::string& fallback) {
        return cfg_.get(sec, key, fallback);
    }
    int line_of(const std::string& sec, const std::string& key) const {
        if (cfg_.has(sec, key)) return cfg_.sections.at(sec).at(key).line;
        return 0;
    }
    void check(bool ok, const std::string& sec, const std::string& key,
               const std::string& msg) {
        if (!ok) errs_.add(line_of(sec, key), sec + "." + key + ": " + msg);
    }

private:
    const ParsedConfig& cfg_;
    ErrorList& errs_;
};

}  // namespace

bool ParsedConfig::has(const std::string& section, const std::string& key) const {
    auto it = sections.find(section);
    return it != sections.end() && it->second.count(key) > 0;
}

std::string ParsedConfig::get(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
    auto it = sections.find(section);
    if (it == sections.end()) return fallback;
    auto jt = it->second.find(key);
    return jt == it->second.end() ? fallback : jt->second.value;
}

ParsedConfig parse_config_text(const std::string& text) {
    ParsedConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    ErrorList errs;
    while (std::getline(in, line)) {
        ++lineno;
        size_t cpos = line.find_first_of("#;");
        if (cpos != std::string::npos) line = line.substr(0, cpos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errs.add(lineno, "malformed section header: " + line);
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections[section];
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errs.add(lineno, "expected key = value: " + line);
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            errs.add(lineno, "key outside any section: " + key);
            continue;
        }
        cfg.sections[section][key] = {value, lineno};
    }
    errs.raise_if_any();
    return cfg;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(ParsedConfig& cfg, const std::string& assignment) {
    size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("override must be key=value: " + assignment);
    std::string key = trim(assignment.substr(0, eq));
    std::string value = trim(assignment.substr(eq + 1));
    size_t dot = key.find('.');
    if (dot != std::string::npos) {
        cfg.sections[key.substr(0, dot)][key.substr(dot + 1)] = {value, 0};
        return;
    }
    // bare key: resolve against the schema, demand uniqueness among sections
    std::vector<std::string> hits;
    for (const auto& [sec, keys] : schema())
        if (keys.count(key)) hits.push_back(sec);
    if (hits.empty()) throw std::runtime_error("override references unknown key: " + key);
    if (hits.size() > 1)
        throw std::runtime_error("override key '" + key + "' is ambiguous; use section." + key);
    cfg.sections[hits[0]][key] = {value, 0};
}

RunConfig validate_config(const ParsedConfig& cfg) {
    ErrorList errs;
    // unknown sections / keys
    for (const auto& [sec, keys] : cfg.sections) {
        auto it = schema().find(sec);
        if (it == schema().end()) {
            errs.add(keys.empty() ? 0 : keys.begin()->second.line, "unknown section [" + sec + "]");
            continue;
        }
        for (const auto& [key, cv] : keys)
            if (!it->second.count(key)) errs.add(cv.line, "unknown key " + sec + "." + key);
    }

    Reader rd(cfg, errs);
    RunConfig rc;
    rc.kind = rd.str("problem", "kind", "bench");
    const std::set<std::string> kinds = {"bench", "bench_forced", "bloch",
                                         "diffusion", "twolayer", "fit"};
    if (!kinds.count(rc.kind))
        errs.add(rd.line_of("problem", "kind"), "problem.kind: unknown kind '" + rc.kind + "'");

    rc.T = rd.num("problem", "T", 1.0);
    rd.check(rc.T > 0.0, "problem", "T", "must be > 0");
    rc.alpha = rd.num("problem", "alpha", 0.8);
    rc.rho = rd.num("problem", "rho", 0.5);
    if (rc.kind != "twolayer" && rc.kind != "fit") {
        rd.check(rc.alpha > 0.0 && rc.alpha <= 1.0, "problem", "alpha", "alpha must lie in (0,1)");
        rd.check(rc.rho >= 0.0, "problem", "rho", "rho must be >= 0");
    }
    rc.k0 = rd.num("problem", "k0", 2.0);
    rc.u0 = rd.num("problem", "u0", 1.0);

    rc.N = rd.integer("mesh", "N", 100);
    rd.check(rc.N >= 1, "mesh", "N", "must be >= 1");
    std::string rstr = rd.str("mesh", "r", "auto");
    if (rstr == "auto") {
        rc.r = 0.0;
    } else {
        rc.r = rd.num("mesh", "r", 1.0);
        rd.check(rc.r >= 1.0, "mesh", "r", "must be >= 1 (or auto)");
    }
    rc.M = rd.integer("grid", "M", 64);

    std::string method = rd.str("scheme", "method", "l1");
    if (method == "l1") rc.scheme = Scheme::L1;
    else if (method == "wsgl") rc.scheme = Scheme::WSGL;
    else if (method == "fast") rc.scheme = Scheme::FastL1;
    else errs.add(rd.line_of("scheme", "method"), "scheme.method: expected l1|wsgl|fast");
    rc.wsgl_m = rd.integer("scheme", "m", 0);
    rd.check(rc.wsgl_m >= 0 && rc.wsgl_m <= 8, "scheme", "m", "must lie in [0,8]");
    rc.soe_eps = rd.num("scheme", "soe_eps", 1e-9);
    rd.check(rc.soe_eps > 0.0 && rc.soe_eps < 1.0, "scheme", "soe_eps", "must lie in (0,1)");
    std::string iface = rd.str("scheme", "interface", "onesided2");
    if (iface == "onesided2") rc.iface = InterfaceScheme::OneSided2;
    else if (iface == "onesided1") rc.iface = InterfaceScheme::OneSided1;
    else if (iface == "conservative") rc.iface = InterfaceScheme::Conservative;
    else errs.add(rd.line_of("scheme", "interface"),
                  "scheme.interface: expected onesided2|onesided1|conservative");

    if (rc.kind == "bloch") {
        rc.bloch.T1p = rd.num("problem", "T1p", 1.0);
        rc.bloch.T2p = rd.num("problem", "T2p", 20.0);
        rd.check(rc.bloch.T1p > 0.0, "problem", "T1p", "must be > 0");
        rd.check(rc.bloch.T2p > 0.0, "problem", "T2p", "must be > 0");
        if (cfg.has("problem", "f0_hz")) {
            double f0 = rd.num("problem", "f0_hz", 0.0);
            rc.bloch.varpi0 = 2.0 * 3.141592653589793 * f0 / 1000.0;  // Hz with t in ms
        } else {
            rc.bloch.varpi0 = rd.num("problem", "varpi0", 0.0);
        }
        rc.bloch.M0 = rd.num("problem", "M0", 100.0);
        rc.bloch.Mz0 = rd.num("problem", "Mz0", 0.0);
        rc.bloch.Mx0 = rd.num("problem", "Mx0", 0.0);
        rc.bloch.My0 = rd.num("problem", "My0", 100.0);
    }
    if (rc.kind == "diffusion") {
        rc.D = rd.num("problem", "D", 1.0);
        rd.check(rc.D > 0.0, "problem", "D", "must be > 0");
        rc.domain_l = rd.num("problem", "l", 1.0);
        rd.check(rc.domain_l > 0.0, "problem", "l", "must be > 0");
        rc.psi = rd.str("problem", "psi", "sin");
        rd.check(rc.psi == "sin" || rc.psi == "gaussian", "problem", "psi",
                 "expected sin|gaussian");
        rc.psi_center = rd.num("problem", "psi_center", 0.5 * rc.domain_l);
        rc.psi_width = rd.num("problem", "psi_width", 0.05 * rc.domain_l);
    }
    if (rc.kind == "twolayer") {
        double l0 = rd.num("problem", "l0", 0.0);
        double l1 = rd.num("problem", "l1", 0.5);
        double l2 = rd.num("problem", "l2", 1.0);
        rd.check(l0 < l1 && l1 < l2, "problem", "l1", "need l0 < l1 < l2");
        auto layer = [&](int i) {
            std::string sfx = std::to_string(i);
            LayerSpec L;
            L.xl = (i == 1) ? l0 : l1;
            L.xr = (i == 1) ? l1 : l2;
            double a = rd.num("problem", "alpha" + sfx, 0.9);
            double ro = rd.num("problem", "rho" + sfx, 0.1);
            rd.check(a > 0.0 && a <= 1.0, "problem", "alpha" + sfx, "must lie in (0,1]");
            rd.check(ro >= 0.0, "problem", "rho" + sfx, "must be >= 0");
            L.params = TemperedParams(std::min(std::max(a, 1e-6), 1.0), std::max(ro, 0.0));
            L.D = rd.num("problem", "D" + sfx, 0.5);
            rd.check(L.D > 0.0, "problem", "D" + sfx, "must be > 0");
            L.Sa = rd.num("problem", "Sa" + sfx, 0.0);
            L.Sb = rd.num("problem", "Sb" + sfx, 0.0);
            return L;
        };
        rc.layer1 = layer(1);
        rc.layer2 = layer(2);
        rc.X0 = rd.num("problem", "X0", 1.0);
        rc.n_modes = rd.integer("problem", "n_modes", 100);
        rd.check(rc.n_modes >= 1, "problem", "n_modes", "must be >= 1");
    }
    if (cfg.sections.count("study")) {
        rc.has_study = true;
        std::string list = rd.str("study", "resolutions", "");
        std::istringstream ss(list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                rc.resolutions.push_back(std::stoi(trim(tok)));
            } catch (...) {
                errs.add(rd.line_of("study", "resolutions"),
                         "study.resolutions: bad entry '" + tok + "'");
            }
        }
        if (rc.resolutions.empty())
            errs.add(rd.line_of("study", "resolutions"), "study.resolutions: empty grid");
        rc.n_is_msq = rd.str("study", "n_is_msq", "false") == "true";
        std::string ref = rd.str("study", "reference", "analytic");
        if (ref == "analytic") rc.reference = StudyReference::Analytic;
        else if (ref == "finest") rc.reference = StudyReference::FinestGrid;
        else errs.add(rd.line_of("study", "reference"), "study.reference: expected analytic|finest");
        rc.finest_resolution = rd.integer("study", "finest", 0);
        std::string fmt = rd.str("study", "format", "csv");
        if (fmt == "csv") rc.format = TableFormat::Csv;
        else if (fmt == "markdown") rc.format = TableFormat::Markdown;
        else errs.add(rd.line_of("study", "format"), "study.format: expected csv|markdown");
    }
    if (rc.kind == "fit") {
        rc.fit_data = rd.str("fit", "data", "");
        if (rc.fit_data.empty())
            errs.add(rd.line_of("fit", "data"), "fit.data: path required");
        rc.fit_model = rd.str("fit", "model", "all");
        const std::set<std::string> models = {"monoexp", "fractional", "tempered", "all"};
        if (!models.count(rc.fit_model))
            errs.add(rd.line_of("fit", "model"), "fit.model: expected monoexp|fractional|tempered|all");
        rc.fit_max_iter = rd.integer("fit", "max_iter", 4000);
        rc.fit_tol = rd.num("fit", "tol", 1e-12);
    }

    errs.raise_if_any();
    return rc;
}

}  // namespace tempered
