#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace optokerr::app {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::continuum: return "continuum";
        case Mode::oracle: return "oracle";
        case Mode::both: return "both";
    }
    return "continuum";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": '" + v + "' is not a number");
    }
    if (pos != v.size()) throw ConfigError(key + ": '" + v + "' is not a number");
    return d;
}

long long to_integer(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d) || std::abs(d) > 1e15) throw ConfigError(key + ": '" + v + "' is not an integer");
    return static_cast<long long>(d);
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    try {
        if (key == "preset") {
            if (v != "none" && v != "fig2a" && v != "fig2b") throw ConfigError("preset: expected none|fig2a|fig2b");
            cfg.preset = v;
        } else if (key == "spectrum") {
            if (v == "subohmic" || v == "sub-ohmic") {
                cfg.spectrum = "subohmic";
            } else if (v == "ohmic") {
                cfg.spectrum = "ohmic";
            } else if (v == "superohmic" || v == "super-ohmic") {
                cfg.spectrum = "superohmic";
            } else if (v == "general") {
                cfg.spectrum = "general";
            } else {
                throw ConfigError("spectrum: expected subohmic|ohmic|superohmic|general");
            }
        } else if (key == "k") {
            cfg.k = to_double(key, v);
        } else if (key == "gamma") {
            cfg.gamma = to_double(key, v);
        } else if (key == "cutoff") {
            cfg.cutoff = to_double(key, v);
        } else if (key == "g0") {
            cfg.g0 = to_double(key, v);
        } else if (key == "tmax") {
            cfg.t_max = to_double(key, v);
        } else if (key == "h") {
            cfg.h = to_double(key, v);
        } else if (key == "mode") {
            if (v == "continuum") cfg.mode = Mode::continuum;
            else if (v == "oracle") cfg.mode = Mode::oracle;
            else if (v == "both") cfg.mode = Mode::both;
            else throw ConfigError("mode: expected continuum|oracle|both");
        } else if (key == "bath-modes") {
            if (v.empty() || v == "none") {
                cfg.bath_modes.reset();
            } else {
                const auto n = to_integer(key, v);
                if (n < 0) throw ConfigError("bath-modes: must not be negative");
                cfg.bath_modes = static_cast<std::size_t>(n);
            }
        } else if (key == "omega-max") {
            if (v.empty() || v == "auto" || v == "none") cfg.omega_max.reset();
            else cfg.omega_max = to_double(key, v);
        } else if (key == "convention") {
            cfg.convention = parse_convention(v);
        } else if (key == "kernel-normalization") {
            cfg.normalization = parse_normalization(v);
        } else if (key == "mode-weights") {
            cfg.mode_weights = parse_mode_weights(v);
        } else if (key == "tol") {
            cfg.tol = to_double(key, v);
        } else if (key == "grid-tol") {
            cfg.grid_tol = to_double(key, v);
        } else if (key == "out-dir") {
            cfg.out_dir = v;
        } else if (key == "omega-m-hz") {
            if (v.empty() || v == "none") cfg.omega_m_hz.reset();
            else cfg.omega_m_hz = to_double(key, v);
        } else if (key == "threads") {
            const auto n = to_integer(key, v);
            if (n < 0) throw ConfigError("threads: must not be negative");
            cfg.threads = static_cast<unsigned>(n);
        } else {
            throw ConfigError("unknown setting '" + key + "'");
        }
    } catch (const DomainError& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void apply_preset(RunConfig& cfg, const std::string& preset) {
    cfg.preset = preset;
    if (preset == "none") return;
    if (preset != "fig2a" && preset != "fig2b") throw ConfigError("preset: expected none|fig2a|fig2b");
    cfg.gamma = 0.3;
    cfg.cutoff = preset == "fig2a" ? 1.0 : 100.0;
    cfg.t_max = 20.0;
    cfg.h = 0.02;
    cfg.g0 = 1.0;
    // the published plateau is reproduced with the unit weight and the
    // closed-form kernel scaling
    cfg.convention = CouplingConvention::unit;
    cfg.normalization = KernelNormalization::printed;
}

RunConfig resolve(const std::optional<std::string>& file,
                  const std::vector<std::pair<std::string, std::string>>& flags) {
    std::vector<std::pair<std::string, std::string>> from_file;
    if (file) from_file = read_config_file(*file);

    std::string preset = "none";
    for (const auto& [k, v] : from_file)
        if (k == "preset") preset = trim(v);
    for (const auto& [k, v] : flags)
        if (k == "preset") preset = trim(v);

    RunConfig cfg;
    apply_preset(cfg, preset);
    for (const auto& [k, v] : from_file)
        if (k != "preset") apply_setting(cfg, k, v);
    for (const auto& [k, v] : flags)
        if (k != "preset") apply_setting(cfg, k, v);
    return cfg;
}

std::vector<std::string> validate(const RunConfig& cfg) {
    std::vector<std::string> d;
    auto finite = [](double x) { return std::isfinite(x); };
    if (!(cfg.h > 0.0) || !finite(cfg.h)) d.emplace_back("h must be positive");
    else if (cfg.h > 0.05) d.emplace_back("h must not exceed 0.05");
    if (!(cfg.t_max > 0.0) || !finite(cfg.t_max)) {
        d.emplace_back("tmax must be positive");
    } else if (cfg.h > 0.0) {
        const double steps = cfg.t_max / cfg.h;
        if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
            d.emplace_back("tmax must be an integer multiple of h");
        }
    }
    if (!(cfg.gamma >= 0.0) || !finite(cfg.gamma)) d.emplace_back("gamma must be non-negative");
    if (!(cfg.cutoff > 0.0) || !finite(cfg.cutoff)) d.emplace_back("cutoff must be positive");
    if (cfg.spectrum == "general" && (!(cfg.k > 0.0) || !finite(cfg.k))) d.emplace_back("k must be positive");
    if (!finite(cfg.g0)) d.emplace_back("g0 must be finite");
    if (!(cfg.tol > 0.0)) d.emplace_back("tol must be positive");
    if (!(cfg.grid_tol > 0.0)) d.emplace_back("grid-tol must be positive");
    if (cfg.mode != Mode::continuum) {
        if (!cfg.bath_modes) d.emplace_back("mode=" + to_string(cfg.mode) + " needs bath-modes (the mode count N)");
        else if (*cfg.bath_modes < 2) d.emplace_back("bath-modes must be at least 2");
    }
    if (cfg.omega_max && (!(*cfg.omega_max > 0.0) || !finite(*cfg.omega_max))) {
        d.emplace_back("omega-max must be positive");
    }
    if (cfg.omega_m_hz && !(*cfg.omega_m_hz > 0.0)) d.emplace_back("omega-m-hz must be positive");
    if (cfg.out_dir.empty()) d.emplace_back("out-dir must not be empty");
    return d;
}

std::vector<Curve> curves(const RunConfig& cfg) {
    if (cfg.preset == "fig2a" || cfg.preset == "fig2b") {
        return {{"closed", BathSpectrum{1.0, 0.0, cfg.cutoff}},
                {"subohmic", BathSpectrum::subohmic(cfg.gamma, cfg.cutoff)},
                {"ohmic", BathSpectrum::ohmic(cfg.gamma, cfg.cutoff)},
                {"superohmic", BathSpectrum::superohmic(cfg.gamma, cfg.cutoff)}};
    }
    double k = 1.0;
    if (cfg.spectrum == "subohmic") k = 0.5;
    else if (cfg.spectrum == "superohmic") k = 2.0;
    else if (cfg.spectrum == "general") k = cfg.k;
    return {{cfg.spectrum, BathSpectrum{k, cfg.gamma, cfg.cutoff}}};
}

double effective_omega_max(const RunConfig& cfg, double cutoff) {
    if (cfg.omega_max) return *cfg.omega_max;
    return cutoff >= 100.0 ? 20.0 : std::max(20.0, 10.0 * cutoff);
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["preset"] = cfg.preset;
    j["spectrum"] = cfg.spectrum;
    j["k"] = cfg.k;
    j["gamma"] = cfg.gamma;
    j["cutoff"] = cfg.cutoff;
    j["g0"] = cfg.g0;
    j["tmax"] = cfg.t_max;
    j["h"] = cfg.h;
    j["mode"] = to_string(cfg.mode);
    j["bath-modes"] = cfg.bath_modes ? nlohmann::ordered_json(*cfg.bath_modes) : nlohmann::ordered_json(nullptr);
    j["omega-max"] = cfg.omega_max ? nlohmann::ordered_json(*cfg.omega_max) : nlohmann::ordered_json(nullptr);
    j["convention"] = to_string(cfg.convention);
    j["kernel-normalization"] = to_string(cfg.normalization);
    j["mode-weights"] = to_string(cfg.mode_weights);
    j["tol"] = cfg.tol;
    j["grid-tol"] = cfg.grid_tol;
    j["out-dir"] = cfg.out_dir;
    j["omega-m-hz"] = cfg.omega_m_hz ? nlohmann::ordered_json(*cfg.omega_m_hz) : nlohmann::ordered_json(nullptr);
    j["threads"] = cfg.threads;
    return j;
}

RunConfig from_json(const nlohmann::ordered_json& j) {
    RunConfig cfg;
    apply_preset(cfg, j.value("preset", std::string("none")));
    for (const auto& [key, val] : j.items()) {
        if (key == "preset") continue;
        if (val.is_null()) apply_setting(cfg, key, "none");
        else if (val.is_string()) apply_setting(cfg, key, val.get<std::string>());
        else apply_setting(cfg, key, val.dump());
    }
    return cfg;
}

}  // namespace optokerr::app
