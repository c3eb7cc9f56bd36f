#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "optokerr/discrete_oracle.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/spectra.hpp"

namespace optokerr::app {

// Unparseable value or unknown key; maps to exit code 2 like validation.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { continuum, oracle, both };

struct RunConfig {
    std::string preset = "none";       // none | fig2a | fig2b
    std::string spectrum = "ohmic";    // subohmic | ohmic | superohmic | general
    double k = 1.0;                    // only read for spectrum = general
    double gamma = 0.3;
    double cutoff = 1.0;
    double g0 = 1.0;
    double t_max = 20.0;
    double h = 0.02;
    Mode mode = Mode::continuum;
    std::optional<std::size_t> bath_modes;
    std::optional<double> omega_max;
    CouplingConvention convention = CouplingConvention::two_over_pi;
    KernelNormalization normalization = KernelNormalization::printed;
    ModeWeights mode_weights = ModeWeights::cell_moment;
    double tol = 1e-6;
    double grid_tol = 0.02;
    std::string out_dir = "out";
    std::optional<double> omega_m_hz;
    unsigned threads = 1;
};

struct Curve {
    std::string name;
    BathSpectrum spec;
};

std::string to_string(Mode m);

// key = value with the same names as the long flags (without "--").
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat "key = value" text, '#' starts a comment.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Overwrites the fields a figure preset pins down.
void apply_preset(RunConfig& cfg, const std::string& preset);

// defaults < preset < file < flags. `flags` are already-parsed key/value pairs.
RunConfig resolve(const std::optional<std::string>& file,
                  const std::vector<std::pair<std::string, std::string>>& flags);

// Empty means runnable.
std::vector<std::string> validate(const RunConfig& cfg);

std::vector<Curve> curves(const RunConfig& cfg);

// omega_max actually used by the oracle for this cutoff.
double effective_omega_max(const RunConfig& cfg, double cutoff);

// Same keys as the config file; feeding the result back through
// apply_setting reproduces cfg.
nlohmann::ordered_json to_json(const RunConfig& cfg);
RunConfig from_json(const nlohmann::ordered_json& j);

}  // namespace optokerr::app
