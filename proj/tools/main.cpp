#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "app/config.hpp"
#include "app/run.hpp"
#include "optokerr/version.hpp"

int main(int argc, char** argv) {
    using namespace optokerr::app;

    CLI::App cli{"Optomechanical Kerr nonlinearity under a Brownian-motion bath"};
    cli.set_help_flag("--help", "print this help and exit");
    cli.set_version_flag("--version", std::string(optokerr::version));

    std::optional<std::string> config_file;
    cli.add_option("--config", config_file, "flat key = value file; flags override it");

    // every setting goes through the same string path as the config file
    const std::vector<std::pair<std::string, std::string>> keys = {
        {"preset", "none | fig2a | fig2b"},
        {"spectrum", "subohmic | ohmic | superohmic | general"},
        {"k", "spectral exponent for spectrum=general"},
        {"gamma", "dissipation rate (units of omega_m)"},
        {"cutoff", "cutoff frequency Omega_C (units of omega_m)"},
        {"g0", "optomechanical coupling (units of omega_m)"},
        {"tmax", "time horizon"},
        {"h", "grid step"},
        {"mode", "continuum | oracle | both"},
        {"bath-modes", "discrete bath mode count N"},
        {"omega-max", "discrete bath truncation frequency"},
        {"convention", "two-over-pi | unit"},
        {"kernel-normalization", "printed | spectral"},
        {"mode-weights", "cell-moment | midpoint"},
        {"tol", "Green's function tolerance"},
        {"grid-tol", "allowed relative change of eta on the 2h probe"},
        {"out-dir", "output directory"},
        {"omega-m-hz", "mechanical frequency in Hz, recorded in metadata"},
        {"threads", "worker threads (0 = hardware)"},
    };
    std::vector<std::optional<std::string>> values(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        cli.add_option("--" + keys[i].first, values[i], keys[i].second);
    }
    bool check_only = false;
    cli.add_flag("--check", check_only, "validate the configuration and exit");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? 0 : config_error;
    }

    RunConfig cfg;
    try {
        std::vector<std::pair<std::string, std::string>> flags;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (values[i]) flags.emplace_back(keys[i].first, *values[i]);
        }
        cfg = resolve(config_file, flags);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    }

    if (const auto diags = validate(cfg); !diags.empty()) {
        for (const auto& d : diags) std::cerr << "config error: " << d << "\n";
        return config_error;
    }
    if (check_only) {
        std::cout << to_json(cfg).dump(2) << "\n";
        return 0;
    }

    try {
        const auto outcome = run(cfg, std::cerr);
        for (const auto& f : outcome.files) std::cout << f << "\n";
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numerical_failure;
    }
}
