#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "optokerr/nonlinearity.hpp"

namespace optokerr::app {

enum ExitCode : int { ok = 0, config_error = 2, numerical_failure = 3 };

struct RunOutcome {
    int exit_code = ok;
    nlohmann::ordered_json metadata;
    std::vector<std::string> files;
};

// header t,eta,eta_unitary,eta_bath,eta_closed; fixed formatting so equal
// inputs give equal bytes
std::string format_csv(const EtaSeries& series);

// Assumes validate(cfg) is empty. Writes one CSV per curve (and per oracle
// curve) plus run.json into cfg.out_dir. Numerical failures are recorded per
// curve and turn the exit code into 3; the other curves still get written.
RunOutcome run(const RunConfig& cfg, std::ostream& log);

}  // namespace optokerr::app
