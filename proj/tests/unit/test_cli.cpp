#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "app/config.hpp"
#include "app/run.hpp"
#include "optokerr/nonlinearity.hpp"

using namespace optokerr;
using namespace optokerr::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("optokerr_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

bool mentions(const std::vector<std::string>& d, const std::string& what) {
    for (const auto& s : d)
        if (s.find(what) != std::string::npos) return true;
    return false;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(OPTOKERR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("validation diagnostics") {
    RunConfig c;
    CHECK(validate(c).empty());
    c.h = -0.01;
    CHECK(mentions(validate(c), "h must be positive"));
    c = {};
    c.cutoff = 0.0;
    CHECK(mentions(validate(c), "cutoff must be positive"));
    c = {};
    c.t_max = 1.013;
    CHECK(mentions(validate(c), "multiple of h"));
    c = {};
    c.mode = Mode::oracle;
    CHECK(mentions(validate(c), "needs bath-modes"));
    c.bath_modes = 100;
    CHECK(validate(c).empty());
    c = {};
    c.h = 0.1;
    CHECK(mentions(validate(c), "0.05"));
}

TEST_CASE("settings and precedence") {
    RunConfig c;
    CHECK_THROWS_AS(apply_setting(c, "nonsense", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "gamma", "abc"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "mode", "sideways"), ConfigError);
    apply_setting(c, "bath-modes", "200");
    REQUIRE(c.bath_modes);
    CHECK(*c.bath_modes == 200);
    apply_setting(c, "bath-modes", "none");
    CHECK_FALSE(c.bath_modes);

    const auto kv = parse_config_text("# comment\n gamma = 0.1 \ncutoff=5 # trailing\n\n");
    REQUIRE(kv.size() == 2);
    CHECK(kv[0].first == "gamma");
    CHECK(kv[0].second == "0.1");
    CHECK_THROWS_AS(parse_config_text("gamma 0.1\n"), ConfigError);

    const auto file = scratch("cfg.txt");
    {
        std::ofstream f(file);
        f << "preset = fig2b\ncutoff = 7\ng0 = 2\n";
    }
    const auto r = resolve(file.string(), {{"g0", "3"}});
    CHECK(r.gamma == 0.3);                       // from the preset
    CHECK(r.cutoff == 7.0);                      // file beats preset
    CHECK(r.g0 == 3.0);                          // flag beats file
    CHECK(r.convention == CouplingConvention::unit);
    CHECK_THROWS_AS(resolve(std::string("/nonexistent/cfg"), {}), ConfigError);
    fs::remove(file);
}

TEST_CASE("json round trip") {
    RunConfig c;
    c.spectrum = "general";
    c.k = 1.7;
    c.mode = Mode::both;
    c.bath_modes = 123;
    c.omega_max = 15.0;
    c.omega_m_hz = 1e6;
    c.mode_weights = ModeWeights::midpoint;
    c.threads = 3;
    const auto back = from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK(back.k == 1.7);
    CHECK(*back.bath_modes == 123);
}

TEST_CASE("presets expand into four curves") {
    RunConfig c;
    apply_preset(c, "fig2a");
    const auto cs = curves(c);
    REQUIRE(cs.size() == 4);
    CHECK(cs[0].spec.gamma == 0.0);
    CHECK(cs[1].spec.k == 0.5);
    CHECK(cs[3].spec.k == 2.0);
    CHECK(c.cutoff == 1.0);
    apply_preset(c, "fig2b");
    CHECK(c.cutoff == 100.0);
    CHECK_THROWS_AS(apply_preset(c, "fig9"), ConfigError);
    CHECK(effective_omega_max(c, 100.0) == 20.0);
    CHECK(effective_omega_max(c, 5.0) == 50.0);
}

TEST_CASE("closed run writes the closed curve") {
    RunConfig c;
    c.gamma = 0.0;
    c.t_max = 5.0;
    c.out_dir = scratch("closed").string();
    std::ostringstream log;
    const auto out = run(c, log);
    CHECK(out.exit_code == ok);
    CHECK_FALSE(out.metadata["partial"].get<bool>());
    std::istringstream csv(slurp(fs::path(c.out_dir) / "ohmic.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "t,eta,eta_unitary,eta_bath,eta_closed");
    int rows = 0;
    while (std::getline(csv, line)) {
        double t, e, u, b, cl;
        char sep;
        std::istringstream row(line);
        row >> t >> sep >> e >> sep >> u >> sep >> b >> sep >> cl;
        CHECK(e == doctest::Approx(cl).epsilon(1e-6).scale(1e-12));
        ++rows;
    }
    CHECK(rows == 251);
    CHECK(fs::exists(fs::path(c.out_dir) / "run.json"));
    fs::remove_all(c.out_dir);
}

TEST_CASE("output bytes do not depend on threads") {
    RunConfig c;
    apply_preset(c, "fig2a");
    c.t_max = 4.0;
    c.mode = Mode::both;
    c.bath_modes = 200;
    std::ostringstream log;
    c.out_dir = scratch("t1").string();
    run(c, log);
    const auto d1 = c.out_dir;
    c.threads = 4;
    c.out_dir = scratch("t4").string();
    run(c, log);
    for (const char* f : {"closed.csv", "ohmic.csv", "superohmic_oracle.csv", "subohmic_oracle.csv"}) {
        const auto a = slurp(fs::path(d1) / f);
        CHECK(!a.empty());
        CHECK(a == slurp(fs::path(c.out_dir) / f));
    }
    fs::remove_all(d1);
    fs::remove_all(c.out_dir);
}

TEST_CASE("numerical failure keeps going and flags the run") {
    RunConfig c;
    c.t_max = 2.0;
    c.tol = 1e-300;
    c.out_dir = scratch("fail").string();
    std::ostringstream log;
    const auto out = run(c, log);
    CHECK(out.exit_code == numerical_failure);
    CHECK(out.metadata["partial"].get<bool>());
    CHECK(out.metadata["curves"][0]["status"] == "failed");
    CHECK(out.metadata["curves"][0]["diagnostics"]["failure"].contains("estimate"));
    fs::remove_all(c.out_dir);
}

TEST_CASE("binary exit codes") {
    const auto dir = scratch("bin");
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("--check") == 0);
    CHECK(run_cli("--h -1 --check") == 2);
    CHECK(run_cli("--gamma nope") == 2);
    CHECK(run_cli("--no-such-flag 1") == 2);
    CHECK(run_cli("--mode oracle") == 2);
    CHECK(run_cli("--tmax 1 --tol 1e-300 --out-dir " + dir.string()) == 3);
    CHECK(run_cli("--tmax 1 --gamma 0 --out-dir " + dir.string()) == 0);
    CHECK(fs::exists(dir / "ohmic.csv"));
    fs::remove_all(dir);
}
