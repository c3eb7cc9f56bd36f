#include "run.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>

#include "optokerr/discrete_oracle.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/greens.hpp"
#include "optokerr/parallel.hpp"
#include "optokerr/version.hpp"

namespace optokerr::app {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_csv(const EtaSeries& s) {
    std::string out = "t,eta,eta_unitary,eta_bath,eta_closed\n";
    char buf[160];
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.12e,%.12e,%.12e,%.12e\n", s.times[i], s.eta[i], s.eta_unitary[i],
                      s.eta_bath[i], eta_closed(s.g0, s.times[i]));
        out += buf;
    }
    return out;
}

namespace {

struct CurveResult {
    std::string name;
    std::string kind;  // continuum | oracle
    BathSpectrum spec;
    bool ok = false;
    std::string error;
    std::string csv;
    json diagnostics = json::object();
};

json spec_json(const BathSpectrum& s) { return json{{"k", s.k}, {"gamma", s.gamma}, {"cutoff", s.cutoff}}; }

json failure_json(const std::exception& e) {
    json j{{"message", e.what()}};
    if (auto* c = dynamic_cast<const ConvergenceError*>(&e)) {
        j["estimate"] = c->estimate();
        j["error"] = c->error();
        j["tolerance"] = c->tolerance();
    } else if (auto* u = dynamic_cast<const InstabilityError*>(&e)) {
        j["time"] = u->time();
        j["value"] = u->value();
    }
    return j;
}

void continuum_curve(const RunConfig& cfg, const Curve& c, unsigned threads, CurveResult& r) {
    GreensOptions go;
    go.convention = cfg.convention;
    go.threads = threads;
    const auto table = solve_greens(c.spec, cfg.t_max, cfg.h, cfg.tol, go);
    EtaOptions eo;
    eo.normalization = cfg.normalization;
    eo.grid_tol = cfg.grid_tol;
    eo.threads = threads;
    const auto s = eta_series(table, c.spec, cfg.g0, {}, eo);
    r.csv = format_csv(s);
    const auto& m = s.grid_meta;
    r.diagnostics = json{{"h", m.h},
                         {"greens_refinement", m.refinement},
                         {"greens_error_estimate", m.greens_error},
                         {"eta_error_estimate", m.error_estimate},
                         {"eta_halving_change", m.halving_change},
                         {"kernel_normalization", to_string(cfg.normalization)}};
    r.ok = true;
}

void oracle_curve(const RunConfig& cfg, const Curve& c, unsigned threads, CurveResult& r) {
    const double wmax = effective_omega_max(cfg, c.spec.cutoff);
    const auto bath = discretize_bath(c.spec, *cfg.bath_modes, wmax, cfg.convention, cfg.mode_weights);
    OracleOptions oo;
    oo.threads = threads;
    const auto s = oracle_eta(bath, cfg.g0, cfg.t_max, cfg.h, {}, oo);
    r.csv = format_csv(s);
    const auto tr = truncation_report(bath);
    r.diagnostics = json{{"bath_modes", bath.N},
                         {"omega_max", bath.omega_max},
                         {"mode_weights", to_string(bath.weights)},
                         {"kernel_normalization", "spectral"},
                         {"truncation",
                          {{"sigma0_continuum", tr.sigma0_continuum},
                           {"sigma0_discrete", tr.sigma0_discrete},
                           {"missing_fraction", tr.missing_fraction}}}};
    r.ok = true;
}

}  // namespace

RunOutcome run(const RunConfig& cfg, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    RunOutcome out;

    std::vector<CurveResult> jobs;
    for (const auto& c : curves(cfg)) {
        if (cfg.mode != Mode::oracle) jobs.push_back({c.name, "continuum", c.spec});
        if (cfg.mode != Mode::continuum) jobs.push_back({c.name, "oracle", c.spec});
    }
    const auto all = curves(cfg);
    auto find_curve = [&](const std::string& n) -> const Curve& {
        for (const auto& c : all)
            if (c.name == n) return c;
        throw std::logic_error("curve lookup");
    };

    // one task per curve; inside a task everything runs single threaded
    const unsigned workers = resolve_threads(cfg.threads);
    const unsigned inner = jobs.size() >= workers ? 1u : workers;
    std::mutex log_guard;
    parallel_for(jobs.size(), workers, [&](std::size_t i) {
        auto& r = jobs[i];
        const auto& c = find_curve(r.name);
        try {
            if (r.kind == "continuum") continuum_curve(cfg, c, inner, r);
            else oracle_curve(cfg, c, inner, r);
        } catch (const std::exception& e) {
            r.ok = false;
            r.error = e.what();
            r.diagnostics["failure"] = failure_json(e);
        }
        std::lock_guard<std::mutex> lock(log_guard);
        log << (r.ok ? "done   " : "FAILED ") << r.name << " (" << r.kind << ")"
            << (r.ok ? "" : ": " + r.error) << "\n";
    });

    // writing is serial and in job order
    fs::create_directories(cfg.out_dir);
    json curve_meta = json::array();
    bool failed = false;
    for (const auto& r : jobs) {
        json m{{"name", r.name}, {"pipeline", r.kind}, {"spectrum", spec_json(r.spec)}};
        if (r.ok) {
            const std::string file = r.name + (r.kind == "oracle" ? "_oracle" : "") + ".csv";
            const fs::path p = fs::path(cfg.out_dir) / file;
            std::ofstream f(p, std::ios::binary);
            f << r.csv;
            if (!f) throw std::runtime_error("cannot write " + p.string());
            out.files.push_back(p.string());
            m["file"] = file;
            m["status"] = "ok";
        } else {
            failed = true;
            m["status"] = "failed";
        }
        m["diagnostics"] = r.diagnostics;
        curve_meta.push_back(m);
    }

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json meta;
    meta["version"] = optokerr::version;
    meta["config"] = to_json(cfg);
    meta["curves"] = curve_meta;
    meta["partial"] = failed;
    if (cfg.omega_m_hz) {
        const double wm = 2.0 * std::numbers::pi * *cfg.omega_m_hz;
        meta["physical_scale"] = {{"omega_m_hz", *cfg.omega_m_hz},
                                  {"time_unit_s", 1.0 / wm},
                                  {"frequency_unit_rad_s", wm}};
    }
    meta["wall_time_s"] = wall;
    const fs::path mp = fs::path(cfg.out_dir) / "run.json";
    std::ofstream mf(mp, std::ios::binary);
    mf << meta.dump(2) << "\n";
    if (!mf) throw std::runtime_error("cannot write " + mp.string());
    out.files.push_back(mp.string());
    out.metadata = std::move(meta);
    out.exit_code = failed ? numerical_failure : ok;
    return out;
}

}  // namespace optokerr::app
