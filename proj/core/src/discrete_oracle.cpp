#include "optokerr/discrete_oracle.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "optokerr/errors.hpp"
#include "optokerr/grid.hpp"
#include "optokerr/parallel.hpp"
#include "optokerr/quadrature.hpp"

namespace optokerr {

std::string to_string(ModeWeights w) { return w == ModeWeights::cell_moment ? "cell-moment" : "midpoint"; }

ModeWeights parse_mode_weights(std::string_view s) {
    if (s == "cell-moment" || s == "cell_moment") return ModeWeights::cell_moment;
    if (s == "midpoint") return ModeWeights::midpoint;
    throw DomainError("unknown mode weights '" + std::string(s) + "' (cell-moment|midpoint)");
}

double DiscreteBath::memory_kernel(double t) const {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += kappas[j] * kappas[j] / omegas[j] * std::cos(omegas[j] * t);
    return s;
}

namespace {

// int_a^b sigma(Omega)/Omega dOmega = gamma Omega_C int u^(k-1) e^{-u} du
double cell_weight(const BathSpectrum& s, double a, double b) {
    const double oc = s.cutoff;
    const double k = s.k;
    const quad::Tolerance tol{0.0, 1e-13, 500};
    double r;
    if (a == 0.0) {
        // u = w^(1/k) removes the u^(k-1) endpoint behaviour
        auto f = [&](double w) { return std::exp(-std::pow(w, 1.0 / k)) / k; };
        r = quad::integrate(f, 0.0, std::pow(b / oc, k), tol).value;
    } else {
        auto f = [&](double u) { return std::pow(u, k - 1.0) * std::exp(-u); };
        r = quad::integrate(f, a / oc, b / oc, tol).value;
    }
    return s.gamma * oc * r;
}

std::size_t substeps(double h, double omega_max, double max_phase) {
    const double m = std::ceil(h * omega_max / max_phase - 1e-12);
    return static_cast<std::size_t>(std::max(1.0, m));
}

}  // namespace

DiscreteBath discretize_bath(const BathSpectrum& spec, std::size_t N, double omega_max, CouplingConvention conv,
                             ModeWeights weights) {
    spec.validate();
    if (N < 2) throw DomainError("discretize_bath: need at least two modes");
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw DomainError("discretize_bath: omega_max must be positive");
    DiscreteBath b;
    b.N = N;
    b.omega_max = omega_max;
    b.convention = conv;
    b.weights = weights;
    b.spec = spec;
    b.omegas.resize(N);
    b.kappas.resize(N);
    const double d = omega_max / static_cast<double>(N);
    const double c = coupling_weight(conv);
    for (std::size_t j = 0; j < N; ++j) {
        const double w = (static_cast<double>(j) + 0.5) * d;
        b.omegas[j] = w;
        double k2 = 0.0;
        if (spec.gamma > 0.0) {
            k2 = weights == ModeWeights::midpoint
                     ? c * spectral_density(spec, w) * d
                     : c * w * cell_weight(spec, static_cast<double>(j) * d, static_cast<double>(j + 1) * d);
        }
        b.kappas[j] = std::sqrt(k2);
    }
    return b;
}

TruncationReport truncation_report(const DiscreteBath& bath) {
    TruncationReport r;
    r.omega_max = bath.omega_max;
    r.sigma0_continuum = memory_kernel(bath.spec, 0.0, bath.convention);
    r.sigma0_discrete = bath.memory_kernel(0.0);
    r.missing_fraction = r.sigma0_continuum > 0.0 ? 1.0 - r.sigma0_discrete / r.sigma0_continuum : 0.0;
    return r;
}

std::vector<double> oracle_greens(const DiscreteBath& bath, double t_max, double h, const OracleOptions& opt) {
    const std::size_t n = grid_points(t_max, h);
    const std::size_t m = substeps(h, bath.omega_max, opt.max_phase_step);
    const double hd = h / static_cast<double>(m);
    const std::size_t N = bath.N;
    std::vector<double> w(N);
    for (std::size_t j = 0; j < N; ++j) w[j] = bath.kappas[j] * bath.kappas[j] / bath.omegas[j];
    const auto& om = bath.omegas;

    // state layout: [G, v, y_0..y_{N-1}, z_0..z_{N-1}]
    const std::size_t dim = 2 + 2 * N;
    using Vec = Eigen::VectorXd;
    auto rhs = [&](const Vec& s, Vec& ds) {
        double mem = 0.0;
        for (std::size_t j = 0; j < N; ++j) mem += w[j] * s[2 + j];
        ds[0] = s[1];
        ds[1] = -s[0] - mem;
        for (std::size_t j = 0; j < N; ++j) {
            ds[2 + j] = s[1] - om[j] * s[2 + N + j];
            ds[2 + N + j] = om[j] * s[2 + j];
        }
    };
    Vec s = Vec::Zero(dim), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    s[1] = 1.0;
    std::vector<double> G(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t sub = 0; sub < m; ++sub) {
            rhs(s, k1);
            tmp = s + 0.5 * hd * k1;
            rhs(tmp, k2);
            tmp = s + 0.5 * hd * k2;
            rhs(tmp, k3);
            tmp = s + hd * k3;
            rhs(tmp, k4);
            s += hd / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        G[i] = s[0];
        if (!std::isfinite(G[i]) || std::abs(G[i]) > opt.instability_bound) {
            throw InstabilityError("oracle Green's function exceeded the instability bound",
                                   static_cast<double>(i) * h, G[i]);
        }
    }
    return G;
}

namespace {

constexpr std::size_t kChunk = 64;

// Per-mode running integrals on the grid.
struct ModeTrack {
    std::vector<double> A, B, betaA;  // int alpha_j, int beta_j, int beta_j A_j
};

ModeTrack track_mode(const std::vector<double>& G, double h, double omega) {
    const auto z = filon_convolution(G, h, omega);
    const std::size_t n = G.size();
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = z[i].real();
        b[i] = z[i].imag();
    }
    ModeTrack t;
    t.A = cumulative_integral(a, h);
    t.B = cumulative_integral(b, h);
    std::vector<double> ba(n);
    for (std::size_t i = 0; i < n; ++i) ba[i] = b[i] * t.A[i];
    t.betaA = cumulative_integral(ba, h);
    return t;
}

std::size_t grid_index(double t, double h, std::size_t n) {
    const double k = t / h;
    const double r = std::round(k);
    if (r < 0 || r > static_cast<double>(n - 1) || std::abs(k - r) > 1e-9 * std::max(1.0, k)) {
        throw DomainError("oracle: time is not on the grid");
    }
    return static_cast<std::size_t>(r);
}

}  // namespace

CoefficientSet oracle_F(const DiscreteBath& bath, const GreensTable& table_d, double g0, double t,
                        const OracleOptions& opt) {
    const std::size_t n = table_d.size();
    const double h = table_d.h;
    const std::size_t idx = grid_index(t, h, n);
    const auto [FX, FP] = compute_FXP(table_d, g0);
    const auto A = cumulative_integral(table_d.alpha, h);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = table_d.beta[i] * A[i];
    const auto betaA = cumulative_integral(f, h);

    CoefficientSet c;
    c.t = table_d.time(idx);
    c.g0 = g0;
    c.F_X = FX[idx];
    c.F_P = FP[idx];
    c.K_m = displacement(c.F_X, c.F_P);
    c.F_jX.assign(bath.N, 0.0);
    c.F_jP.assign(bath.N, 0.0);
    c.K_j.assign(bath.N, {0.0, 0.0});

    const std::size_t chunks = (bath.N + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    const double f0 = -std::numbers::sqrt2 * g0;
    parallel_for(chunks, opt.threads, [&](std::size_t ch) {
        double acc = 0.0;
        for (std::size_t j = ch * kChunk; j < std::min(bath.N, (ch + 1) * kChunk); ++j) {
            const double kap = bath.kappas[j];
            if (kap == 0.0) continue;
            const auto tr = track_mode(table_d.g_values, h, bath.omegas[j]);
            c.F_jX[j] = f0 * kap * tr.A[idx];
            c.F_jP[j] = f0 * kap * tr.B[idx];
            c.K_j[j] = displacement(c.F_jX[j], c.F_jP[j]);
            acc += kap * kap * tr.betaA[idx];
        }
        partial[ch] = acc;
    });
    double bath_sum = 0.0;
    for (double p : partial) bath_sum += p;
    c.F_a = -2.0 * g0 * g0 * (betaA[idx] + bath_sum);
    return c;
}

EtaSeries oracle_eta(const DiscreteBath& bath, double g0, double t_max, double h, const std::vector<double>& times,
                     const OracleOptions& opt) {
    auto G = oracle_greens(bath, t_max, h, opt);
    const GreensTable table = make_table(std::move(G), h, bath.spec, bath.convention);
    const std::size_t n = table.size();

    std::vector<std::size_t> idx;
    if (times.empty()) {
        for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    } else {
        for (double t : times) idx.push_back(grid_index(t, h, n));
    }

    // mechanical part: F_a(unitary) + F_X F_P/2
    const auto [FX, FP] = compute_FXP(table, g0);
    const auto A = cumulative_integral(table.alpha, h);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = table.beta[i] * A[i];
    const auto betaA = cumulative_integral(f, h);

    // bath part: per time, sum_j kappa_j^2 (-2 int beta_j A_j + A_j B_j) g0^2,
    // accumulated chunk by chunk in a fixed order
    const std::size_t chunks = (bath.N + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> partial(chunks, std::vector<double>(n, 0.0));
    parallel_for(chunks, opt.threads, [&](std::size_t ch) {
        auto& acc = partial[ch];
        for (std::size_t j = ch * kChunk; j < std::min(bath.N, (ch + 1) * kChunk); ++j) {
            const double k2 = bath.kappas[j] * bath.kappas[j];
            if (k2 == 0.0) continue;
            const auto tr = track_mode(table.g_values, h, bath.omegas[j]);
            for (std::size_t i = 0; i < n; ++i) acc[i] += k2 * (tr.A[i] * tr.B[i] - 2.0 * tr.betaA[i]);
        }
    });
    std::vector<double> bath_signed(n, 0.0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < n; ++i) bath_signed[i] += p[i];

    EtaSeries out;
    out.spec = bath.spec;
    out.g0 = g0;
    out.convention = bath.convention;
    out.normalization = KernelNormalization::spectral;
    out.grid_meta.h = h;
    for (std::size_t i : idx) {
        // signed eta = F_a + F_X F_P/2 + sum F_jX F_jP/2; report its negative
        // so the split matches the continuum sign convention
        const double mech = -(-2.0 * g0 * g0 * betaA[i] + 0.5 * FX[i] * FP[i]);
        const double bth = -(g0 * g0 * bath_signed[i]);
        out.times.push_back(table.time(i));
        out.eta_unitary.push_back(mech);
        out.eta_bath.push_back(bth);
        out.eta.push_back(std::abs(mech + bth));
    }
    return out;
}

FundamentalSolution raw_fundamental_solution(const DiscreteBath& bath, const std::vector<double>& times) {
    if (bath.N > 50) throw DomainError("raw_fundamental_solution: only for N <= 50");
    const std::size_t N = bath.N;
    const Eigen::Index dim = static_cast<Eigen::Index>(2 + 2 * N);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
    // X_m' = P_m, P_m' = -X_m + sum kappa_j X_j
    A(0, 1) = 1.0;
    A(1, 0) = -1.0;
    for (std::size_t j = 0; j < N; ++j) {
        const Eigen::Index x = 2 + 2 * static_cast<Eigen::Index>(j);
        const double om = bath.omegas[j];
        const double kap = bath.kappas[j];
        A(1, x) = kap;
        // X_j' = Omega_j P_j, P_j' = -Omega_j X_j + kappa_j X_m
        A(x, x + 1) = om;
        A(x + 1, x) = -om;
        A(x + 1, 0) = kap;
    }
    FundamentalSolution fs;
    fs.times = times;
    for (double t : times) {
        Eigen::MatrixXd At = A * t;
        fs.transitions.push_back(At.exp());
    }
    return fs;
}

}  // namespace optokerr
