#include "optokerr/nonlinearity.hpp"

#include <cmath>
#include <string>

#include "optokerr/convolution.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/grid.hpp"

namespace optokerr {

double eta_closed(double g0, double t) {
    if (!(t >= 0.0)) throw DomainError("eta_closed: t must be non-negative");
    // t - sin t loses everything to cancellation for small t
    const double d = t < 1e-2 ? t * t * t / 6.0 * (1.0 - t * t / 20.0 * (1.0 - t * t / 42.0)) : t - std::sin(t);
    return g0 * g0 * d;
}

std::vector<double> unitary_term(const std::vector<double>& G, double h) {
    const std::size_t n = G.size();
    const auto cum = cumulative_integral(G, h);
    std::vector<double> alpha(n);
    for (std::size_t i = 0; i < n; ++i) alpha[i] = 1.0 - cum[i];
    const auto A = cumulative_integral(alpha, h);
    const auto& B = cum;  // beta = G
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = G[i] * A[i] - alpha[i] * B[i];
    return cumulative_integral(f, h);
}

std::vector<double> bath_term(const std::vector<double>& G, const KernelMoments& moments) {
    const auto W = bath_correlation(G, moments, KernelArgument::difference);
    return triangle_integral(W, moments.h());
}

namespace {

struct Pieces {
    std::vector<double> unitary, bath;
};

Pieces evaluate(const std::vector<double>& G, double h, const KernelMoments* K, double g0, double c) {
    Pieces p;
    p.unitary = unitary_term(G, h);
    p.bath.assign(G.size(), 0.0);
    if (K) p.bath = bath_term(G, *K);
    for (std::size_t i = 0; i < G.size(); ++i) {
        p.unitary[i] *= g0 * g0;
        p.bath[i] *= g0 * g0 * c;
    }
    return p;
}

}  // namespace

EtaSeries eta_series(const GreensTable& table, const BathSpectrum& spec, double g0, const std::vector<double>& times,
                     const EtaOptions& opt) {
    spec.validate();
    if (!std::isfinite(g0)) throw DomainError("eta_series: g0 must be finite");
    const std::size_t n = table.size();
    if (n < 2) throw DomainError("eta_series: empty Green's table");
    const double h = table.h;

    // output indices first, so a bad time fails before the expensive part
    std::vector<std::size_t> idx;
    if (times.empty()) {
        for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    } else {
        for (double t : times) {
            const double k = t / h;
            const double r = std::round(k);
            if (r < 0 || r > static_cast<double>(n - 1) || std::abs(k - r) > 1e-9 * std::max(1.0, k)) {
                throw DomainError("eta_series: time " + std::to_string(t) + " is not on the grid");
            }
            idx.push_back(static_cast<std::size_t>(r));
        }
    }

    const bool bath = opt.bath_enabled && spec.gamma > 0.0;
    const double c = coupling_weight(table.convention);
    KernelMoments K;
    if (bath) K = sine_kernel_moments(spec, opt.normalization, h, n, opt.threads, opt.kernel_tol);

    const Pieces main = evaluate(table.g_values, h, bath ? &K : nullptr, g0, c);

    EtaSeries out;
    out.spec = spec;
    out.g0 = g0;
    out.convention = table.convention;
    out.normalization = opt.normalization;
    out.grid_meta.h = h;
    out.grid_meta.refinement = table.refinement;
    out.grid_meta.greens_error = table.error_estimate;

    // probe: same scheme on every other node
    if (n >= 13) {
        std::vector<double> G2;
        for (std::size_t i = 0; i < n; i += 2) G2.push_back(table.g_values[i]);
        KernelMoments K2;
        if (bath) K2 = K.coarsened();
        const Pieces coarse = evaluate(G2, 2.0 * h, bath ? &K2 : nullptr, g0, c);
        const std::size_t stride = std::max<std::size_t>(opt.probe_stride, 2);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; i += stride) {
            if (i % 2) continue;
            const double fine = main.unitary[i] + main.bath[i];
            const double crude = coarse.unitary[i / 2] + coarse.bath[i / 2];
            const double e = std::abs(fine - crude) / 3.0;
            out.grid_meta.probe_times.push_back(table.time(i));
            out.grid_meta.probe_errors.push_back(e);
            worst = std::max(worst, e);
        }
        out.grid_meta.error_estimate = worst;
        const std::size_t last = (n - 1) % 2 ? n - 2 : n - 1;
        const double fine = std::abs(main.unitary[last] + main.bath[last]);
        const double crude = std::abs(coarse.unitary[last / 2] + coarse.bath[last / 2]);
        const double change = fine > 0.0 ? std::abs(fine - crude) / fine : std::abs(crude);
        out.grid_meta.halving_change = change;
        if (opt.check_grid && change > opt.grid_tol) {
            throw GridTooCoarseError("eta_series: grid too coarse, halving moved eta(t_max) by " +
                                         std::to_string(change * 100.0) + "%",
                                     fine, change, opt.grid_tol);
        }
    }

    for (std::size_t i : idx) {
        out.times.push_back(table.time(i));
        out.eta_unitary.push_back(main.unitary[i]);
        out.eta_bath.push_back(main.bath[i]);
        out.eta.push_back(std::abs(main.unitary[i] + main.bath[i]));
    }
    return out;
}

}  // namespace optokerr
