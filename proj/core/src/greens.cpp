#include "optokerr/greens.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "optokerr/convolution.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/grid.hpp"

namespace optokerr {

namespace {

// One trapezoid march at step h on n points. M holds cell moments of Sigma
// at the same step (p = 0, 1). v = G'.
std::vector<double> march(const KernelMoments& M, std::size_t n, double h, double bound) {
    std::vector<double> G(n, 0.0), v(n, 0.0), I(n, 0.0);
    std::vector<double> a(n, 0.0), b(n, 0.0);  // M0 - M1 and M1 per cell
    const bool has_memory = M.last() > 0;
    if (has_memory) {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            a[j] = M(static_cast<long>(j), 0) - M(static_cast<long>(j), 1);
            b[j] = M(static_cast<long>(j), 1);
        }
    }
    v[0] = 1.0;
    const double cc = a[0];
    const double denom = 1.0 + 0.25 * h * h + 0.5 * h * cc;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // I_{k+1} = cc v_{k+1} + R, v linear over each cell
        double R = 0.0;
        if (has_memory) {
            for (std::size_t j = 1; j <= k; ++j) R += a[j] * v[k + 1 - j];
            for (std::size_t j = 0; j <= k; ++j) R += b[j] * v[k - j];
        }
        const double rhs = v[k] - 0.5 * h * (G[k] + I[k]) - 0.5 * h * (G[k] + 0.5 * h * v[k]) - 0.5 * h * R;
        v[k + 1] = rhs / denom;
        G[k + 1] = G[k] + 0.5 * h * (v[k] + v[k + 1]);
        I[k + 1] = cc * v[k + 1] + R;
        if (!std::isfinite(G[k + 1]) || std::abs(G[k + 1]) > bound) {
            throw InstabilityError("Green's function exceeded the instability bound",
                                   static_cast<double>(k + 1) * h, G[k + 1]);
        }
    }
    return G;
}

}  // namespace

GreensTable make_table(std::vector<double> g, double h, const BathSpectrum& spec, CouplingConvention conv) {
    if (g.size() < 2) throw DomainError("Green's table needs at least two points");
    GreensTable t;
    t.h = h;
    t.t_max = static_cast<double>(g.size() - 1) * h;
    t.spec = spec;
    t.convention = conv;
    t.g_cumint = cumulative_integral(g, h);
    t.alpha.resize(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) t.alpha[n] = 1.0 - t.g_cumint[n];
    t.beta = g;
    t.g_values = std::move(g);
    return t;
}

GreensTable solve_greens(const BathSpectrum& spec, double t_max, double h, double tol, const GreensOptions& opt) {
    spec.validate();
    if (!(h > 0.0)) throw DomainError("solve_greens: h must be positive");
    if (h > 0.05) throw DomainError("solve_greens: h must not exceed 0.05");
    if (!(tol > 0.0)) throw DomainError("solve_greens: tol must be positive");
    const std::size_t n = grid_points(t_max, h);

    auto sigma = [&](double t) { return memory_kernel(spec, t, opt.convention, opt.kernel_tol); };
    const double scale = spec.gamma > 0.0 ? std::abs(sigma(0.0)) : 0.0;

    double est = 0.0;
    std::vector<double> best;
    for (int r = 0; r <= opt.max_refinements; ++r) {
        // three internal levels h/2^r, h/2^(r+1), h/2^(r+2)
        const std::size_t f = std::size_t{1} << (r + 2);
        const double hf = h / static_cast<double>(f);
        const std::size_t nf = (n - 1) * f + 1;
        KernelMoments fine;
        if (spec.gamma > 0.0) {
            fine = KernelMoments(sigma, hf, 0, static_cast<long>(nf), 1, Parity::even, scale, opt.threads);
        }
        KernelMoments mid = spec.gamma > 0.0 ? fine.coarsened() : fine;
        KernelMoments coarse = spec.gamma > 0.0 ? mid.coarsened() : fine;

        const auto g4 = march(fine, nf, hf, opt.instability_bound);
        const auto g2 = march(mid, (nf - 1) / 2 + 1, 2 * hf, opt.instability_bound);
        const auto g1 = march(coarse, (nf - 1) / 4 + 1, 4 * hf, opt.instability_bound);

        best.assign(n, 0.0);
        est = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double a = g1[k * f / 4];
            const double b = g2[k * f / 2];
            const double c = g4[k * f];
            const double ra = (4.0 * b - a) / 3.0;
            const double rb = (4.0 * c - b) / 3.0;
            best[k] = rb;
            est = std::max(est, std::abs(ra - rb));
        }
        if (est <= tol) {
            GreensTable t = make_table(std::move(best), h, spec, opt.convention);
            t.tol = tol;
            t.error_estimate = est;
            t.refinement = r;
            return t;
        }
    }
    throw ConvergenceError("solve_greens: step refinement did not reach tolerance", best.back(), est, tol);
}

LaplaceResponse LaplaceResponse::from_spectrum(const BathSpectrum& spec, CouplingConvention conv, double rel_tol) {
    spec.validate();
    return LaplaceResponse([spec, conv, rel_tol](std::complex<double> s) {
        return 1.0 / (s * s + 1.0 + s * laplace_kernel(spec, s, conv, rel_tol));
    });
}

namespace {

using cd = std::complex<double>;

// a[0..2M] are samples at gamma + i*pi*k/T, a[0] already halved.
double dehoog_sum(const std::vector<cd>& a, int M, double t, double T, double shift) {
    const int rows = 2 * M + 1;
    std::vector<std::vector<cd>> e(rows, std::vector<cd>(M + 1, 0.0));
    std::vector<std::vector<cd>> q(2 * M, std::vector<cd>(M + 1, 0.0));
    for (int i = 0; i < 2 * M; ++i) q[i][1] = a[i + 1] / a[i];
    for (int r = 1; r <= M; ++r) {
        const int n = 2 * (M - r) + 1;
        for (int i = 0; i < n; ++i) e[i][r] = q[i + 1][r] - q[i][r] + e[i + 1][r - 1];
        if (r < M) {
            const int n2 = 2 * (M - r - 1) + 2;
            for (int i = 0; i < n2; ++i) q[i][r + 1] = q[i + 1][r] * e[i + 1][r] / e[i][r];
        }
    }
    std::vector<cd> d(rows);
    d[0] = a[0];
    for (int m = 1; m <= M; ++m) {
        d[2 * m - 1] = -q[0][m];
        d[2 * m] = -e[0][m];
    }
    std::vector<cd> A(rows + 1, 0.0), B(rows + 1, 0.0);
    A[1] = d[0];
    B[0] = B[1] = 1.0;
    const cd z = std::exp(cd(0.0, std::numbers::pi * t / T));
    for (int k = 2; k <= 2 * M; ++k) {
        A[k] = A[k - 1] + d[k - 1] * z * A[k - 2];
        B[k] = B[k - 1] + d[k - 1] * z * B[k - 2];
    }
    // remainder of the continued fraction, not just truncation
    const cd h2 = 0.5 * (1.0 + (d[2 * M - 1] - d[2 * M]) * z);
    const cd R = -h2 * (1.0 - std::sqrt(1.0 + d[2 * M] * z / (h2 * h2)));
    A[2 * M + 1] = A[2 * M] + R * A[2 * M - 1];
    B[2 * M + 1] = B[2 * M] + R * B[2 * M - 1];
    return std::exp(shift * t) / T * (A[2 * M + 1] / B[2 * M + 1]).real();
}

}  // namespace

double invert_laplace(const LaplaceResponse& resp, double t, double accuracy, const InversionOptions& opt) {
    if (!(t > 0.0)) throw DomainError("invert_laplace: t must be positive");
    if (!(accuracy > 0.0)) throw DomainError("invert_laplace: accuracy must be positive");
    if (opt.terms < 2 || opt.check_terms <= opt.terms) throw DomainError("invert_laplace: bad term counts");
    const double T = 2.0 * t;
    const double shift = -std::log(opt.shift_tol) / (2.0 * T);
    const int Mmax = opt.check_terms;
    std::vector<cd> a(2 * Mmax + 1);
    for (int k = 0; k <= 2 * Mmax; ++k) a[k] = resp(cd(shift, std::numbers::pi * k / T));
    a[0] *= 0.5;
    const double lo = dehoog_sum(a, opt.terms, t, T, shift);
    const double hi = dehoog_sum(a, Mmax, t, T, shift);
    const double err = std::abs(hi - lo);
    if (!std::isfinite(hi) || err > accuracy) {
        throw ConvergenceError("invert_laplace: requested accuracy not reached", hi, err, accuracy);
    }
    return hi;
}

std::pair<std::vector<double>, std::vector<double>> convolve_bath_coeffs(const GreensTable& table, double omega) {
    if (!(omega >= 0.0)) throw DomainError("convolve_bath_coeffs: omega must be non-negative");
    const auto z = filon_convolution(table.g_values, table.h, omega);
    std::vector<double> ab(z.size()), bb(z.size());
    for (std::size_t n = 0; n < z.size(); ++n) {
        ab[n] = z[n].real();
        bb[n] = z[n].imag();
    }
    return {ab, bb};
}

void write_greens_csv(const GreensTable& table, std::ostream& out) {
    out << "t,G,alpha,beta\n";
    char buf[128];
    for (std::size_t n = 0; n < table.size(); ++n) {
        std::snprintf(buf, sizeof buf, "%.10g,%.15g,%.15g,%.15g\n", table.time(n), table.g_values[n],
                      table.alpha[n], table.beta[n]);
        out << buf;
    }
}

}  // namespace optokerr
