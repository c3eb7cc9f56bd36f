#include "optokerr/coefficients.hpp"

#include <cmath>
#include <numbers>

#include "optokerr/convolution.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/grid.hpp"

namespace optokerr {

std::complex<double> displacement(double F_X, double F_P) {
    return std::complex<double>(F_P, -F_X) / std::numbers::sqrt2;
}

std::pair<std::vector<double>, std::vector<double>> compute_FXP(const GreensTable& table, double g0) {
    if (!std::isfinite(g0)) throw DomainError("compute_FXP: g0 must be finite");
    auto A = cumulative_integral(table.alpha, table.h);
    auto B = cumulative_integral(table.beta, table.h);
    const double f = -std::numbers::sqrt2 * g0;
    for (auto& v : A) v *= f;
    for (auto& v : B) v *= f;
    return {A, B};
}

std::vector<double> compute_Fa(const GreensTable& table, const BathSpectrum& spec, double g0, const FaOptions& opt) {
    spec.validate();
    if (!std::isfinite(g0)) throw DomainError("compute_Fa: g0 must be finite");
    const std::size_t n = table.size();
    const double h = table.h;
    const auto A = cumulative_integral(table.alpha, h);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = table.beta[i] * A[i];
    auto Fa = cumulative_integral(f, h);
    for (auto& v : Fa) v *= -2.0 * g0 * g0;
    if (spec.gamma == 0.0) return Fa;

    const auto K = sine_kernel_moments(spec, opt.normalization, h, n, opt.threads, opt.kernel_tol);
    const auto Tm = triangle_integral(bath_correlation(table.g_values, K, KernelArgument::difference), h);
    const auto Tp = triangle_integral(bath_correlation(table.g_values, K, KernelArgument::sum), h);
    const double c = coupling_weight(table.convention);
    for (std::size_t i = 0; i < n; ++i) Fa[i] -= g0 * g0 * c * (Tp[i] + Tm[i]);
    return Fa;
}

std::vector<CoefficientSet> coefficient_series(const GreensTable& table, const BathSpectrum& spec, double g0,
                                               const FaOptions& opt) {
    const auto [FX, FP] = compute_FXP(table, g0);
    const auto Fa = compute_Fa(table, spec, g0, opt);
    std::vector<CoefficientSet> out(table.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& c = out[i];
        c.t = table.time(i);
        c.g0 = g0;
        c.F_a = Fa[i];
        c.F_X = FX[i];
        c.F_P = FP[i];
        c.K_m = displacement(FX[i], FP[i]);
    }
    return out;
}

}  // namespace optokerr
