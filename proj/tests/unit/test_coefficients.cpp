#include <doctest.h>

#include <cmath>

#include "optokerr/coefficients.hpp"
#include "optokerr/discrete_oracle.hpp"
#include "optokerr/errors.hpp"
#include "optokerr/greens.hpp"

using namespace optokerr;

namespace {
const double r2 = std::sqrt(2.0);
}

TEST_CASE("closed-system linear coefficients") {
    const double h = 4.0 * M_PI / 1256.0;
    const auto T = solve_greens({1.0, 0.0, 1.0}, 4.0 * M_PI, h, 1e-8);
    for (double g0 : {1.0, 0.37}) {
        const auto [FX, FP] = compute_FXP(T, g0);
        double ex = 0.0, ep = 0.0;
        for (std::size_t n = 0; n < T.size(); ++n) {
            const double t = T.time(n);
            ex = std::max(ex, std::abs(FX[n] + r2 * g0 * std::sin(t)));
            ep = std::max(ep, std::abs(FP[n] + r2 * g0 * (1.0 - std::cos(t))));
        }
        CHECK(ex < 1e-6 * r2 * g0);
        CHECK(ep < 1e-6 * r2 * g0);
        CHECK(FX[0] == 0.0);
        CHECK(FP[0] == 0.0);
    }
}

TEST_CASE("closed-system F_a from its defining integral") {
    // integrating dF_a = -F_X dF_P with the linear coefficients above gives
    // -g0^2 (t - sin t cos t)
    const double h = 4.0 * M_PI / 1256.0;
    const auto T = solve_greens({1.0, 0.0, 1.0}, 4.0 * M_PI, h, 1e-8);
    const double g0 = 1.3;
    const auto Fa = compute_Fa(T, T.spec, g0);
    CHECK(Fa[0] == 0.0);
    double worst = 0.0;
    for (std::size_t n = 1; n < T.size(); ++n) {
        const double t = T.time(n);
        const double ref = -g0 * g0 * (t - std::sin(t) * std::cos(t));
        worst = std::max(worst, std::abs(Fa[n] - ref) / std::abs(ref));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("F_a, F_X, F_P combine to the closed nonlinearity") {
    const auto T = solve_greens({1.0, 0.0, 1.0}, 10.0, 0.02, 1e-8);
    const auto set = coefficient_series(T, T.spec, 1.0);
    for (std::size_t n = 50; n < set.size(); n += 50) {
        const auto& c = set[n];
        const double eta = std::abs(c.F_a + 0.5 * c.F_X * c.F_P);
        CHECK(eta == doctest::Approx(c.t - std::sin(c.t)).epsilon(1e-6));
    }
}

TEST_CASE("scaling in the coupling is exact") {
    const BathSpectrum s{1.0, 0.3, 1.0};
    const auto T = solve_greens(s, 5.0, 0.02);
    const auto [x1, p1] = compute_FXP(T, 1.0);
    const auto [x2, p2] = compute_FXP(T, 2.0);
    const auto a1 = compute_Fa(T, s, 1.0);
    const auto a2 = compute_Fa(T, s, 2.0);
    for (std::size_t n = 0; n < T.size(); ++n) {
        CHECK(x2[n] == 2.0 * x1[n]);
        CHECK(p2[n] == 2.0 * p1[n]);
        CHECK(a2[n] == 4.0 * a1[n]);
    }
}

TEST_CASE("displacement amplitudes") {
    const BathSpectrum s{2.0, 0.3, 1.0};
    const auto T = solve_greens(s, 3.0, 0.02);
    for (const auto& c : coefficient_series(T, s, 0.8)) {
        CHECK(c.K_m == std::complex<double>(c.F_P, -c.F_X) / std::sqrt(2.0));
        CHECK(std::norm(c.K_m) == doctest::Approx((c.F_X * c.F_X + c.F_P * c.F_P) / 2.0).epsilon(1e-15).scale(1e-300));
    }
    const auto first = coefficient_series(T, s, 0.8).front();
    CHECK(first.F_a == 0.0);
    CHECK(first.F_X == 0.0);
    CHECK(first.F_P == 0.0);
}

TEST_CASE("bath part of F_a matches the discrete bath") {
    const BathSpectrum s{1.0, 0.3, 1.0};
    const auto T = solve_greens(s, 5.0, 0.02);
    const auto Fa = compute_Fa(T, s, 1.0);
    const auto bath = discretize_bath(s, 2000, 20.0, CouplingConvention::two_over_pi);
    const auto Td = make_table(oracle_greens(bath, 5.0, 0.02), 0.02, s, CouplingConvention::two_over_pi);
    const auto c = oracle_F(bath, Td, 1.0, 5.0);
    CHECK(c.F_a == doctest::Approx(Fa.back()).epsilon(0.05));
    // in practice much closer than the 5% band
    CHECK(c.F_a == doctest::Approx(Fa.back()).epsilon(1e-3));
}
