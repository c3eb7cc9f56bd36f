#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "optokerr/errors.hpp"
#include "optokerr/greens.hpp"
#include "optokerr/grid.hpp"

using namespace optokerr;

TEST_CASE("closed system gives sin and cos") {
    const auto T = solve_greens({1.0, 0.0, 1.0}, 2.0 * M_PI, 2.0 * M_PI / 628.0, 1e-8);
    double g = 0.0, a = 0.0, b = 0.0;
    for (std::size_t n = 0; n < T.size(); ++n) {
        const double t = T.time(n);
        g = std::max(g, std::abs(T.g_values[n] - std::sin(t)));
        a = std::max(a, std::abs(T.alpha[n] - std::cos(t)));
        b = std::max(b, std::abs(T.beta[n] - std::sin(t)));
    }
    CHECK(g <= 1e-8);
    CHECK(a <= 1e-8);
    CHECK(b <= 1e-8);
    CHECK(T.error_estimate <= 1e-8);
}

TEST_CASE("initial values are exact") {
    for (double k : {0.5, 1.0, 2.0}) {
        const auto T = solve_greens({k, 0.3, 100.0}, 2.0, 0.02);
        CHECK(T.g_values[0] == 0.0);
        CHECK(T.alpha[0] == 1.0);
        CHECK(T.beta[0] == 0.0);
    }
}

TEST_CASE("alpha' = -G on the grid") {
    const double h = 0.01;
    const auto T = solve_greens({1.0, 0.3, 1.0}, 5.0, h);
    double worst = 0.0;
    for (std::size_t n = 1; n + 1 < T.size(); ++n) {
        const double d = (T.alpha[n + 1] - T.alpha[n - 1]) / (2.0 * h);
        worst = std::max(worst, std::abs(d + T.g_values[n]));
    }
    CHECK(worst < h * h);
}

TEST_CASE("step halving stays within four times the estimate") {
    for (double oc : {1.0, 100.0})
        for (double k : {0.5, 1.0, 2.0}) {
            const BathSpectrum s{k, 0.3, oc};
            const auto a = solve_greens(s, 10.0, 0.02, 1e-5);
            const auto b = solve_greens(s, 10.0, 0.01, 1e-5);
            const double diff = std::abs(a.g_values.back() - b.g_values.back());
            INFO("k=" << k << " cutoff=" << oc << " diff=" << diff << " est=" << a.error_estimate);
            CHECK(diff <= 4.0 * a.error_estimate);
        }
}

TEST_CASE("weak damping approaches sin monotonically") {
    double prev = 1e300;
    for (double g : {0.1, 0.01, 0.001}) {
        const auto T = solve_greens({1.0, g, 1.0}, 10.0, 0.02);
        double dev = 0.0;
        for (std::size_t n = 0; n < T.size(); ++n) dev = std::max(dev, std::abs(T.g_values[n] - std::sin(T.time(n))));
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(solve_greens({1.0, 0.3, 1.0}, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(solve_greens({1.0, 0.3, 1.0}, 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(solve_greens({1.0, 0.3, 1.0}, -1.0, 0.01), DomainError);
    CHECK_THROWS_AS(solve_greens({1.0, 0.3, -1.0}, 1.0, 0.01), DomainError);
}

TEST_CASE("instability bound and refinement failure are reported") {
    GreensOptions o;
    o.instability_bound = 0.5;
    CHECK_THROWS_AS(solve_greens({1.0, 0.0, 1.0}, 3.0, 0.01, 1e-6, o), InstabilityError);
    GreensOptions r;
    r.max_refinements = 0;
    try {
        solve_greens({1.0, 0.3, 100.0}, 2.0, 0.05, 1e-14, r);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.error() > e.tolerance());
        CHECK(std::isfinite(e.estimate()));
    }
}

TEST_CASE("inverse laplace of 1/(s^2+1)") {
    const LaplaceResponse r([](std::complex<double> s) { return 1.0 / (s * s + 1.0); });
    CHECK(std::abs(invert_laplace(r, M_PI / 2, 1e-8) - 1.0) < 1e-8);
    CHECK(std::abs(invert_laplace(r, M_PI, 1e-8)) < 1e-8);
    CHECK(std::abs(invert_laplace(r, 17.0, 1e-8) - std::sin(17.0)) < 1e-8);
    CHECK_THROWS_AS(invert_laplace(r, 0.0), DomainError);
}

TEST_CASE("inverse laplace reports an unreachable accuracy") {
    // a step in time: the Fourier series converges slowly at the jump
    const LaplaceResponse r([](std::complex<double> s) { return std::exp(-s) / s; });
    try {
        invert_laplace(r, 1.0, 1e-12);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.error() > 1e-12);
        CHECK(e.tolerance() == 1e-12);
    }
}

TEST_CASE("time domain and inverse laplace agree") {
    struct Case {
        double k, oc, t;
    };
    for (const auto& c : {Case{1.0, 100.0, 5.0}, Case{1.0, 1.0, 2.0}, Case{0.5, 1.0, 3.0}, Case{2.0, 100.0, 7.0}}) {
        const BathSpectrum s{c.k, 0.3, c.oc};
        const auto T = solve_greens(s, 10.0, 0.02);
        const auto resp = LaplaceResponse::from_spectrum(s, CouplingConvention::two_over_pi);
        const double g = invert_laplace(resp, c.t, 1e-6);
        CHECK(std::abs(g - T.g_values[static_cast<std::size_t>(std::lround(c.t / 0.02))]) < 1e-4);
    }
}

TEST_CASE("laplace response tends to 1/s^2") {
    const auto r = LaplaceResponse::from_spectrum({1.0, 0.3, 1.0}, CouplingConvention::two_over_pi);
    const std::complex<double> s(1e4, 0.0);
    CHECK(std::abs(r(s) * s * s - 1.0) < 1e-4);
}

TEST_CASE("bath convolutions") {
    const auto T = solve_greens({1.0, 0.0, 1.0}, 2.0 * M_PI, 2.0 * M_PI / 628.0);
    const auto [a0, b0] = convolve_bath_coeffs(T, 0.0);
    // exact for piecewise-linear G, i.e. the trapezoid rule
    const auto trap = cumulative_trapezoid(T.g_values, T.h);
    for (std::size_t n = 0; n < T.size(); ++n) {
        CHECK(b0[n] == 0.0);
        CHECK(std::abs(a0[n] - trap[n]) < 1e-13);
    }
    const auto [a1, b1] = convolve_bath_coeffs(T, 1.0);
    double ea = 0.0, eb = 0.0;
    for (std::size_t n = 0; n < T.size(); ++n) {
        const double t = T.time(n);
        ea = std::max(ea, std::abs(a1[n] - 0.5 * t * std::sin(t)));
        eb = std::max(eb, std::abs(b1[n] - 0.5 * (std::sin(t) - t * std::cos(t))));
    }
    CHECK(ea < 5e-5);
    CHECK(eb < 5e-5);
    CHECK_THROWS_AS(convolve_bath_coeffs(T, -1.0), DomainError);
}

TEST_CASE("csv dump") {
    const auto T = solve_greens({1.0, 0.3, 1.0}, 0.1, 0.02);
    std::ostringstream os;
    write_greens_csv(T, os);
    const std::string s = os.str();
    CHECK(s.rfind("t,G,alpha,beta\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 7);
}
