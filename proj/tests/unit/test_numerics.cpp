#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "optokerr/errors.hpp"
#include "optokerr/grid.hpp"
#include "optokerr/parallel.hpp"
#include "optokerr/quadrature.hpp"

using namespace optokerr;

TEST_CASE("gauss-kronrod on smooth and endpoint-singular integrands") {
    auto r = quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    auto s = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-12, 1e-10, 5000});
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("complex-valued integrand") {
    using cd = std::complex<double>;
    auto r = quad::integrate([](double x) { return std::exp(cd(0.0, x)); }, 0.0, M_PI);
    CHECK(std::abs(r.value - cd(0.0, 2.0)) < 1e-13);
}

TEST_CASE("semi-infinite map") {
    auto r = quad::integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0);
    CHECK(r.value == doctest::Approx(M_PI / 2).epsilon(1e-12));
}

TEST_CASE("interval budget exhaustion is reported") {
    quad::Tolerance t{0.0, 1e-15, 4};
    CHECK_THROWS_AS(quad::integrate([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, t), ConvergenceError);
}

TEST_CASE("wynn epsilon accelerates an alternating series") {
    // partial sums of log 2
    std::vector<double> s;
    double acc = 0.0;
    for (int n = 1; n <= 16; ++n) {
        acc += (n % 2 ? 1.0 : -1.0) / n;
        s.push_back(acc);
    }
    auto a = quad::wynn_epsilon(s);
    CHECK(std::abs(acc - std::log(2.0)) > 1e-2);
    CHECK(std::abs(a.value - std::log(2.0)) < 1e-9);
}

TEST_CASE("half-period summation of a slowly decaying oscillation") {
    // int_0^inf sin(x)/(1+x) dx = Ci(1) sin 1 + (pi/2 - Si(1)) cos 1
    const double exact = 0.6214496242358134;
    auto r = quad::half_period_sum([](double x) { return std::sin(x) / (1.0 + x); }, 0.0, M_PI);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("cumulative integral is exact for quintics") {
    const double h = 0.1;
    std::vector<double> f;
    for (int i = 0; i <= 40; ++i) {
        const double t = i * h;
        f.push_back(1.0 - 2.0 * t + 3.0 * std::pow(t, 3) - 0.5 * std::pow(t, 5));
    }
    const auto F = cumulative_integral(f, h);
    for (int i = 0; i <= 40; ++i) {
        const double t = i * h;
        const double exact = t - t * t + 0.75 * std::pow(t, 4) - std::pow(t, 6) / 12.0;
        CHECK(F[i] == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("cumulative integral of sin converges at high order") {
    for (double h : {0.1, 0.05}) {
        std::vector<double> f;
        for (int i = 0; i * h <= 10.0 + 1e-12; ++i) f.push_back(std::sin(i * h));
        const auto F = cumulative_integral(f, h);
        double worst = 0.0;
        for (std::size_t i = 0; i < F.size(); ++i) worst = std::max(worst, std::abs(F[i] - (1.0 - std::cos(i * h))));
        CHECK(worst < (h > 0.075 ? 1e-7 : 2e-9));
    }
}

TEST_CASE("grid point count") {
    CHECK(grid_points(20.0, 0.02) == 1001);
    CHECK_THROWS_AS(grid_points(1.0, 0.3), DomainError);
    CHECK_THROWS_AS(grid_points(1.0, 0.0), DomainError);
}

TEST_CASE("filon convolution of sin with cos") {
    const double h = 0.01;
    std::vector<double> g;
    for (int i = 0; i <= 628; ++i) g.push_back(std::sin(i * h));
    const auto z = filon_convolution(g, h, 1.0);
    for (std::size_t i = 0; i < g.size(); i += 50) {
        const double t = i * h;
        CHECK(std::abs(z[i].real() - 0.5 * t * std::sin(t)) < 5e-5);
    }
}

TEST_CASE("parallel_for touches every index once and forwards exceptions") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                        if (i == 7) throw DomainError("boom");
                    }),
                    DomainError);
}
