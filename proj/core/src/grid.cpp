#include "optokerr/grid.hpp"

#include <array>
#include <cmath>

#include "optokerr/errors.hpp"

namespace optokerr {

std::size_t grid_points(double t_max, double h) {
    if (!(h > 0.0)) throw DomainError("grid step h must be positive");
    if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
    const double steps = t_max / h;
    const double n = std::round(steps);
    if (std::abs(steps - n) > 1e-9 * std::max(1.0, steps)) {
        throw DomainError("t_max must be an integer multiple of h");
    }
    return static_cast<std::size_t>(n) + 1;
}

namespace {

// w[o][p]: integral over cell [o, o+1] of the Lagrange basis polynomial for
// node p, nodes at 0..5 (unit spacing).
std::array<std::array<double, 6>, 5> lagrange_cell_weights() {
    std::array<std::array<double, 6>, 5> out{};
    for (int p = 0; p < 6; ++p) {
        // monomial coefficients of l_p(u) = prod_{r != p} (u - r)/(p - r)
        std::array<double, 6> c{};
        c[0] = 1.0;
        int deg = 0;
        for (int r = 0; r < 6; ++r) {
            if (r == p) continue;
            const double d = static_cast<double>(p - r);
            for (int m = deg + 1; m >= 0; --m) {
                const double up = m > 0 ? c[m - 1] : 0.0;
                c[m] = (up - r * c[m]) / d;
            }
            ++deg;
        }
        for (int o = 0; o < 5; ++o) {
            double acc = 0.0;
            for (int m = 0; m < 6; ++m) {
                acc += c[m] * (std::pow(o + 1.0, m + 1) - std::pow(static_cast<double>(o), m + 1)) / (m + 1);
            }
            out[o][p] = acc;
        }
    }
    return out;
}

}  // namespace

std::vector<double> cumulative_trapezoid(const std::vector<double>& f, double h) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t n = 1; n < f.size(); ++n) out[n] = out[n - 1] + 0.5 * h * (f[n - 1] + f[n]);
    return out;
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 6) return cumulative_trapezoid(f, h);
    static const auto W = lagrange_cell_weights();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // stencil start s: cell i sits at offset 2 where possible
        std::size_t s = i >= 2 ? i - 2 : 0;
        if (s + 5 >= n) s = n - 6;
        const std::size_t o = i - s;
        double acc = 0.0;
        for (int p = 0; p < 6; ++p) acc += W[o][p] * f[s + p];
        out[i + 1] = out[i] + h * acc;
    }
    return out;
}

}  // namespace optokerr

namespace optokerr {

std::vector<std::complex<double>> filon_convolution(const std::vector<double>& g, double h, double omega) {
    using cd = std::complex<double>;
    const double th = omega * h;
    const cd I(0.0, 1.0);
    // E0 = int_0^1 e^{i th r} dr, E1 = int_0^1 r e^{i th r} dr
    cd E0, E1;
    if (std::abs(th) < 0.05) {
        cd term(1.0, 0.0);  // (i th)^m / m!
        E0 = E1 = 0.0;
        for (int m = 0; m < 12; ++m) {
            E0 += term / static_cast<double>(m + 1);
            E1 += term / static_cast<double>(m + 2);
            term *= I * th / static_cast<double>(m + 1);
        }
    } else {
        const cd e = std::exp(I * th);
        const cd it = I * th;
        E0 = (e - 1.0) / it;
        E1 = e / it - (e - 1.0) / (it * it);
    }
    const cd rot = std::exp(I * th);
    const cd w_old = h * E1;         // weight on g_n
    const cd w_new = h * (E0 - E1);  // weight on g_{n+1}
    std::vector<cd> z(g.size(), cd(0.0, 0.0));
    for (std::size_t n = 0; n + 1 < g.size(); ++n) z[n + 1] = rot * z[n] + w_old * g[n] + w_new * g[n + 1];
    return z;
}

}  // namespace optokerr
