#pragma once

// Adaptive Gauss-Kronrod (7/15) plus the two helpers built on it:
// a semi-infinite map and half-period summation with Wynn's epsilon.
// Value type can be double, std::complex<double> or a fixed Eigen array.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "optokerr/errors.hpp"

namespace optokerr::quad {

struct Tolerance {
    double abs = 1e-14;
    double rel = 1e-10;
    std::size_t max_intervals = 2000;
};

template <class V>
struct Result {
    V value{};
    double error = 0.0;
    std::size_t evaluations = 0;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::ArrayBase<Derived>& v) {
    return v.abs().maxCoeff();
}

template <class V>
V zero_like(const V& sample) {
    if constexpr (std::is_arithmetic_v<V>) {
        return V{0};
    } else if constexpr (std::is_same_v<V, std::complex<double>>) {
        return V{0.0, 0.0};
    } else {
        return V::Zero(sample.size());
    }
}

namespace detail {

inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights live on the odd Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Segment {
    double a, b;
    V value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class V, class F>
Segment<V> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    V fc = f(c);
    V kron = fc * wgk[7];
    V gauss = fc * wg[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = r * xgk[i];
        V s = f(c - dx) + f(c + dx);
        kron = kron + s * wgk[i];
        if (i % 2 == 1) gauss = gauss + s * wg[i / 2];
    }
    kron = kron * r;
    gauss = gauss * r;
    const double err = magnitude(V(kron - gauss));
    return {a, b, kron, err};
}

}  // namespace detail

// Globally adaptive: always bisect the worst segment.
template <class F>
auto integrate(F f, double a, double b, const Tolerance& tol = {})
    -> Result<std::decay_t<decltype(f(a))>> {
    using V = std::decay_t<decltype(f(a))>;
    using Seg = detail::Segment<V>;
    Result<V> out;
    if (a == b) {
        out.value = zero_like(f(a));
        return out;
    }
    std::priority_queue<Seg> heap;
    heap.push(detail::gk15<V>(f, a, b));
    out.evaluations = 15;
    V total = heap.top().value;
    double err = heap.top().error;
    while (err > std::max(tol.abs, tol.rel * magnitude(total))) {
        if (heap.size() >= tol.max_intervals) {
            throw ConvergenceError("adaptive quadrature: interval budget exhausted",
                                   magnitude(total), err, std::max(tol.abs, tol.rel * magnitude(total)));
        }
        Seg worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // ran out of floating point resolution; accept what we have
            heap.push(worst);
            break;
        }
        Seg left = detail::gk15<V>(f, worst.a, mid);
        Seg right = detail::gk15<V>(f, mid, worst.b);
        out.evaluations += 30;
        total = total - worst.value + left.value + right.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (err < 0) err = 0;
    }
    // re-sum to shed accumulated cancellation in the running total
    V sum = zero_like(total);
    double esum = 0.0;
    while (!heap.empty()) {
        sum = sum + heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    out.value = sum;
    out.error = esum;
    return out;
}

// int_a^inf via u = a + x/(1-x).
template <class F>
auto integrate_to_infinity(F f, double a, const Tolerance& tol = {})
    -> Result<std::decay_t<decltype(f(a))>> {
    auto g = [&](double x) {
        const double w = 1.0 - x;
        return f(a + x / w) * (1.0 / (w * w));
    };
    return integrate(g, 0.0, 1.0, tol);
}

// Wynn epsilon on a sequence of partial sums. Returns the last even-column
// entry and a crude error from its neighbour.
struct Accelerated {
    double value;
    double error;
};

inline Accelerated wynn_epsilon(const std::vector<double>& s) {
    const std::size_t n = s.size();
    if (n < 3) return {s.empty() ? 0.0 : s.back(), std::numeric_limits<double>::infinity()};
    double best = s.back();
    double best_err = std::abs(s[n - 1] - s[n - 2]);
    // eps_m1 holds column k-2, eps_k column k-1; column -1 is all zeros
    std::vector<double> eps_m1(n + 1, 0.0);
    std::vector<double> eps_k(s.begin(), s.end());
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> next(n - k);
        bool broken = false;
        for (std::size_t i = 0; i + k < n; ++i) {
            const double d = eps_k[i + 1] - eps_k[i];
            if (d == 0.0) {
                broken = true;
                break;
            }
            next[i] = (k == 1 ? 0.0 : eps_m1[i + 1]) + 1.0 / d;
        }
        if (broken) break;
        if (k % 2 == 0 && next.size() >= 2) {
            const double v = next.back();
            const double e = std::abs(next[next.size() - 1] - next[next.size() - 2]);
            if (std::isfinite(v) && e < best_err) {
                best = v;
                best_err = e;
            }
        }
        eps_m1 = std::move(eps_k);
        eps_k = std::move(next);
    }
    return {best, best_err};
}

struct OscillatoryOptions {
    Tolerance piece{1e-15, 1e-12, 400};
    double tol = 1e-10;          // relative target on the sum
    std::size_t max_pieces = 4000;
    std::size_t window = 24;     // partial sums handed to Wynn
};

// Sums int over [a + m*P, a + (m+1)*P], m = 0, 1, ... until either the
// pieces underflow the target or the accelerated limit settles.
template <class F>
Result<double> half_period_sum(F f, double a, double period, const OscillatoryOptions& opt = {}) {
    Result<double> out;
    std::vector<double> partial;
    double sum = 0.0;
    double last_acc = std::numeric_limits<double>::quiet_NaN();
    int settled = 0;
    for (std::size_t m = 0; m < opt.max_pieces; ++m) {
        const double lo = a + static_cast<double>(m) * period;
        auto piece = integrate(f, lo, lo + period, opt.piece);
        out.evaluations += piece.evaluations;
        out.error += piece.error;
        sum += piece.value;
        partial.push_back(sum);
        const double scale = std::max(std::abs(sum), 1e-300);
        if (std::abs(piece.value) < 1e-3 * opt.tol * scale && m > 2) {
            out.value = sum;
            return out;
        }
        if (partial.size() >= 6) {
            const std::size_t w = std::min(opt.window, partial.size());
            std::vector<double> tail(partial.end() - static_cast<std::ptrdiff_t>(w), partial.end());
            auto acc = wynn_epsilon(tail);
            if (std::isfinite(last_acc) && std::abs(acc.value - last_acc) < opt.tol * std::abs(acc.value) &&
                acc.error < opt.tol * std::abs(acc.value)) {
                if (++settled >= 2) {
                    out.value = acc.value;
                    out.error += std::abs(acc.value - last_acc);
                    return out;
                }
            } else {
                settled = 0;
            }
            last_acc = acc.value;
        }
    }
    throw ConvergenceError("half-period summation did not settle", sum, std::abs(sum - last_acc), opt.tol);
}

}  // namespace optokerr::quad
