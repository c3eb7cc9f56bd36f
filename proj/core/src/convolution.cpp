#include "optokerr/convolution.hpp"

#include <array>
#include <cmath>

#include "optokerr/errors.hpp"
#include "optokerr/parallel.hpp"
#include "optokerr/quadrature.hpp"

namespace optokerr {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

KernelMoments::KernelMoments(const std::function<double(double)>& f, double h, long first, long last, int pmax,
                             Parity parity, double scale, unsigned threads)
    : h_(h), first_(first), last_(last), pmax_(pmax) {
    if (!(h > 0.0)) throw DomainError("kernel moments: h must be positive");
    if (last <= first) throw DomainError("kernel moments: empty cell range");
    if (pmax < 0 || pmax > 3) throw DomainError("kernel moments: pmax must be in 0..3");
    mu_.setZero(last - first, pmax + 1);

    const quad::Tolerance tol{1e-15 * std::max(scale, 1e-300) * h, 1e-12, 1000};
    auto direct = [&](long j) {
        const double a = static_cast<double>(j) * h;
        auto g = [&](double v) {
            Eigen::Array4d out;
            const double phi = (v - a) / h;
            const double fv = f(v);
            out << fv, fv * phi, fv * phi * phi, fv * phi * phi * phi;
            return out;
        };
        auto r = quad::integrate(g, a, a + h, tol);
        for (int p = 0; p <= pmax; ++p) mu_(j - first, p) = r.value(p);
    };

    // positive cells first; negative ones either directly or by reflection
    const long pos_lo = std::max(first, 0L);
    if (pos_lo < last) {
        parallel_for(static_cast<std::size_t>(last - pos_lo), threads,
                     [&](std::size_t i) { direct(pos_lo + static_cast<long>(i)); });
    }
    if (first < 0) {
        const long neg_hi = std::min(last, 0L);
        if (parity == Parity::none) {
            parallel_for(static_cast<std::size_t>(neg_hi - first), threads,
                         [&](std::size_t i) { direct(first + static_cast<long>(i)); });
        } else {
            // cell -j-1 mirrors cell j with phi -> 1 - phi
            const double sgn = parity == Parity::even ? 1.0 : -1.0;
            for (long jn = first; jn < neg_hi; ++jn) {
                const long j = -jn - 1;
                if (j < pos_lo || j >= last) {
                    direct(jn);
                    continue;
                }
                for (int p = 0; p <= pmax; ++p) {
                    double acc = 0.0;
                    for (int q = 0; q <= p; ++q) {
                        acc += binom(p, q) * ((q % 2) ? -1.0 : 1.0) * mu_(j - first, q);
                    }
                    mu_(jn - first, p) = sgn * acc;
                }
            }
        }
    }
}

double KernelMoments::operator()(long j, int p) const {
    if (j < first_ || j >= last_ || p < 0 || p > pmax_) throw DomainError("kernel moment out of range");
    return mu_(j - first_, p);
}

KernelMoments KernelMoments::coarsened() const {
    KernelMoments c;
    c.h_ = 2.0 * h_;
    c.pmax_ = pmax_;
    // J needs both 2J and 2J+1 inside [first, last)
    c.first_ = static_cast<long>(std::ceil(first_ / 2.0));
    c.last_ = static_cast<long>(std::floor(last_ / 2.0));
    if (c.last_ <= c.first_) throw DomainError("kernel moments: too few cells to coarsen");
    c.mu_.setZero(c.last_ - c.first_, pmax_ + 1);
    for (long J = c.first_; J < c.last_; ++J) {
        for (int p = 0; p <= pmax_; ++p) {
            // phi_coarse = (phi_fine + s)/2 on fine cell 2J+s
            double acc = 0.0;
            for (int s = 0; s <= 1; ++s) {
                const long jf = 2 * J + s;
                for (int q = 0; q <= p; ++q) {
                    acc += binom(p, q) * std::pow(static_cast<double>(s), p - q) * mu_(jf - first_, q);
                }
            }
            c.mu_(J - c.first_, p) = acc / std::pow(2.0, p);
        }
    }
    return c;
}

namespace {

// Hat halves on the unit grid: L = 1 + x on [-1, 0], R = 1 - x on [0, 1].
// Lambda_XY(u) = int X(x) Y(x - u) dx (difference) or int X(x) Y(u - x) dx
// (sum) is cubic on each of the unit cells [m, m+1], m = -2..1.
// coeff[m + 2][p] multiplies (u - m)^p.
using Cubic4 = std::array<std::array<double, 4>, 4>;

constexpr double s6 = 1.0 / 6.0;
constexpr Cubic4 kMid{{{0, 0, 0, 0}, {0, 0, 0.5, -s6}, {1.0 / 3.0, -0.5, 0, s6}, {0, 0, 0, 0}}};
constexpr Cubic4 kLeft{{{0, 0, 0, s6}, {s6, 0.5, -0.5, -s6}, {0, 0, 0, 0}, {0, 0, 0, 0}}};
constexpr Cubic4 kRight{{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, -1, s6}, {s6, -0.5, 0.5, -s6}}};

struct HatTable {
    Cubic4 LL, LR, RL, RR;
};

constexpr HatTable kDiff{kMid, kLeft, kRight, kMid};
constexpr HatTable kSum{kLeft, kMid, kMid, kRight};

Cubic4 add(const Cubic4& a, const Cubic4& b) {
    Cubic4 r{};
    for (int m = 0; m < 4; ++m)
        for (int p = 0; p < 4; ++p) r[m][p] = a[m][p] + b[m][p];
    return r;
}

// int K(u + d h) Lambda(u) du
double apply(const Cubic4& lam, const KernelMoments& K, long d) {
    double acc = 0.0;
    for (int m = 0; m < 4; ++m) {
        const long cell = d + m - 2;
        for (int p = 0; p < 4; ++p) {
            if (lam[m][p] != 0.0) acc += lam[m][p] * K(cell, p);
        }
    }
    return K.h() * acc;
}

}  // namespace

Eigen::MatrixXd hat_weights(std::size_t n, const KernelMoments& K, KernelArgument arg) {
    if (K.pmax() < 3) throw DomainError("hat weights need cubic kernel moments");
    const HatTable& t = arg == KernelArgument::difference ? kDiff : kSum;
    const Cubic4 full = add(add(t.LL, t.LR), add(t.RL, t.RR));
    const Cubic4 half_a = add(t.RL, t.RR);  // a-hat cut at 0 (i = 0)
    const Cubic4 half_b = add(t.LR, t.RR);  // b-hat cut at 0 (l = 0)
    const Cubic4& both = t.RR;

    const long N = static_cast<long>(n);
    // weights depend on i -/+ l only; tabulate each family once
    const long lo = arg == KernelArgument::difference ? -(N - 1) : 0;
    const long hi = arg == KernelArgument::difference ? N - 1 : 2 * (N - 1);
    std::vector<double> wf(hi - lo + 1), wa(hi - lo + 1), wb(hi - lo + 1);
    for (long d = lo; d <= hi; ++d) {
        wf[d - lo] = apply(full, K, d);
        wa[d - lo] = apply(half_a, K, d);
        wb[d - lo] = apply(half_b, K, d);
    }
    Eigen::MatrixXd C(N, N);
    for (long i = 0; i < N; ++i) {
        for (long l = 0; l < N; ++l) {
            const long d = arg == KernelArgument::difference ? i - l : i + l;
            double w;
            if (i == 0 && l == 0) {
                w = apply(both, K, d);
            } else if (i == 0) {
                w = wa[d - lo];
            } else if (l == 0) {
                w = wb[d - lo];
            } else {
                w = wf[d - lo];
            }
            C(i, l) = w;
        }
    }
    return C;
}

Eigen::MatrixXd bath_correlation(const std::vector<double>& G, const KernelMoments& K, KernelArgument arg) {
    const std::size_t n = G.size();
    if (n < 2) throw DomainError("bath correlation needs at least two grid points");
    const Eigen::MatrixXd C = hat_weights(n, K, arg);
    // Gmat(p, i) = G_{p-i}, lower triangular Toeplitz
    Eigen::MatrixXd Gm = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t i = 0; i <= p; ++i) Gm(p, i) = G[p - i];
    const Eigen::MatrixXd D = C * Gm.transpose().triangularView<Eigen::Upper>();
    return Gm.triangularView<Eigen::Lower>() * D;
}

std::vector<double> triangle_integral(const Eigen::MatrixXd& W, double h) {
    const auto n = static_cast<std::size_t>(W.rows());
    std::vector<double> inner(n, 0.0), T(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double s = 0.5 * (W(i, 0) + W(i, i));
        for (std::size_t j = 1; j < i; ++j) s += W(i, j);
        inner[i] = h * s;
    }
    for (std::size_t i = 1; i < n; ++i) T[i] = T[i - 1] + 0.5 * h * (inner[i - 1] + inner[i]);
    return T;
}

KernelMoments sine_kernel_moments(const BathSpectrum& spec, KernelNormalization norm, double h, std::size_t n,
                                  unsigned threads, double kernel_tol) {
    spec.validate();
    auto C = [&](double t) { return kernel_C(spec, t, norm, kernel_tol); };
    // the kernel peaks near t ~ 1/Omega_C; sample around there for a scale
    double scale = 0.0;
    for (int i = 1; i <= 32; ++i) scale = std::max(scale, std::abs(C(i * 0.1 / spec.cutoff)));
    const long N = static_cast<long>(n);
    return KernelMoments(C, h, -(N + 4), 2 * N + 4, 3, Parity::odd, scale, threads);
}

}  // namespace optokerr
