#pragma once

// Product integration shared by the Volterra solver and the nested bath
// integrals. Tabulated functions are treated as piecewise linear between grid
// nodes; the kernel is never sampled, only integrated cell by cell against
// low powers of the local coordinate.

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "optokerr/spectra.hpp"

namespace optokerr {

enum class Parity { none, even, odd };

// mu_p(j) = int_{jh}^{(j+1)h} f(v) ((v - jh)/h)^p dv for cells j in
// [first, last), p = 0..pmax. With a parity the negative cells come from
// reflection of the positive ones.
class KernelMoments {
public:
    KernelMoments() = default;
    KernelMoments(const std::function<double(double)>& f, double h, long first, long last, int pmax,
                  Parity parity, double scale, unsigned threads = 1);

    double h() const noexcept { return h_; }
    long first() const noexcept { return first_; }
    long last() const noexcept { return last_; }
    int pmax() const noexcept { return pmax_; }
    double operator()(long j, int p) const;

    // Same moments on the grid of step 2h (cells 2J and 2J+1 merged).
    KernelMoments coarsened() const;

private:
    double h_ = 0.0;
    long first_ = 0;
    long last_ = 0;
    int pmax_ = 0;
    Eigen::ArrayXXd mu_;  // (last - first) x (pmax + 1)
};

enum class KernelArgument { difference, sum };

// W(t_n, t_m) = int_0^{t_n} da int_0^{t_m} db G(t_n - a) G(t_m - b) K(a -/+ b)
// with G linear between nodes and G(0) = 0. Needs cubic moments of K covering
// cells [-(N+1), N+1) for differences and [-2, 2N) for sums.
Eigen::MatrixXd bath_correlation(const std::vector<double>& G, const KernelMoments& K, KernelArgument arg);

// Weights Ceff(i, l) = int int phi_i(a) phi_l(b) K(a -/+ b) da db for the
// hat basis restricted to [0, inf). Exposed for tests.
Eigen::MatrixXd hat_weights(std::size_t n, const KernelMoments& K, KernelArgument arg);

// T(t_n) = int_0^{t_n} dt' int_0^{t'} dt'' W(t', t''), trapezoid in both.
std::vector<double> triangle_integral(const Eigen::MatrixXd& W, double h);

// Cubic moments of C_k on step h covering everything an n-point grid needs
// for both kernel arguments, with slack so coarsened() still covers n/2 + 1.
KernelMoments sine_kernel_moments(const BathSpectrum& spec, KernelNormalization norm, double h, std::size_t n,
                                  unsigned threads = 1, double kernel_tol = 1e-8);

}  // namespace optokerr
