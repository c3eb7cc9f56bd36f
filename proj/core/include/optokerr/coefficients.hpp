#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "optokerr/greens.hpp"
#include "optokerr/spectra.hpp"

namespace optokerr {

struct CoefficientSet {
    double t = 0.0;
    double g0 = 1.0;
    double F_a = 0.0;
    double F_X = 0.0;
    double F_P = 0.0;
    std::complex<double> K_m;
    // discrete bath only
    std::vector<double> F_jX;
    std::vector<double> F_jP;
    std::vector<std::complex<double>> K_j;
};

// (F_P - i F_X)/sqrt(2)
std::complex<double> displacement(double F_X, double F_P);

// F_X = -sqrt(2) g0 int alpha, F_P = -sqrt(2) g0 int beta, on the table grid.
std::pair<std::vector<double>, std::vector<double>> compute_FXP(const GreensTable& table, double g0);

struct FaOptions {
    // the defining integral uses sigma itself, hence spectral
    KernelNormalization normalization = KernelNormalization::spectral;
    unsigned threads = 1;
    double kernel_tol = 1e-8;
};

// F_a = -2 g0^2 [ int beta A + c int dOmega sigma int beta_bar int alpha_bar ].
// The Omega integral is folded into the kernel: beta_bar(t')alpha_bar(t'')
// averaged against sigma gives (C(a + b) + C(a - b))/2.
std::vector<double> compute_Fa(const GreensTable& table, const BathSpectrum& spec, double g0,
                               const FaOptions& opt = {});

// Everything at once, one entry per grid node.
std::vector<CoefficientSet> coefficient_series(const GreensTable& table, const BathSpectrum& spec, double g0,
                                               const FaOptions& opt = {});

}  // namespace optokerr
