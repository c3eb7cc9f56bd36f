#pragma once

#include <cstddef>
#include <vector>

#include "optokerr/convolution.hpp"
#include "optokerr/greens.hpp"
#include "optokerr/spectra.hpp"

namespace optokerr {

struct EtaOptions {
    KernelNormalization normalization = KernelNormalization::printed;
    double grid_tol = 0.02;          // allowed relative change of eta(t_max) on the 2h probe
    bool check_grid = true;
    std::size_t probe_stride = 8;    // every 8th output time gets an error estimate
    bool bath_enabled = true;        // false: C_k replaced by zero
    unsigned threads = 1;
    double kernel_tol = 1e-8;
};

struct GridMeta {
    double h = 0.0;
    int refinement = 0;
    double greens_error = 0.0;
    double error_estimate = 0.0;   // max abs estimate over the probe times
    double halving_change = 0.0;   // |eta_h - eta_2h| / |eta_h| at the last even node
    std::vector<double> probe_times;
    std::vector<double> probe_errors;
};

struct EtaSeries {
    std::vector<double> times;
    std::vector<double> eta;
    std::vector<double> eta_unitary;
    std::vector<double> eta_bath;
    GridMeta grid_meta;
    BathSpectrum spec;
    double g0 = 1.0;
    CouplingConvention convention = CouplingConvention::two_over_pi;
    KernelNormalization normalization = KernelNormalization::printed;
};

// Closed system: g0^2 (t - sin t).
double eta_closed(double g0, double t);

// U(t_n) = int_0^{t_n} dt' int_0^{t'} dt'' [beta(t')alpha(t'') - alpha(t')beta(t'')],
// evaluated as int_0^t (beta A - alpha B) with A, B the running integrals.
std::vector<double> unitary_term(const std::vector<double>& G, double h);

// T(t_n) = int_0^{t_n} dt' int_0^{t'} dt'' W(t', t''), W built from C_k(a - b).
std::vector<double> bath_term(const std::vector<double>& G, const KernelMoments& moments);

// eta on the table grid, then picked out at `times` (empty: every node).
// Each requested time must sit on the grid. Throws GridTooCoarseError if the
// 2h probe moves eta(t_max) by more than grid_tol.
EtaSeries eta_series(const GreensTable& table, const BathSpectrum& spec, double g0,
                     const std::vector<double>& times = {}, const EtaOptions& opt = {});

}  // namespace optokerr
