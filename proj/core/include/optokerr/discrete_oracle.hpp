#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "optokerr/coefficients.hpp"
#include "optokerr/greens.hpp"
#include "optokerr/nonlinearity.hpp"
#include "optokerr/spectra.hpp"

namespace optokerr {

// cell_moment: kappa_j^2/Omega_j = c int_cell sigma/Omega, so the discrete
// memory kernel at t = 0 is exact per cell. midpoint: kappa_j^2 =
// c sigma(Omega_j) dOmega, which converges slowly for k < 1.
enum class ModeWeights { cell_moment, midpoint };

std::string to_string(ModeWeights w);
ModeWeights parse_mode_weights(std::string_view s);

struct DiscreteBath {
    std::size_t N = 0;
    std::vector<double> omegas;
    std::vector<double> kappas;
    double omega_max = 0.0;
    CouplingConvention convention = CouplingConvention::two_over_pi;
    ModeWeights weights = ModeWeights::cell_moment;
    BathSpectrum spec;

    // sum_j kappa_j^2/Omega_j cos(Omega_j t)
    double memory_kernel(double t) const;
};

// Omega_j = (j - 1/2) dOmega, dOmega = omega_max/N.
DiscreteBath discretize_bath(const BathSpectrum& spec, std::size_t N, double omega_max, CouplingConvention conv,
                             ModeWeights weights = ModeWeights::cell_moment);

// What the cut at omega_max throws away.
struct TruncationReport {
    double omega_max = 0.0;
    double sigma0_continuum = 0.0;  // Sigma(0)
    double sigma0_discrete = 0.0;   // sum kappa^2/Omega
    double missing_fraction = 0.0;  // 1 - discrete/continuum
};

TruncationReport truncation_report(const DiscreteBath& bath);

struct OracleOptions {
    double instability_bound = 1e3;
    double max_phase_step = 0.2;  // substep so that Omega_max * h_d <= this
    unsigned threads = 1;
};

// G for the slip-free memory equation with the discrete kernel. Each mode
// carries the pair (y_j, z_j) = int v(t') (cos, sin)(Omega_j (t - t')) dt',
// which turns the memory into an ODE; integrated with classical RK4.
std::vector<double> oracle_greens(const DiscreteBath& bath, double t_max, double h, const OracleOptions& opt = {});

// Coefficients at grid time t from a discrete-bath table (make_table on the
// oracle G). Fills F_jX, F_jP, K_j.
CoefficientSet oracle_F(const DiscreteBath& bath, const GreensTable& table_d, double g0, double t,
                        const OracleOptions& opt = {});

// eta = |F_a + F_X F_P/2 + sum_j F_jX F_jP/2| on the grid, split into the
// mechanical part and the sum over modes.
EtaSeries oracle_eta(const DiscreteBath& bath, double g0, double t_max, double h,
                     const std::vector<double>& times = {}, const OracleOptions& opt = {});

// Raw coupled equations for (X_m, P_m, X_j, P_j), small N only; returns
// exp(A t) for each t.
struct FundamentalSolution {
    std::vector<double> times;
    std::vector<Eigen::MatrixXd> transitions;
};

FundamentalSolution raw_fundamental_solution(const DiscreteBath& bath, const std::vector<double>& times);

}  // namespace optokerr
