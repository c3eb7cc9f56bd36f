#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "optokerr/spectra.hpp"

namespace optokerr {

struct GreensOptions {
    CouplingConvention convention = CouplingConvention::two_over_pi;
    double instability_bound = 1e3;
    int max_refinements = 4;
    double kernel_tol = 1e-8;  // only used by the general-k kernel fallback
    unsigned threads = 1;
};

// G(t) on t_n = n*h with G(0) = 0, G'(0) = 1; alpha = 1 - int G, beta = G.
struct GreensTable {
    double t_max = 0.0;
    double h = 0.0;
    std::vector<double> g_values;
    std::vector<double> g_cumint;
    std::vector<double> alpha;
    std::vector<double> beta;
    BathSpectrum spec;
    CouplingConvention convention = CouplingConvention::two_over_pi;
    double tol = 0.0;             // requested
    double error_estimate = 0.0;  // achieved, max over the grid
    int refinement = 0;           // extra halvings of the internal step

    std::size_t size() const noexcept { return g_values.size(); }
    double time(std::size_t n) const noexcept { return static_cast<double>(n) * h; }
};

// Solves G'' + G + int_0^t Sigma(t - t') G'(t') dt' = 0.
// Trapezoid in time, memory term by product integration against exact cell
// moments of Sigma, Richardson over three internal step sizes. Throws
// ConvergenceError if the estimate stays above tol after max_refinements,
// InstabilityError if |G| passes the bound.
GreensTable solve_greens(const BathSpectrum& spec, double t_max, double h, double tol = 1e-6,
                         const GreensOptions& opt = {});

// Builds a table from an externally computed G (e.g. the discrete bath).
GreensTable make_table(std::vector<double> g, double h, const BathSpectrum& spec, CouplingConvention conv);

// s -> g(s) = 1/(s^2 + 1 + s*SigmaTilde(s))
class LaplaceResponse {
public:
    using Fn = std::function<std::complex<double>(std::complex<double>)>;

    explicit LaplaceResponse(Fn fn) : fn_(std::move(fn)) {}
    static LaplaceResponse from_spectrum(const BathSpectrum& spec, CouplingConvention conv,
                                         double rel_tol = 1e-11);

    std::complex<double> operator()(std::complex<double> s) const { return fn_(s); }

private:
    Fn fn_;
};

struct InversionOptions {
    int terms = 20;        // de Hoog M; 2M+1 samples of g
    int check_terms = 30;  // second run used for the error estimate
    double shift_tol = 1e-12;  // sets the Bromwich abscissa
};

// de Hoog-Knight-Stokes inversion along Re s = const with a quotient-
// difference continued fraction. Throws ConvergenceError carrying the best
// value and the estimated error when the two term counts disagree by more
// than accuracy.
double invert_laplace(const LaplaceResponse& resp, double t, double accuracy = 1e-8,
                      const InversionOptions& opt = {});

// alpha_bar(Omega, t_n) = int_0^{t_n} G(t_n - t') cos(Omega t') dt' and the
// sine counterpart, exact for G linear between nodes.
std::pair<std::vector<double>, std::vector<double>> convolve_bath_coeffs(const GreensTable& table, double omega);

// Columns t, G, alpha, beta.
void write_greens_csv(const GreensTable& table, std::ostream& out);

}  // namespace optokerr
