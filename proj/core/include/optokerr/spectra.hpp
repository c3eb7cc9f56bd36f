#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace optokerr {

// How sum_j kappa_j^2 relates to int sigma dOmega. The weight c multiplies
// every bath quantity (memory kernel, its Laplace transform, the bath parts
// of F_a and eta, and the discrete couplings) so both pipelines agree.
enum class CouplingConvention { two_over_pi, unit };

double coupling_weight(CouplingConvention c);
std::string to_string(CouplingConvention c);
CouplingConvention parse_convention(std::string_view s);

// printed: C_k(t) = (1/Omega_C) int sigma(Omega) sin(Omega t) dOmega, which is
// what the published closed forms evaluate to. spectral: the integral itself.
// Identical at Omega_C = 1.
enum class KernelNormalization { printed, spectral };

std::string to_string(KernelNormalization n);
KernelNormalization parse_normalization(std::string_view s);

struct BathSpectrum {
    double k = 1.0;
    double gamma = 0.0;
    double cutoff = 1.0;

    static BathSpectrum subohmic(double gamma, double cutoff) { return {0.5, gamma, cutoff}; }
    static BathSpectrum ohmic(double gamma, double cutoff) { return {1.0, gamma, cutoff}; }
    static BathSpectrum superohmic(double gamma, double cutoff) { return {2.0, gamma, cutoff}; }

    // Throws DomainError on k <= 0, gamma < 0, cutoff <= 0 or non-finite input.
    void validate() const;
    // k is exactly 1/2, 1 or 2, so closed forms apply.
    bool is_preset() const;
};

struct KernelSample {
    double t;
    double value;
};

// gamma*Omega*(Omega/Omega_C)^(k-1)*exp(-Omega/Omega_C)
double spectral_density(const BathSpectrum& spec, double omega);

// Sine kernel. Presets use closed forms, anything else the oscillatory
// quadrature below. Odd in t.
double kernel_C(const BathSpectrum& spec, double t,
                KernelNormalization norm = KernelNormalization::printed, double tol = 1e-8);
double kernel_C_quadrature(const BathSpectrum& spec, double t,
                           KernelNormalization norm = KernelNormalization::printed, double tol = 1e-8);
std::vector<KernelSample> sample_kernel_C(const BathSpectrum& spec, const std::vector<double>& times,
                                          KernelNormalization norm = KernelNormalization::printed);

// Sigma(t) = c * int sigma(Omega) cos(Omega t)/Omega dOmega. Even in t.
double memory_kernel(const BathSpectrum& spec, double t, CouplingConvention conv, double tol = 1e-8);
double memory_kernel_quadrature(const BathSpectrum& spec, double t, CouplingConvention conv,
                                double tol = 1e-8);

// c * int sigma(Omega)/Omega * s/(Omega^2 + s^2) dOmega.
double laplace_kernel(const BathSpectrum& spec, double s, CouplingConvention conv,
                      double rel_tol = 1e-10);
std::complex<double> laplace_kernel(const BathSpectrum& spec, std::complex<double> s,
                                    CouplingConvention conv, double rel_tol = 1e-10);

}  // namespace optokerr
