#include "optokerr/spectra.hpp"

#include <cmath>
#include <numbers>

#include "optokerr/errors.hpp"
#include "optokerr/quadrature.hpp"

namespace optokerr {

double coupling_weight(CouplingConvention c) {
    return c == CouplingConvention::two_over_pi ? 2.0 / std::numbers::pi : 1.0;
}

std::string to_string(CouplingConvention c) {
    return c == CouplingConvention::two_over_pi ? "two-over-pi" : "unit";
}

CouplingConvention parse_convention(std::string_view s) {
    if (s == "two-over-pi" || s == "two_over_pi") return CouplingConvention::two_over_pi;
    if (s == "unit") return CouplingConvention::unit;
    throw DomainError("unknown coupling convention '" + std::string(s) + "' (two-over-pi|unit)");
}

std::string to_string(KernelNormalization n) {
    return n == KernelNormalization::printed ? "printed" : "spectral";
}

KernelNormalization parse_normalization(std::string_view s) {
    if (s == "printed") return KernelNormalization::printed;
    if (s == "spectral") return KernelNormalization::spectral;
    throw DomainError("unknown kernel normalization '" + std::string(s) + "' (printed|spectral)");
}

void BathSpectrum::validate() const {
    if (!std::isfinite(k) || !(k > 0.0)) throw DomainError("spectral exponent k must be positive");
    if (!std::isfinite(gamma) || gamma < 0.0) throw DomainError("gamma must be non-negative");
    if (!std::isfinite(cutoff) || !(cutoff > 0.0)) throw DomainError("cutoff must be positive");
}

bool BathSpectrum::is_preset() const { return k == 0.5 || k == 1.0 || k == 2.0; }

double spectral_density(const BathSpectrum& spec, double omega) {
    spec.validate();
    if (!(omega >= 0.0)) throw DomainError("spectral_density: omega must be non-negative");
    if (omega == 0.0) return 0.0;
    const double u = omega / spec.cutoff;
    return spec.gamma * omega * std::pow(u, spec.k - 1.0) * std::exp(-u);
}

namespace {

// int_0^inf u^p e^{-u} trig(u x) du for p > -1, trig = sin or cos.
// Near u = 0 the substitution u = w^(1/(p+1)) removes the power (needed for
// p < 0); past that we sum half periods of the trig factor.
template <class Trig>
double damped_transform(double p, double x, Trig trig, double tol) {
    const double e = p + 1.0;
    auto tail = [&](double u) { return std::pow(u, p) * std::exp(-u) * trig(u * x); };
    auto head = [&](double w) {
        const double u = std::pow(w, 1.0 / e);
        return std::exp(-u) * trig(u * x) / e;
    };
    // At large x the pieces cancel down to ~x^-(p+1), so the absolute target
    // follows the envelope of the result, not the size of the pieces.
    const double envelope = std::tgamma(e) * std::pow(1.0 + x * x, -0.5 * e);
    const quad::Tolerance qt{1e-3 * tol * envelope, std::min(0.1 * tol, 1e-14), 2000};
    if (x < 0.5) {
        // fewer than ~one oscillation inside the decay length
        const double b = 1.0;
        auto h = quad::integrate(head, 0.0, std::pow(b, e), qt);
        auto t = quad::integrate_to_infinity(tail, b, qt);
        return h.value + t.value;
    }
    const double period = std::numbers::pi / x;
    auto h = quad::integrate(head, 0.0, std::pow(period, e), qt);
    quad::OscillatoryOptions opt;
    opt.tol = 0.1 * tol;
    opt.piece = qt;
    auto rest = quad::half_period_sum(tail, period, period, opt);
    return h.value + rest.value;
}

double c_spectral_closed(const BathSpectrum& s, double t) {
    const double x = t * s.cutoff;
    const double oc2 = s.cutoff * s.cutoff;
    const double q = 1.0 + x * x;
    if (s.k == 1.0) return 2.0 * s.gamma * x * oc2 / (q * q);
    if (s.k == 2.0) return -2.0 * s.gamma * x * oc2 * (x * x - 3.0) / (q * q * q);
    // k = 1/2, Gamma(3/2) = sqrt(pi)/2
    return 0.5 * std::sqrt(std::numbers::pi) * s.gamma * oc2 * std::pow(q, -0.75) * std::sin(1.5 * std::atan(x));
}

double sigma_closed(const BathSpectrum& s, double t) {
    const double x = t * s.cutoff;
    const double q = 1.0 + x * x;
    if (s.k == 1.0) return s.gamma * s.cutoff / q;
    if (s.k == 2.0) return s.gamma * s.cutoff * (1.0 - x * x) / (q * q);
    return std::sqrt(std::numbers::pi) * s.gamma * s.cutoff * std::pow(q, -0.25) * std::cos(0.5 * std::atan(x));
}

double normalise(const BathSpectrum& s, double spectral, KernelNormalization n) {
    return n == KernelNormalization::printed ? spectral / s.cutoff : spectral;
}

}  // namespace

double kernel_C(const BathSpectrum& spec, double t, KernelNormalization norm, double tol) {
    spec.validate();
    if (!std::isfinite(t)) throw DomainError("kernel_C: t must be finite");
    if (!spec.is_preset()) return kernel_C_quadrature(spec, t, norm, tol);
    if (spec.gamma == 0.0 || t == 0.0) return 0.0;
    return normalise(spec, c_spectral_closed(spec, t), norm);
}

double kernel_C_quadrature(const BathSpectrum& spec, double t, KernelNormalization norm, double tol) {
    spec.validate();
    if (!std::isfinite(t)) throw DomainError("kernel_C: t must be finite");
    if (spec.gamma == 0.0 || t == 0.0) return 0.0;
    const double x = std::abs(t) * spec.cutoff;
    const double sgn = t < 0.0 ? -1.0 : 1.0;
    // sigma dOmega = gamma*Omega_C^2 u^k e^{-u} du
    const double integral =
        damped_transform(spec.k, x, [](double v) { return std::sin(v); }, tol);
    return sgn * normalise(spec, spec.gamma * spec.cutoff * spec.cutoff * integral, norm);
}

std::vector<KernelSample> sample_kernel_C(const BathSpectrum& spec, const std::vector<double>& times,
                                          KernelNormalization norm) {
    std::vector<KernelSample> out;
    out.reserve(times.size());
    for (double t : times) out.push_back({t, kernel_C(spec, t, norm)});
    return out;
}

double memory_kernel(const BathSpectrum& spec, double t, CouplingConvention conv, double tol) {
    spec.validate();
    if (!spec.is_preset()) return memory_kernel_quadrature(spec, t, conv, tol);
    if (spec.gamma == 0.0) return 0.0;
    return coupling_weight(conv) * sigma_closed(spec, t);
}

double memory_kernel_quadrature(const BathSpectrum& spec, double t, CouplingConvention conv, double tol) {
    spec.validate();
    if (!std::isfinite(t)) throw DomainError("memory_kernel: t must be finite");
    if (spec.gamma == 0.0) return 0.0;
    const double x = std::abs(t) * spec.cutoff;
    // sigma/Omega dOmega = gamma*Omega_C u^(k-1) e^{-u} du
    const double integral =
        damped_transform(spec.k - 1.0, x, [](double v) { return std::cos(v); }, tol);
    return coupling_weight(conv) * spec.gamma * spec.cutoff * integral;
}

namespace {

template <class S>
S laplace_integral(const BathSpectrum& spec, S s, double rel_tol) {
    const double oc = spec.cutoff;
    const double p = spec.k - 1.0;
    const double e = spec.k;
    auto f = [&](double u) -> S { return std::pow(u, p) * std::exp(-u) * s / (oc * oc * u * u + s * s); };
    // u^(k-1) du = dw/k with u = w^(1/k)
    auto fw = [&](double w) -> S {
        const double u = std::pow(w, 1.0 / e);
        return std::exp(-u) * s / (oc * oc * u * u + s * s) / e;
    };
    quad::Tolerance qt{0.0, 0.2 * rel_tol, 4000};
    const double b1 = std::abs(std::imag(std::complex<double>(s))) / oc;
    const double b2 = std::abs(s) / oc;
    S total{};
    // the Lorentzian-like factor peaks near u = |Im s|/Omega_C and changes
    // scale at |s|/Omega_C; both become breakpoints
    double lo = 0.0;
    bool first = true;
    for (double b : {b1, b2}) {
        if (!(b > lo)) continue;
        total += first ? quad::integrate(fw, 0.0, std::pow(b, e), qt).value : quad::integrate(f, lo, b, qt).value;
        first = false;
        lo = b;
    }
    if (first) {
        total += quad::integrate(fw, 0.0, 1.0, qt).value;
        lo = 1.0;
    }
    total += quad::integrate_to_infinity(f, lo, qt).value;
    return total;
}

}  // namespace

double laplace_kernel(const BathSpectrum& spec, double s, CouplingConvention conv, double rel_tol) {
    spec.validate();
    if (!(s > 0.0)) throw DomainError("laplace_kernel: s must be positive on the real axis");
    if (spec.gamma == 0.0) return 0.0;
    return coupling_weight(conv) * spec.gamma * spec.cutoff * laplace_integral(spec, s, rel_tol);
}

std::complex<double> laplace_kernel(const BathSpectrum& spec, std::complex<double> s, CouplingConvention conv,
                                    double rel_tol) {
    spec.validate();
    if (!(s.real() > 0.0)) throw DomainError("laplace_kernel: Re(s) must be positive");
    if (spec.gamma == 0.0) return {0.0, 0.0};
    return coupling_weight(conv) * spec.gamma * spec.cutoff * laplace_integral(spec, s, rel_tol);
}

}  // namespace optokerr
