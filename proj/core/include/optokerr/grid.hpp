#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace optokerr {

// t_n = n*h, n = 0..N-1, with N-1 = round(t_max/h). Throws DomainError if
// t_max is not (close to) a multiple of h.
std::size_t grid_points(double t_max, double h);

// Running integral F_n = int_0^{t_n} f on a uniform grid. Each cell uses a
// 6-point Lagrange interpolant centred on it (shifted at the ends), so the
// result is O(h^6) locally. Falls back to trapezoid below six samples.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

std::vector<double> cumulative_trapezoid(const std::vector<double>& f, double h);

// Z_n = int_0^{t_n} g(u) exp(i*omega*(t_n - u)) du for g linear between
// nodes (Filon). Re Z and Im Z are the cosine and sine convolutions.
std::vector<std::complex<double>> filon_convolution(const std::vector<double>& g, double h, double omega);

}  // namespace optokerr
