#pragma once

#include <complex>
#include <vector>

namespace oracle {

// Roots of prod(lambda - d_i) - prod(e_i), from the eigenvalues of a companion
// matrix in the scaled Newton basis {1, (l-d_1)/g, (l-d_1)(l-d_2)/g^2, ...}
// with g = |prod e_i|^(1/N). Unlike the monomial companion this stays well
// conditioned for N in the hundreds.
std::vector<std::complex<double>> dez_roots_newton(const std::vector<double>& d, const std::vector<double>& e);

// Same roots through the monomial coefficients and Eigen's polynomial solver.
// Only trustworthy for small N.
std::vector<std::complex<double>> dez_roots_monomial(const std::vector<double>& d, const std::vector<double>& e);

// Eigenvalues of a dense row-major matrix with Eigen.
std::vector<std::complex<double>> eigen_reference(const std::vector<double>& a, std::size_t n);

// |z| sorted descending.
std::vector<double> sorted_magnitudes(const std::vector<std::complex<double>>& z);

} // namespace oracle
