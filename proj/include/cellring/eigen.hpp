#pragma once

#include <complex>
#include <vector>

#include "cellring/linalg.hpp"

namespace cellring {

/// Largest dimension accepted by the dense eigensolver.
inline constexpr std::size_t max_eigen_dimension = 1024;

/// Scales rows and columns by powers of two so that row and column norms are
/// comparable. Eigenvalues are unchanged; returns the balanced copy.
Matrix balance(Matrix a);

/// Reduces a square matrix to upper Hessenberg form by Householder similarity
/// transformations.
Matrix hessenberg(Matrix a);

/// All eigenvalues of a general real square matrix (balancing, Hessenberg
/// reduction, Francis double-shift QR). Complex pairs are returned adjacent,
/// positive imaginary part first. Throws NumericalFailure if an eigenvalue
/// fails to deflate within the iteration cap.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

/// max |lambda| over the spectrum.
double spectral_radius(const Matrix& a);

} // namespace cellring
