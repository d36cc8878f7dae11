#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace crnepi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<long long, Eigen::Dynamic, 1>;
using Complexd = std::complex<double>;

inline constexpr int kMaxDenseDim = 20;

// Sorted by real part descending, then imaginary part descending.
std::vector<Complexd> eigenvalues(const Mat& m);
double spectral_radius(const Mat& m);
double max_real_part(const std::vector<Complexd>& ev);

// e^{tM}; Pade-13 scaling and squaring.
Mat expm(const Mat& m, double t = 1.0);

// Monic characteristic polynomial, highest degree first (Faddeev-LeVerrier).
std::vector<double> charpoly(const Mat& m);

// Roots of a real polynomial given highest degree first.
std::vector<Complexd> poly_roots(const std::vector<double>& coeffs);

// Numerical rank by column-pivoted QR, relative threshold.
int numeric_rank(const Mat& m, double rel_tol = 1e-10);

// Orthonormal basis of the column space (n x rank).
Mat orthonormal_column_basis(const Mat& m, double rel_tol = 1e-10);

}  // namespace crnepi
