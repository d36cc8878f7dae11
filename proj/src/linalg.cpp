#include "crnepi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "crnepi/errors.hpp"

namespace crnepi {

namespace {

void check_square(const Mat& m, const char* what) {
    if (m.rows() != m.cols())
        fail(ErrorCode::DimensionMismatch, std::string(what) + ": matrix not square");
    if (m.rows() > kMaxDenseDim)
        fail(ErrorCode::DimensionTooLarge,
             std::string(what) + ": dimension " + std::to_string(m.rows()) + " exceeds 20");
}

}  // namespace

std::vector<Complexd> eigenvalues(const Mat& m) {
    check_square(m, "eigenvalues");
    std::vector<Complexd> out;
    if (m.rows() == 0) return out;
    Eigen::EigenSolver<Mat> es(m, false);
    if (es.info() != Eigen::Success) fail(ErrorCode::NoConvergence, "eigenvalue iteration failed");
    const auto& ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) out.push_back(ev[i]);
    std::sort(out.begin(), out.end(), [](const Complexd& a, const Complexd& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return out;
}

double spectral_radius(const Mat& m) {
    double r = 0.0;
    for (const auto& z : eigenvalues(m)) r = std::max(r, std::abs(z));
    return r;
}

double max_real_part(const std::vector<Complexd>& ev) {
    double r = -std::numeric_limits<double>::infinity();
    for (const auto& z : ev) r = std::max(r, z.real());
    return r;
}

Mat expm(const Mat& m, double t) {
    check_square(m, "expm");
    if (m.rows() == 0) return m;
    Mat scaled = m * t;
    return scaled.exp();
}

std::vector<double> charpoly(const Mat& m) {
    check_square(m, "charpoly");
    const Eigen::Index n = m.rows();
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    c[0] = 1.0;
    Mat mk = Mat::Zero(n, n);
    Mat id = Mat::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        mk = m * mk + c[static_cast<std::size_t>(k - 1)] * id;
        // c_k = -tr(M M_k) / k
        c[static_cast<std::size_t>(k)] = -(m * mk).trace() / static_cast<double>(k);
    }
    return c;
}

std::vector<Complexd> poly_roots(const std::vector<double>& coeffs) {
    std::size_t first = 0;
    while (first < coeffs.size() && coeffs[first] == 0.0) ++first;
    if (coeffs.size() - first <= 1) return {};
    const std::size_t deg = coeffs.size() - first - 1;
    Mat comp = Mat::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t j = 0; j < deg; ++j)
        comp(0, static_cast<Eigen::Index>(j)) = -coeffs[first + 1 + j] / coeffs[first];
    for (std::size_t i = 1; i < deg; ++i)
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    return eigenvalues(comp);
}

int numeric_rank(const Mat& m, double rel_tol) {
    if (m.size() == 0) return 0;
    Eigen::ColPivHouseholderQR<Mat> qr(m);
    qr.setThreshold(rel_tol);
    return static_cast<int>(qr.rank());
}

Mat orthonormal_column_basis(const Mat& m, double rel_tol) {
    if (m.size() == 0) return Mat(m.rows(), 0);
    Eigen::ColPivHouseholderQR<Mat> qr(m);
    qr.setThreshold(rel_tol);
    const Eigen::Index r = qr.rank();
    Mat q = qr.householderQ();
    return q.leftCols(r);
}

}  // namespace crnepi
