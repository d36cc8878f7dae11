#include "crnepi/exact.hpp"

#include <algorithm>

#include <boost/integer/common_factor_rt.hpp>

#include "crnepi/errors.hpp"

namespace crnepi {

namespace mp = boost::multiprecision;

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(const IMat& m)
    : RationalMatrix(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = Rational(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

namespace {

using BigMat = std::vector<std::vector<BigInt>>;

std::size_t bareiss_rank(BigMat a) {
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = rows;
        BigInt best = 0;
        for (std::size_t i = r; i < rows; ++i) {
            BigInt v = mp::abs(a[i][c]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

BigInt lcm_big(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return a == 0 ? b : a;
    return mp::abs(a / boost::integer::gcd(a, b) * b);
}

IntRow primitive_rational(const std::vector<Rational>& v) {
    BigInt den = 1;
    for (const auto& x : v) den = lcm_big(den, mp::denominator(x));
    std::vector<BigInt> ints;
    ints.reserve(v.size());
    for (const auto& x : v) ints.push_back(mp::numerator(x) * (den / mp::denominator(x)));
    return primitive(ints);
}

std::vector<IntRow> nullspace_of(RationalMatrix a) {
    const std::size_t n = a.cols();
    std::vector<std::size_t> piv = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (auto p : piv) is_pivot[p] = true;

    RationalMatrix basis(n - piv.size(), n);
    std::size_t k = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        basis(k, f) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) basis(k, piv[i]) = -a(i, f);
        ++k;
    }
    rref(basis);
    std::vector<IntRow> out;
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        std::vector<Rational> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = basis(i, j);
        out.push_back(primitive_rational(row));
    }
    return out;
}

}  // namespace

IntRow primitive(const std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& x : v) g = boost::integer::gcd(g, mp::abs(x));
    IntRow out(v.size(), 0);
    if (g == 0) return out;
    int sign = 1;
    for (const auto& x : v) {
        if (x != 0) {
            sign = x < 0 ? -1 : 1;
            break;
        }
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        BigInt q = v[i] / g * sign;
        if (mp::abs(q) > BigInt(std::numeric_limits<long long>::max()))
            fail(ErrorCode::DimensionTooLarge, "null-space entry exceeds 64-bit range");
        out[i] = q.convert_to<long long>();
    }
    return out;
}

std::size_t exact_rank(const RationalMatrix& m) {
    BigMat a(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt den = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) den = lcm_big(den, mp::denominator(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j)
            a[i][j] = mp::numerator(m(i, j)) * (den / mp::denominator(m(i, j)));
    }
    return bareiss_rank(std::move(a));
}

std::size_t exact_rank(const IMat& m) {
    BigMat a(static_cast<std::size_t>(m.rows()), std::vector<BigInt>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = BigInt(m(i, j));
    return bareiss_rank(std::move(a));
}

std::vector<std::size_t> rref(RationalMatrix& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = m.rows();
        Rational best = 0;
        for (std::size_t i = r; i < m.rows(); ++i) {
            Rational v = mp::abs(m(i, c));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::vector<IntRow> integer_left_nullspace(const IMat& m) {
    return nullspace_of(RationalMatrix(m).transpose());
}

std::vector<IntRow> integer_right_nullspace(const IMat& m) {
    return nullspace_of(RationalMatrix(m));
}

}  // namespace crnepi
