#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "crnepi/linalg.hpp"

namespace crnepi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    explicit RationalMatrix(const IMat& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    RationalMatrix transpose() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

using IntRow = std::vector<long long>;

std::size_t exact_rank(const RationalMatrix& m);
std::size_t exact_rank(const IMat& m);

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m);

// Rows v with v*M = 0, coprime integers, leading entry positive, echelon order.
std::vector<IntRow> integer_left_nullspace(const IMat& m);
// Columns v with M*v = 0, same normalization.
std::vector<IntRow> integer_right_nullspace(const IMat& m);

// Divide by gcd and make the first nonzero entry positive.
IntRow primitive(const std::vector<BigInt>& v);

}  // namespace crnepi
