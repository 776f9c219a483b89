#pragma once

#include <cstddef>
#include <vector>

#include "monres/error.hpp"
#include "monres/rational.hpp"

namespace monres {

// Dense matrix over the rationals, row-major. Only what the strand-exactness
// checks need: construction, transpose, multiply, exact rank.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) {
        require(i < rows_ && j < cols_, "matrix: index out of range");
        return data_[i * cols_ + j];
    }
    const Rational& at(std::size_t i, std::size_t j) const {
        require(i < rows_ && j < cols_, "matrix: index out of range");
        return data_[i * cols_ + j];
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

inline DenseMatrix transpose(const DenseMatrix& m) {
    DenseMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
    return t;
}

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.rows(), "matrix multiply: dimension mismatch");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

// Exact rank by fraction-free (Bareiss) elimination on an integer copy of the
// matrix: each row is scaled by the lcm of its denominators (rank-preserving),
// then eliminated with full pivoting. The Bareiss update
//   a[i][j] <- (a[p][p]*a[i][j] - a[i][p]*a[p][j]) / prev_pivot
// keeps all intermediate entries integral. Pivots are chosen with minimal
// absolute value among nonzero candidates to limit entry growth.
inline std::size_t rank(const DenseMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Int scale = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            const Int d = denominator(m.at(i, j));
            scale = scale / boost::multiprecision::gcd(scale, d) * d;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const Rational v = m.at(i, j) * scale;
            a[i][j] = numerator(v);
        }
    }

    Int prev = 1;
    std::size_t step = 0;
    while (step < rows && step < cols) {
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = step; i < rows; ++i)
            for (std::size_t j = step; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                if (pi == rows || boost::multiprecision::abs(a[i][j]) <
                                      boost::multiprecision::abs(a[pi][pj])) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == rows) break; // trailing block is zero
        std::swap(a[step], a[pi]);
        if (pj != step)
            for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][step], a[i][pj]);

        for (std::size_t i = step + 1; i < rows; ++i) {
            for (std::size_t j = step + 1; j < cols; ++j)
                a[i][j] = (a[step][step] * a[i][j] - a[i][step] * a[step][j]) / prev;
            a[i][step] = 0;
        }
        prev = a[step][step];
        ++step;
    }
    return step;
}

} // namespace monres
