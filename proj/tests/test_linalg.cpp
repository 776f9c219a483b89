#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "monres/matrix.hpp"

using namespace monres;

namespace {

// Rank oracle: plain Gaussian elimination over the rationals, partial
// pivoting on the first nonzero entry. Independent of the Bareiss path.
std::size_t gauss_rank(DenseMatrix m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = m.rows();
        for (std::size_t i = rank; i < m.rows(); ++i)
            if (m.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(rank, j), m.at(pivot, j));
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            if (m.at(i, col) == 0) continue;
            Rational f = m.at(i, col) / m.at(rank, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            int num = static_cast<int>(rng() % 11) - 5;
            int den = 1 + static_cast<int>(rng() % 4);
            m.at(i, j) = Rational(num, den);
        }
    return m;
}

} // namespace

TEST_CASE("rank of fixed matrices") {
    DenseMatrix z(3, 4);
    CHECK(rank(z) == 0);

    DenseMatrix id(3, 3);
    for (std::size_t i = 0; i < 3; ++i) id.at(i, i) = 1;
    CHECK(rank(id) == 3);

    // rank-1 outer product (1,2,3)^T (1,1,1)
    DenseMatrix outer(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) outer.at(i, j) = int(i) + 1;
    CHECK(rank(outer) == 1);

    // third row = first + second
    DenseMatrix dep(3, 3);
    int vals[2][3] = {{1, 2, 3}, {4, 5, 6}};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) dep.at(i, j) = vals[i][j];
    for (std::size_t j = 0; j < 3; ++j) dep.at(2, j) = dep.at(0, j) + dep.at(1, j);
    CHECK(rank(dep) == 2);

    CHECK(rank(DenseMatrix(0, 5)) == 0);
    CHECK(rank(DenseMatrix(5, 0)) == 0);

    DenseMatrix frac(2, 2);
    frac.at(0, 0) = Rational(1, 2);
    frac.at(0, 1) = Rational(1, 3);
    frac.at(1, 0) = Rational(3, 2);
    frac.at(1, 1) = 1;
    CHECK(rank(frac) == 1);
}

TEST_CASE("rank agrees with Gaussian elimination oracle") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        DenseMatrix m = random_matrix(rng, rows, cols);
        CAPTURE(trial, rows, cols);
        std::size_t r = rank(m);
        CHECK(r == gauss_rank(m));
        CHECK(r == rank(transpose(m)));
    }
}

TEST_CASE("rank of products is bounded and exact on engineered kernels") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        DenseMatrix a = random_matrix(rng, 4, 3), b = random_matrix(rng, 3, 4);
        std::size_t r = rank(multiply(a, b));
        CHECK(r <= rank(a));
        CHECK(r <= rank(b));
    }
    // d^2 = 0 style pair: columns of k span the kernel of d
    DenseMatrix d(2, 3);
    int dv[2][3] = {{1, 1, 0}, {0, 1, 1}};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) d.at(i, j) = dv[i][j];
    DenseMatrix k(3, 1);
    k.at(0, 0) = 1;
    k.at(1, 0) = -1;
    k.at(2, 0) = 1;
    CHECK(rank(multiply(d, k)) == 0);
    CHECK(rank(d) + rank(k) == 3); // exactness of 0 -> k -> R^3 -> R^2
}

TEST_CASE("integer helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(3, 7) == 0);
    for (int n = 1; n < 12; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));

    // (hk)!/(k!(h!)^k)
    CHECK(iterated_power_coefficient(1, 5) == 1);
    CHECK(iterated_power_coefficient(5, 1) == 1);
    CHECK(iterated_power_coefficient(2, 2) == 3);
    CHECK(iterated_power_coefficient(2, 3) == 15);
    CHECK(iterated_power_coefficient(3, 2) == 10);

    CHECK(to_string(Rational(-3, 6)) == "-1/2");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK(rational_from_strings("-3", "6") == Rational(-1, 2));
    CHECK_THROWS_AS(rational_from_strings("1", "0"), Error);
    CHECK_THROWS_AS(rational_from_strings("a", "1"), Error);
    CHECK_THROWS_AS(rational_from_strings("", "1"), Error);
}
