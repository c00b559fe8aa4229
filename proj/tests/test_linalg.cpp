#include <doctest.h>

#include <random>

#include "mdofdm/linalg.hpp"

using namespace mdofdm;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = {n(rng), n(rng)};
    return m;
}

// G^H G + I: Hermitian positive definite by construction
ComplexMatrix random_hpd(std::size_t n, std::mt19937_64& rng) {
    const ComplexMatrix g = random_matrix(n, n, rng);
    ComplexMatrix a = g.adjoint() * g;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 1.0;
    return a;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

}  // namespace

TEST_CASE("cholesky of identity is identity") {
    const ComplexMatrix l = cholesky_lower(ComplexMatrix::identity(4));
    CHECK(max_abs_diff(l, ComplexMatrix::identity(4)) == doctest::Approx(0.0));
}

TEST_CASE("cholesky 2x2 known factor") {
    ComplexMatrix r(2, 2);
    r(0, 0) = 1.0; r(0, 1) = 0.5;
    r(1, 0) = 0.5; r(1, 1) = 1.0;
    const ComplexMatrix l = cholesky_lower(r);
    CHECK(l(0, 0).real() == doctest::Approx(1.0));
    CHECK(l(0, 1) == cplx{});
    CHECK(l(1, 0).real() == doctest::Approx(0.5));
    CHECK(l(1, 1).real() == doctest::Approx(std::sqrt(0.75)));
    // reconstruction oracle: L L^H = R by direct multiplication
    CHECK(max_abs_diff(l * l.adjoint(), r) < 1e-14);
}

TEST_CASE("cholesky rejects singular all-ones matrix") {
    ComplexMatrix j(2, 2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) j(a, b) = 1.0;
    CHECK_THROWS_AS(cholesky_lower(j), DecompositionError);
}

TEST_CASE("cholesky rejects non-Hermitian input") {
    ComplexMatrix r(2, 2);
    r(0, 0) = 1.0; r(0, 1) = cplx{0.5, 0.1};
    r(1, 0) = cplx{0.5, 0.1}; r(1, 1) = 1.0;  // should be the conjugate
    CHECK_THROWS_AS(cholesky_lower(r), DecompositionError);
}

TEST_CASE("cholesky reconstruction over random HPD matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const ComplexMatrix r = random_hpd(n, rng);
        const ComplexMatrix l = cholesky_lower(r);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(l(i, i).imag() == 0.0);
            CHECK(l(i, i).real() > 0.0);
            for (std::size_t j = i + 1; j < n; ++j) CHECK(l(i, j) == cplx{});
        }
        CHECK(max_abs_diff(l * l.adjoint(), r) <= 1e-10 * r.frobenius_norm());
    }
}

TEST_CASE("solve_hermitian with identity returns rhs") {
    std::mt19937_64 rng(11);
    const ComplexMatrix b = random_matrix(3, 2, rng);
    const ComplexMatrix x = solve_hermitian(ComplexMatrix::identity(3), b);
    CHECK(max_abs_diff(x, b) < 1e-14);
}

TEST_CASE("solve_hermitian 2x2 vs adjugate inverse oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix a = random_hpd(2, rng);
        const ComplexMatrix b = random_matrix(2, 2, rng);
        // closed-form adjugate inverse of a 2x2
        const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        ComplexMatrix inv(2, 2);
        inv(0, 0) = a(1, 1) / det;
        inv(0, 1) = -a(0, 1) / det;
        inv(1, 0) = -a(1, 0) / det;
        inv(1, 1) = a(0, 0) / det;
        CHECK(max_abs_diff(solve_hermitian(a, b), inv * b) <= 1e-10);
    }
}

TEST_CASE("solve_hermitian residual on random 4x4 systems") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix a = random_hpd(4, rng);
        const ComplexMatrix b = random_matrix(4, 3, rng);
        const ComplexMatrix x = solve_hermitian(a, b);
        ComplexMatrix resid = a * x;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j) resid(i, j) -= b(i, j);
        CHECK(resid.frobenius_norm() <= 1e-10 * b.frobenius_norm());
    }
}

TEST_CASE("solve_hermitian rejects singular systems") {
    ComplexMatrix a(2, 2);
    a(0, 0) = 1.0; a(0, 1) = 1.0;
    a(1, 0) = 1.0; a(1, 1) = 1.0;
    ComplexMatrix b = ComplexMatrix::identity(2);
    CHECK_THROWS_AS(solve_hermitian(a, b), DecompositionError);
}
