#include <doctest.h>

#include <random>

#include "mdofdm/fft.hpp"

using namespace mdofdm;

namespace {

ComplexVector random_vec(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    ComplexVector v(n);
    for (cplx& z : v) z = {d(rng), d(rng)};
    return v;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("idft of impulse is a constant vector") {
    ComplexVector x(8);
    x[0] = 1.0;
    const ComplexVector t = unitary_idft(x);
    for (const cplx& z : t) CHECK(std::abs(z - cplx{1.0 / std::sqrt(8.0), 0.0}) < 1e-14);
}

TEST_CASE("dft of constant vector is an impulse") {
    ComplexVector x(8, cplx{1.0 / std::sqrt(8.0), 0.0});
    const ComplexVector f = unitary_dft(x);
    CHECK(std::abs(f[0] - cplx{1.0, 0.0}) < 1e-14);
    for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(f[k]) < 1e-14);
}

TEST_CASE("unitarity over all power-of-two sizes up to 1024") {
    std::mt19937_64 rng(3);
    for (std::size_t n = 8; n <= 1024; n <<= 1) {
        const ComplexVector x = random_vec(n, rng);
        const double ex = squared_norm(x);
        CHECK(squared_norm(unitary_dft(x)) == doctest::Approx(ex).epsilon(1e-12));
        CHECK(squared_norm(unitary_idft(x)) == doctest::Approx(ex).epsilon(1e-12));
    }
}

TEST_CASE("dft and idft are inverse") {
    std::mt19937_64 rng(5);
    const ComplexVector x = random_vec(64, rng);
    CHECK(max_abs_diff(unitary_dft(unitary_idft(x)), x) < 1e-12);
    CHECK(max_abs_diff(unitary_idft(unitary_dft(x)), x) < 1e-12);
}

TEST_CASE("dft is linear") {
    std::mt19937_64 rng(9);
    const ComplexVector x = random_vec(32, rng);
    const ComplexVector y = random_vec(32, rng);
    const cplx a{0.7, -1.3}, b{-0.2, 0.4};
    ComplexVector mix(32);
    for (std::size_t i = 0; i < 32; ++i) mix[i] = a * x[i] + b * y[i];
    const ComplexVector fx = unitary_dft(x), fy = unitary_dft(y);
    ComplexVector expect(32);
    for (std::size_t i = 0; i < 32; ++i) expect[i] = a * fx[i] + b * fy[i];
    CHECK(max_abs_diff(unitary_dft(mix), expect) < 1e-12);
}

TEST_CASE("non power-of-two sizes are rejected") {
    ComplexVector x(6);
    CHECK_THROWS_AS(unitary_dft(x), ShapeError);
    CHECK_THROWS_AS(unitary_idft(ComplexVector{}), ShapeError);
}

TEST_CASE("length one is the identity transform") {
    const ComplexVector x{cplx{2.0, -1.0}};
    CHECK(unitary_dft(x)[0] == x[0]);
    CHECK(unitary_idft(x)[0] == x[0]);
}
