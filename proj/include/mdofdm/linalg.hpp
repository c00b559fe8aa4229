#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdofdm {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dense row-major complex matrix. Small sizes only (antenna counts),
// no blocking or SIMD.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0)
            throw ShapeError("ComplexMatrix: dimensions must be >= 1");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cplx>& data() const { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    ComplexVector column(std::size_t c) const {
        ComplexVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

inline ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x) {
    if (a.cols() != x.size()) throw ShapeError("matvec: dimension mismatch");
    ComplexVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

inline double squared_norm(const ComplexVector& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return s;
}

// Lower-triangular Cholesky factor L with L L^H = R.
// R must be Hermitian; fails on non-positive pivots (e.g. rho = 1
// correlation matrices).
inline ComplexMatrix cholesky_lower(const ComplexMatrix& r) {
    const std::size_t n = r.rows();
    if (r.cols() != n) throw ShapeError("cholesky_lower: matrix not square");
    const double scale = r.frobenius_norm();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(r(i, j) - std::conj(r(j, i))) > 1e-12 * std::max(1.0, scale))
                throw DecompositionError("cholesky_lower: matrix not Hermitian");

    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = r(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 1e-14 * std::max(1.0, scale)))
            throw DecompositionError("cholesky_lower: non-positive pivot at index " +
                                     std::to_string(j));
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = r(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return l;
}

// Solves A X = B for Hermitian positive definite A via Cholesky,
// forward/back substitution. Never forms an explicit inverse.
inline ComplexMatrix solve_hermitian(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw ShapeError("solve_hermitian: dimension mismatch");
    const ComplexMatrix l = cholesky_lower(a);
    const std::size_t n = a.rows(), m = b.cols();
    ComplexMatrix x = b;
    // L z = B
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = x(i, c);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
            x(i, c) = s / l(i, i);
        }
        // L^H x = z
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * x(k, c);
            x(ii, c) = s / l(ii, ii);
        }
    }
    return x;
}

inline ComplexVector solve_hermitian(const ComplexMatrix& a, const ComplexVector& b) {
    ComplexMatrix bm(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) bm(i, 0) = b[i];
    const ComplexMatrix x = solve_hermitian(a, bm);
    ComplexVector out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(i, 0);
    return out;
}

}  // namespace mdofdm
