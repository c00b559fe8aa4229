#pragma once

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mdofdm/linalg.hpp"

namespace mdofdm {

namespace detail {

// In-place radix-2 DIT transform, sign = +1 for the inverse kernel
// (e^{+j2pi nk/N}), -1 for the forward kernel. Unitary 1/sqrt(N) scaling
// applied at the end.
inline void fft_radix2(ComplexVector& x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) throw ShapeError("transform: empty input");
    if (!std::has_single_bit(n)) throw ShapeError("transform: length must be a power of two");

    // bit reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wlen{std::cos(ang), std::sin(ang)};
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = x[i + k];
                const cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (cplx& z : x) z *= scale;
}

}  // namespace detail

// x[n] = (1/sqrt(N)) sum_k X[k] e^{+j2pi nk/N}
inline ComplexVector unitary_idft(ComplexVector x) {
    detail::fft_radix2(x, +1);
    return x;
}

// X[k] = (1/sqrt(N)) sum_n x[n] e^{-j2pi nk/N}
inline ComplexVector unitary_dft(ComplexVector x) {
    detail::fft_radix2(x, -1);
    return x;
}

}  // namespace mdofdm
