#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mdofdm/linalg.hpp"

namespace mdofdm {

namespace detail {

inline unsigned gray_decode(unsigned g) {
    unsigned b = g;
    while (g >>= 1) b ^= g;
    return b;
}

}  // namespace detail

// Square M-QAM with per-axis Gray labeling, unit average symbol energy.
// Label layout: the first log2(M)/2 bits (MSB first) address the in-phase
// axis, the rest the quadrature axis. Label 0 maps to the outermost
// first-quadrant point, so for QPSK [0,0] -> (+1+j)/sqrt(2).
class QamConstellation {
public:
    explicit QamConstellation(unsigned order) : order_(order) {
        if (order != 4 && order != 16 && order != 64)
            throw std::invalid_argument("QamConstellation: order must be 4, 16 or 64");
        bits_ = 0;
        while ((1u << bits_) < order) ++bits_;
        const unsigned side = 1u << (bits_ / 2);
        // unnormalized per-axis levels {..,-3,-1,+1,+3,..}; average energy of
        // the square grid is 2(M-1)/3
        const double scale = std::sqrt(3.0 / (2.0 * (order - 1.0)));
        points_.resize(order);
        for (unsigned label = 0; label < order; ++label) {
            const unsigned gi = label >> (bits_ / 2);
            const unsigned gq = label & (side - 1);
            const double ai = static_cast<int>(side) - 1 - 2 * static_cast<int>(detail::gray_decode(gi));
            const double aq = static_cast<int>(side) - 1 - 2 * static_cast<int>(detail::gray_decode(gq));
            points_[label] = cplx{ai, aq} * scale;
        }
    }

    unsigned order() const { return order_; }
    unsigned bits_per_symbol() const { return bits_; }
    const std::vector<cplx>& points() const { return points_; }
    cplx point(unsigned label) const { return points_[label]; }

    // Hard decision: Euclidean-nearest point, exact ties to the lowest label.
    unsigned nearest_label(cplx z) const {
        unsigned best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (unsigned i = 0; i < order_; ++i) {
            const double d = std::norm(z - points_[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

private:
    unsigned order_ = 0;
    unsigned bits_ = 0;
    std::vector<cplx> points_;
};

inline ComplexVector gray_qam_modulate(const std::vector<std::uint8_t>& bits,
                                       const QamConstellation& c) {
    const unsigned m = c.bits_per_symbol();
    if (bits.size() % m != 0)
        throw ShapeError("gray_qam_modulate: bit count not divisible by bits per symbol");
    ComplexVector out(bits.size() / m);
    for (std::size_t s = 0; s < out.size(); ++s) {
        unsigned label = 0;
        for (unsigned b = 0; b < m; ++b) label = (label << 1) | (bits[s * m + b] & 1u);
        out[s] = c.point(label);
    }
    return out;
}

inline std::vector<std::uint8_t> gray_qam_demodulate(const ComplexVector& symbols,
                                                     const QamConstellation& c) {
    const unsigned m = c.bits_per_symbol();
    std::vector<std::uint8_t> bits(symbols.size() * m);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        const unsigned label = c.nearest_label(symbols[s]);
        for (unsigned b = 0; b < m; ++b)
            bits[s * m + b] = static_cast<std::uint8_t>((label >> (m - 1 - b)) & 1u);
    }
    return bits;
}

}  // namespace mdofdm
