#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "mdofdm/linalg.hpp"

namespace mdofdm {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based deterministic stream. The state is a pure function of
// (master seed, ordered context labels), so results never depend on
// thread scheduling: each unit of parallel work derives its own stream.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> labels)
        : RandomStream(seed, std::vector<std::uint64_t>(labels)) {}

    RandomStream(std::uint64_t seed, const std::vector<std::uint64_t>& labels) {
        std::uint64_t h = detail::mix64(seed ^ 0xA0761D6478BD642FULL);
        std::uint64_t idx = 1;
        for (std::uint64_t l : labels) h = detail::mix64(h ^ detail::mix64(l + idx++ * 0xE7037ED1A0B428DBULL));
        state_ = h;
    }

    RandomStream derive(std::uint64_t label) const {
        RandomStream s = *this;
        s.state_ = detail::mix64(state_ ^ detail::mix64(label + 0x8EBC6AF09C88C6E3ULL));
        return s;
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1)
    double next_uniform() {
        const std::uint64_t bits = next_u64() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    // CN(0,1): real and imaginary parts independent N(0, 1/2)
    cplx next_cn01() {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::uint64_t state_ = 0;
};

inline ComplexVector sample_complex_gaussian(RandomStream& stream, std::size_t n) {
    ComplexVector v(n);
    for (cplx& z : v) z = stream.next_cn01();
    return v;
}

}  // namespace mdofdm
