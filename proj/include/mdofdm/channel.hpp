#pragma once

#include <bit>
#include <stdexcept>
#include <vector>

#include "mdofdm/linalg.hpp"
#include "mdofdm/random.hpp"

namespace mdofdm {

struct ChannelConfig {
    std::size_t n_tx = 4;
    std::size_t n_rx = 1;
    std::size_t n_sc = 64;
    double rho_tx = 0.0;
    double rho_rx = 0.0;

    void validate() const {
        if (n_tx < 1 || n_rx < 1) throw std::invalid_argument("ChannelConfig: antenna counts must be >= 1");
        if (n_sc < 1 || !std::has_single_bit(n_sc))
            throw std::invalid_argument("ChannelConfig: n_sc must be a power of two");
        if (rho_tx < 0.0 || rho_tx >= 1.0 || rho_rx < 0.0 || rho_rx >= 1.0)
            throw std::invalid_argument("ChannelConfig: correlation coefficients must lie in [0, 1)");
    }
};

// Per-subcarrier stack of N_r x N_t channel matrices for one OFDM symbol.
struct ChannelRealization {
    std::vector<ComplexMatrix> per_subcarrier;
};

// R = (1 - rho) I + rho J: unit diagonal, constant off-diagonal.
inline ComplexMatrix uniform_correlation(std::size_t n, double rho) {
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("uniform_correlation: rho must lie in [0, 1]");
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = (i == j) ? 1.0 : rho;
    return r;
}

// Kronecker-correlated Rayleigh fading: H_k = L_rx G_k L_tx^H with G_k
// i.i.d. CN(0,1), drawn independently per subcarrier.
inline ChannelRealization generate_channel(const ChannelConfig& cfg, RandomStream& stream) {
    cfg.validate();
    const bool corr_tx = cfg.rho_tx > 0.0;
    const bool corr_rx = cfg.rho_rx > 0.0;
    ComplexMatrix l_tx_h, l_rx;
    if (corr_tx) l_tx_h = cholesky_lower(uniform_correlation(cfg.n_tx, cfg.rho_tx)).adjoint();
    if (corr_rx) l_rx = cholesky_lower(uniform_correlation(cfg.n_rx, cfg.rho_rx));

    ChannelRealization out;
    out.per_subcarrier.reserve(cfg.n_sc);
    for (std::size_t k = 0; k < cfg.n_sc; ++k) {
        ComplexMatrix g(cfg.n_rx, cfg.n_tx);
        for (std::size_t i = 0; i < cfg.n_rx; ++i)
            for (std::size_t j = 0; j < cfg.n_tx; ++j) g(i, j) = stream.next_cn01();
        if (corr_rx) g = l_rx * g;
        if (corr_tx) g = g * l_tx_h;
        out.per_subcarrier.push_back(std::move(g));
    }
    return out;
}

}  // namespace mdofdm
