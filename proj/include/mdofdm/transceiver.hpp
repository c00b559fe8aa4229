#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mdofdm/channel.hpp"
#include "mdofdm/fft.hpp"
#include "mdofdm/linalg.hpp"
#include "mdofdm/random.hpp"

namespace mdofdm {

// Frequency-domain transmit grid, one row per antenna. MD mode leaves
// all but the selected antenna zero on each subcarrier column.
struct TxFrame {
    std::size_t n_tx = 0;
    std::size_t n_sc = 0;
    std::vector<cplx> grid;  // row-major [antenna][subcarrier]

    TxFrame() = default;
    TxFrame(std::size_t tx, std::size_t sc) : n_tx(tx), n_sc(sc), grid(tx * sc) {}

    cplx& at(std::size_t ant, std::size_t k) { return grid[ant * n_sc + k]; }
    const cplx& at(std::size_t ant, std::size_t k) const { return grid[ant * n_sc + k]; }
};

using SelectionMap = std::vector<std::size_t>;

struct TimeDomainWaveform {
    std::size_t oversampling = 1;
    std::vector<ComplexVector> per_antenna;
};

// Spatial multiplexing: every antenna transmits its own symbol stream,
// column k of the grid is x_k.
inline TxFrame mmse_build_tx(const std::vector<ComplexVector>& symbols_per_antenna) {
    if (symbols_per_antenna.empty()) throw ShapeError("mmse_build_tx: no antennas");
    const std::size_t n_tx = symbols_per_antenna.size();
    const std::size_t n_sc = symbols_per_antenna[0].size();
    TxFrame frame(n_tx, n_sc);
    for (std::size_t j = 0; j < n_tx; ++j) {
        if (symbols_per_antenna[j].size() != n_sc)
            throw ShapeError("mmse_build_tx: ragged symbol grid");
        for (std::size_t k = 0; k < n_sc; ++k) frame.at(j, k) = symbols_per_antenna[j][k];
    }
    return frame;
}

// argmax_j ||h_j||^2 over columns of H_k, ties to the lowest index.
inline std::size_t select_antenna(const ComplexMatrix& h_k) {
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t j = 0; j < h_k.cols(); ++j) {
        double g = 0.0;
        for (std::size_t i = 0; i < h_k.rows(); ++i) g += std::norm(h_k(i, j));
        if (g > best_gain) {
            best_gain = g;
            best = j;
        }
    }
    return best;
}

inline SelectionMap select_antennas(const ChannelRealization& ch) {
    SelectionMap sel(ch.per_subcarrier.size());
    for (std::size_t k = 0; k < sel.size(); ++k) sel[k] = select_antenna(ch.per_subcarrier[k]);
    return sel;
}

// One-hot antenna activation: symbol s_k rides only on antenna j*_k.
inline TxFrame md_build_tx(const ComplexVector& symbols, const SelectionMap& selection,
                           std::size_t n_tx) {
    if (symbols.size() != selection.size())
        throw ShapeError("md_build_tx: symbol/selection length mismatch");
    TxFrame frame(n_tx, symbols.size());
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        if (selection[k] >= n_tx) throw ShapeError("md_build_tx: antenna index out of range");
        frame.at(selection[k], k) = symbols[k];
    }
    return frame;
}

// x_hat = (H^H H + noise_var I)^{-1} H^H y, via Hermitian solve.
inline ComplexVector mmse_equalize(const ComplexMatrix& h, const ComplexVector& y,
                                   double noise_var) {
    if (noise_var < 0.0) throw std::invalid_argument("mmse_equalize: negative noise variance");
    if (h.rows() != y.size()) throw ShapeError("mmse_equalize: dimension mismatch");
    const ComplexMatrix hh = h.adjoint();
    ComplexMatrix a = hh * h;
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += noise_var;
    return solve_hermitian(a, hh * y);
}

// Scalar channel inversion for the single-receive-antenna chain.
inline cplx md_equalize(cplx h, cplx y) {
    if (h == cplx{}) return cplx{};
    return y / h;
}

// y_k = H_k x_k + n_k with n_k entries CN(0, noise_var) per receive antenna.
// Returns the N_r x N_sc received grid.
inline ComplexMatrix apply_channel(const TxFrame& frame, const ChannelRealization& ch,
                                   double noise_var, RandomStream& stream) {
    if (ch.per_subcarrier.size() != frame.n_sc)
        throw ShapeError("apply_channel: subcarrier count mismatch");
    const std::size_t n_rx = ch.per_subcarrier[0].rows();
    const double noise_scale = std::sqrt(noise_var);
    ComplexMatrix rx(n_rx, frame.n_sc);
    for (std::size_t k = 0; k < frame.n_sc; ++k) {
        const ComplexMatrix& h = ch.per_subcarrier[k];
        if (h.cols() != frame.n_tx) throw ShapeError("apply_channel: antenna count mismatch");
        for (std::size_t i = 0; i < n_rx; ++i) {
            cplx acc{};
            for (std::size_t j = 0; j < frame.n_tx; ++j) acc += h(i, j) * frame.at(j, k);
            rx(i, k) = acc + noise_scale * stream.next_cn01();
        }
    }
    return rx;
}

// Per-antenna oversampled IDFT: the N_sc occupied symbols go into the
// low-index bins of an L*N_sc grid, zeros appended.
inline TimeDomainWaveform synthesize_waveform(const TxFrame& frame, std::size_t oversampling) {
    if (oversampling != 1 && oversampling != 2 && oversampling != 4 && oversampling != 8)
        throw std::invalid_argument("synthesize_waveform: oversampling must be 1, 2, 4 or 8");
    TimeDomainWaveform wf;
    wf.oversampling = oversampling;
    wf.per_antenna.reserve(frame.n_tx);
    for (std::size_t j = 0; j < frame.n_tx; ++j) {
        ComplexVector padded(oversampling * frame.n_sc);
        for (std::size_t k = 0; k < frame.n_sc; ++k) padded[k] = frame.at(j, k);
        wf.per_antenna.push_back(unitary_idft(std::move(padded)));
    }
    return wf;
}

}  // namespace mdofdm
