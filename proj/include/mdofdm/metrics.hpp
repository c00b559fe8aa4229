#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mdofdm/analytic.hpp"
#include "mdofdm/channel.hpp"
#include "mdofdm/qam.hpp"
#include "mdofdm/random.hpp"
#include "mdofdm/transceiver.hpp"

namespace mdofdm {

enum class Scheme { mmse, md };

inline const char* scheme_name(Scheme s) { return s == Scheme::mmse ? "mmse" : "md"; }

enum class PaprReduce { per_antenna, max_over_antennas };

// One scheme's physical-layer parameters for a run.
struct LinkConfig {
    Scheme scheme = Scheme::md;
    std::size_t n_tx = 4;
    std::size_t n_rx = 1;
    std::size_t n_sc = 64;
    unsigned mod_order = 4;
    double rho_tx = 0.0;
    double rho_rx = 0.0;
    bool normalize_total_tx_power = false;

    void validate() const {
        ChannelConfig{n_tx, n_rx, n_sc, rho_tx, rho_rx}.validate();
        if (mod_order != 4 && mod_order != 16 && mod_order != 64)
            throw std::invalid_argument("LinkConfig: modulation_order must be 4, 16 or 64");
        if (scheme == Scheme::md && n_rx != 1)
            throw std::invalid_argument("md requires n_rx = 1");
    }

    ChannelConfig channel_config() const { return {n_tx, n_rx, n_sc, rho_tx, rho_rx}; }
};

struct BerPoint {
    Scheme scheme = Scheme::md;
    double snr_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
};

struct CcdfCurve {
    std::vector<double> thresholds_db;
    std::vector<double> probabilities;
};

struct PowerModel {
    double p_rf_mw = 80.0;
    double p_mmse_proc_mw = 224.0 / 4096.0;
    double p_sel_proc_mw = 4.0 / 256.0;
};

struct EeRecord {
    Scheme scheme = Scheme::md;
    double snr_db = 0.0;
    double ber = 0.0;
    double se_ideal = 0.0;
    double se_eff = 0.0;
    double bandwidth_hz = 0.0;
    double p_total_mw = 0.0;
    double ee_bits_per_joule = 0.0;
};

namespace detail {

inline std::vector<std::uint8_t> draw_bits(RandomStream& stream, std::size_t n) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = stream.next_bit() ? 1 : 0;
    return bits;
}

// One OFDM symbol through the full chain; returns (bit errors, bits sent).
inline std::pair<std::uint64_t, std::uint64_t> run_symbol(const LinkConfig& link,
                                                          const QamConstellation& con,
                                                          double noise_var,
                                                          RandomStream& stream) {
    const std::size_t m = con.bits_per_symbol();
    const ChannelRealization ch = generate_channel(link.channel_config(), stream);

    if (link.scheme == Scheme::md) {
        const SelectionMap sel = select_antennas(ch);
        const auto bits = draw_bits(stream, link.n_sc * m);
        const ComplexVector symbols = gray_qam_modulate(bits, con);
        const TxFrame frame = md_build_tx(symbols, sel, link.n_tx);
        const ComplexMatrix rx = apply_channel(frame, ch, noise_var, stream);
        ComplexVector est(link.n_sc);
        for (std::size_t k = 0; k < link.n_sc; ++k)
            est[k] = md_equalize(ch.per_subcarrier[k](0, sel[k]), rx(0, k));
        const auto rx_bits = gray_qam_demodulate(est, con);
        std::uint64_t errors = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) errors += bits[i] != rx_bits[i];
        return {errors, bits.size()};
    }

    // MMSE spatial multiplexing
    const auto bits = draw_bits(stream, link.n_tx * link.n_sc * m);
    std::vector<ComplexVector> per_antenna(link.n_tx);
    for (std::size_t j = 0; j < link.n_tx; ++j) {
        std::vector<std::uint8_t> slice(bits.begin() + j * link.n_sc * m,
                                        bits.begin() + (j + 1) * link.n_sc * m);
        per_antenna[j] = gray_qam_modulate(slice, con);
    }
    TxFrame frame = mmse_build_tx(per_antenna);
    const double amp = link.normalize_total_tx_power
                           ? 1.0 / std::sqrt(static_cast<double>(link.n_tx))
                           : 1.0;
    if (amp != 1.0)
        for (cplx& z : frame.grid) z *= amp;
    const double symbol_energy = amp * amp;
    const ComplexMatrix rx = apply_channel(frame, ch, noise_var, stream);

    std::uint64_t errors = 0;
    ComplexVector y(link.n_rx);
    for (std::size_t k = 0; k < link.n_sc; ++k) {
        for (std::size_t i = 0; i < link.n_rx; ++i) y[i] = rx(i, k);
        ComplexVector est = mmse_equalize(ch.per_subcarrier[k], y, noise_var / symbol_energy);
        for (cplx& z : est) z /= amp;
        const auto rx_bits = gray_qam_demodulate(est, con);
        for (std::size_t j = 0; j < link.n_tx; ++j)
            for (std::size_t b = 0; b < m; ++b)
                errors += bits[j * link.n_sc * m + k * m + b] != rx_bits[j * m + b];
    }
    return {errors, bits.size()};
}

// Splits work into fixed-size chunks with one derived stream per chunk,
// so the result is a pure function of the base stream regardless of
// worker count or scheduling.
template <typename ChunkFn>
inline void run_chunked(std::uint64_t n_items, std::uint64_t chunk_size,
                        unsigned n_workers, ChunkFn&& fn) {
    const std::uint64_t n_chunks = (n_items + chunk_size - 1) / chunk_size;
    n_workers = std::max(1u, n_workers);
    if (n_workers == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            const std::uint64_t lo = c * chunk_size;
            fn(c, std::min(chunk_size, n_items - lo));
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const std::uint64_t lo = c * chunk_size;
            fn(c, std::min(chunk_size, n_items - lo));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace detail

// Monte Carlo BER at one SNR point: a fresh channel realization per OFDM
// symbol, errors counted over all subcarriers and spatial streams.
inline BerPoint run_ber_point(const LinkConfig& link, double snr_db,
                              std::uint64_t n_ofdm_symbols, const RandomStream& base,
                              unsigned n_workers = 1) {
    link.validate();
    if (n_ofdm_symbols < 1) throw std::invalid_argument("run_ber_point: need at least one symbol");
    const QamConstellation con(link.mod_order);
    const double noise_var = noise_var_from_snr(snr_db, 1.0);

    constexpr std::uint64_t kChunk = 64;
    const std::uint64_t n_chunks = (n_ofdm_symbols + kChunk - 1) / kChunk;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> partial(n_chunks);
    detail::run_chunked(n_ofdm_symbols, kChunk, n_workers,
                        [&](std::uint64_t c, std::uint64_t count) {
                            RandomStream stream = base.derive(c);
                            std::uint64_t err = 0, sent = 0;
                            for (std::uint64_t i = 0; i < count; ++i) {
                                const auto [e, b] = detail::run_symbol(link, con, noise_var, stream);
                                err += e;
                                sent += b;
                            }
                            partial[c] = {err, sent};
                        });

    BerPoint pt;
    pt.scheme = link.scheme;
    pt.snr_db = snr_db;
    for (const auto& [e, b] : partial) {
        pt.bit_errors += e;
        pt.bits_sent += b;
    }
    pt.ber = static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits_sent);
    return pt;
}

inline double compute_papr(const ComplexVector& samples) {
    if (samples.empty()) throw std::invalid_argument("compute_papr: empty waveform");
    double peak = 0.0, sum = 0.0;
    for (const cplx& z : samples) {
        const double p = std::norm(z);
        peak = std::max(peak, p);
        sum += p;
    }
    if (sum == 0.0) throw std::invalid_argument("compute_papr: all-zero waveform has no PAPR");
    return peak * static_cast<double>(samples.size()) / sum;
}

inline double papr_db(double linear) { return 10.0 * std::log10(linear); }

// One PAPR sample per active antenna per OFDM symbol (or the per-symbol
// max when reduce = max_over_antennas). MD frames need a channel draw for
// the selection map; MMSE frames do not.
inline std::vector<double> collect_papr_samples(const LinkConfig& link, std::size_t oversampling,
                                                std::uint64_t n_symbols, const RandomStream& base,
                                                unsigned n_workers = 1,
                                                PaprReduce reduce = PaprReduce::per_antenna) {
    link.validate();
    if (n_symbols < 1) throw std::invalid_argument("collect_papr_samples: need at least one symbol");
    const QamConstellation con(link.mod_order);

    constexpr std::uint64_t kChunk = 64;
    const std::uint64_t n_chunks = (n_symbols + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> partial(n_chunks);
    detail::run_chunked(n_symbols, kChunk, n_workers, [&](std::uint64_t c, std::uint64_t count) {
        RandomStream stream = base.derive(c);
        std::vector<double> local;
        local.reserve(count * link.n_tx);
        const std::size_t m = con.bits_per_symbol();
        for (std::uint64_t i = 0; i < count; ++i) {
            TxFrame frame;
            if (link.scheme == Scheme::md) {
                const ChannelRealization ch = generate_channel(link.channel_config(), stream);
                const SelectionMap sel = select_antennas(ch);
                const auto bits = detail::draw_bits(stream, link.n_sc * m);
                frame = md_build_tx(gray_qam_modulate(bits, con), sel, link.n_tx);
            } else {
                std::vector<ComplexVector> grid(link.n_tx);
                for (auto& row : grid)
                    row = gray_qam_modulate(detail::draw_bits(stream, link.n_sc * m), con);
                frame = mmse_build_tx(grid);
            }
            const TimeDomainWaveform wf = synthesize_waveform(frame, oversampling);
            double symbol_max = -1.0;
            for (std::size_t j = 0; j < link.n_tx; ++j) {
                bool active = false;
                for (std::size_t k = 0; k < link.n_sc && !active; ++k)
                    active = frame.at(j, k) != cplx{};
                if (!active) continue;
                const double p = papr_db(compute_papr(wf.per_antenna[j]));
                if (reduce == PaprReduce::per_antenna)
                    local.push_back(p);
                else
                    symbol_max = std::max(symbol_max, p);
            }
            if (reduce == PaprReduce::max_over_antennas && symbol_max >= 0.0)
                local.push_back(symbol_max);
        }
        partial[c] = std::move(local);
    });

    std::vector<double> out;
    for (auto& chunk : partial) out.insert(out.end(), chunk.begin(), chunk.end());
    return out;
}

// Empirical P(PAPR > threshold), strict inequality.
inline CcdfCurve estimate_ccdf(const std::vector<double>& samples_db,
                               const std::vector<double>& thresholds_db) {
    if (samples_db.empty()) throw std::invalid_argument("estimate_ccdf: no samples");
    CcdfCurve curve;
    curve.thresholds_db = thresholds_db;
    curve.probabilities.reserve(thresholds_db.size());
    std::vector<double> sorted = samples_db;
    std::sort(sorted.begin(), sorted.end());
    for (double t : thresholds_db) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
        curve.probabilities.push_back(static_cast<double>(sorted.end() - it) /
                                      static_cast<double>(sorted.size()));
    }
    return curve;
}

// MMSE: P_RF (N_t + N_r) + P_proc N_sc N_t^3 (cubic equalizer cost).
// MD:   P_RF (N_t + 1)   + P_proc N_sc N_t   (linear selection cost);
// the single receive RF chain is fixed by the scheme.
inline double total_power_mw(Scheme scheme, const PowerModel& model, std::size_t n_tx,
                             std::size_t n_rx, std::size_t n_sc) {
    if (n_tx < 1 || n_rx < 1 || n_sc < 1)
        throw std::invalid_argument("total_power_mw: counts must be >= 1");
    const double nt = static_cast<double>(n_tx);
    const double nsc = static_cast<double>(n_sc);
    if (scheme == Scheme::mmse)
        return model.p_rf_mw * static_cast<double>(n_tx + n_rx) +
               model.p_mmse_proc_mw * nsc * nt * nt * nt;
    return model.p_rf_mw * static_cast<double>(n_tx + 1) + model.p_sel_proc_mw * nsc * nt;
}

inline double ideal_se(Scheme scheme, std::size_t n_tx, unsigned mod_order) {
    const double bits = std::log2(static_cast<double>(mod_order));
    return scheme == Scheme::mmse ? static_cast<double>(n_tx) * bits : bits;
}

inline double effective_se(Scheme scheme, std::size_t n_tx, unsigned mod_order, double ber) {
    if (ber < 0.0 || ber > 1.0) throw std::invalid_argument("effective_se: ber out of [0,1]");
    return ideal_se(scheme, n_tx, mod_order) * (1.0 - ber);
}

inline double energy_efficiency(double se_eff, double bandwidth_hz, double p_total_mw) {
    if (p_total_mw <= 0.0) throw std::invalid_argument("energy_efficiency: power must be positive");
    return se_eff * bandwidth_hz / (p_total_mw / 1000.0);
}

}  // namespace mdofdm
