#pragma once

#include <cmath>
#include <stdexcept>

namespace mdofdm {

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Total complex noise variance per receive antenna: E_s / SNR_linear.
// The same value regularizes the MMSE solve; one convention everywhere.
inline double noise_var_from_snr(double snr_db, double symbol_energy) {
    if (symbol_energy <= 0.0)
        throw std::invalid_argument("noise_var_from_snr: symbol energy must be positive");
    return symbol_energy / std::pow(10.0, snr_db / 10.0);
}

// Closed-form Gray QPSK BER over flat Rayleigh fading,
// 0.5 (1 - sqrt(g / (1 + g))) with g the mean per-bit SNR.
inline double analytic_rayleigh_qpsk_ber(double snr_db) {
    const double gamma_b = std::pow(10.0, snr_db / 10.0) / 2.0;
    return 0.5 * (1.0 - std::sqrt(gamma_b / (1.0 + gamma_b)));
}

// QPSK BER under L-branch selection combining: integrates Q(sqrt(2 gb g))
// over the max-of-L-exponentials gain density
// f(g) = L e^{-g} (1 - e^{-g})^{L-1}. Substitution g = t^2 removes the
// sqrt-kink at the origin; composite Simpson on the transformed axis.
inline double analytic_selection_ber(double snr_db, unsigned branches) {
    if (branches < 1) throw std::invalid_argument("analytic_selection_ber: branches must be >= 1");
    const double gamma_b = std::pow(10.0, snr_db / 10.0) / 2.0;
    const double t_max = std::sqrt(45.0);  // e^{-45} tail is negligible
    const std::size_t n = 4096;            // even
    const double h = t_max / static_cast<double>(n);
    auto integrand = [&](double t) {
        const double g = t * t;
        const double e = std::exp(-g);
        double w = static_cast<double>(branches) * e;
        if (branches > 1) w *= std::pow(1.0 - e, static_cast<double>(branches - 1));
        return q_function(std::sqrt(2.0 * gamma_b) * t) * w * 2.0 * t;
    };
    double acc = integrand(0.0) + integrand(t_max);
    for (std::size_t i = 1; i < n; ++i) acc += integrand(i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace mdofdm
