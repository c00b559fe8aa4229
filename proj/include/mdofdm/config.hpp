#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdofdm/format.hpp"
#include "mdofdm/metrics.hpp"

namespace mdofdm {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

inline double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("invalid numeric value for '" + key + "': " + s);
    }
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& key) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ConfigError("invalid integer value for '" + key + "': " + s);
    return v;
}

inline bool parse_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("invalid boolean value for '" + key + "': " + s);
}

// "LO:STEP:HI" inclusive grid, or a comma-separated list.
inline std::vector<double> parse_grid(const std::string& s, const std::string& key) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 3) throw ConfigError("'" + key + "' grid must be LO:STEP:HI");
        const double lo = parse_double(parts[0], key);
        const double step = parse_double(parts[1], key);
        const double hi = parse_double(parts[2], key);
        if (step <= 0.0) throw ConfigError("'" + key + "' grid step must be positive");
        for (double v = lo; v <= hi + step * 1e-9; v += step) out.push_back(v);
    } else {
        for (const auto& p : split(s, ',')) out.push_back(parse_double(p, key));
    }
    if (out.empty()) throw ConfigError("'" + key + "' grid is empty");
    return out;
}

inline std::string format_grid(const std::vector<double>& g);

}  // namespace detail

// Flat key/value experiment configuration. n_rx is "auto" by default:
// MMSE then runs with n_rx = n_tx and MD with its single receive antenna.
// An explicit n_rx applies to every scheme, so md demands n_rx = 1.
struct SimConfig {
    std::vector<Scheme> schemes{Scheme::mmse, Scheme::md};
    std::size_t n_tx = 4;
    std::size_t n_rx = 4;
    bool n_rx_auto = true;
    std::size_t n_sc = 64;
    unsigned modulation_order = 4;
    double rho_tx = 0.0;
    double rho_rx = 0.0;
    std::vector<double> snr_grid_db = {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    std::uint64_t n_symbols_per_point = 8000;
    std::size_t papr_oversampling = 4;
    std::uint64_t papr_n_symbols = 25000;
    std::vector<double> papr_thresholds_db = default_papr_thresholds();
    PowerModel power_model;
    double bandwidth_hz = 1e6;
    std::uint64_t seed = 42;
    bool normalize_total_tx_power = false;
    PaprReduce papr_reduce = PaprReduce::per_antenna;

    static std::vector<double> default_papr_thresholds() {
        std::vector<double> t;
        for (int i = 0; i <= 36; ++i) t.push_back(4.0 + 0.25 * i);
        return t;
    }

    std::size_t rx_for(Scheme s) const {
        if (s == Scheme::md) return n_rx_auto ? 1 : n_rx;
        return n_rx_auto ? n_tx : n_rx;
    }

    LinkConfig link_for(Scheme s) const {
        return {s,      n_tx,   rx_for(s), n_sc, modulation_order,
                rho_tx, rho_rx, normalize_total_tx_power};
    }

    void validate() const {
        if (schemes.empty()) throw ConfigError("schemes: at least one scheme required");
        for (Scheme s : schemes) {
            try {
                link_for(s).validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
        if (snr_grid_db.empty()) throw ConfigError("snr_db: grid must be non-empty");
        if (n_symbols_per_point < 1) throw ConfigError("n_symbols_per_point: must be >= 1");
        if (papr_n_symbols < 1) throw ConfigError("papr_n_symbols: must be >= 1");
        if (papr_oversampling != 1 && papr_oversampling != 2 && papr_oversampling != 4 &&
            papr_oversampling != 8)
            throw ConfigError("papr_oversampling: must be 1, 2, 4 or 8");
        if (papr_thresholds_db.empty() ||
            !std::is_sorted(papr_thresholds_db.begin(), papr_thresholds_db.end()))
            throw ConfigError("papr_thresholds_db: must be a non-empty ascending grid");
        if (power_model.p_rf_mw < 0 || power_model.p_mmse_proc_mw < 0 ||
            power_model.p_sel_proc_mw < 0)
            throw ConfigError("power model coefficients must be non-negative");
        if (bandwidth_hz <= 0) throw ConfigError("bandwidth_hz: must be positive");
    }

    static SimConfig parse(const std::string& text);
    static SimConfig load(const std::string& path);
    std::string serialize() const;
};

inline SimConfig SimConfig::parse(const std::string& text) {
    SimConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key: value'");
        const std::string key = detail::trim(line.substr(0, colon));
        const std::string val = detail::trim(line.substr(colon + 1));
        if (val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": missing value for '" + key + "'");

        if (key == "schemes") {
            cfg.schemes.clear();
            for (const auto& s : detail::split(val, ',')) {
                if (s == "mmse")
                    cfg.schemes.push_back(Scheme::mmse);
                else if (s == "md")
                    cfg.schemes.push_back(Scheme::md);
                else
                    throw ConfigError("line " + std::to_string(lineno) + ": unknown scheme '" + s + "'");
            }
        } else if (key == "n_tx") {
            cfg.n_tx = detail::parse_u64(val, key);
        } else if (key == "n_rx") {
            if (val == "auto") {
                cfg.n_rx_auto = true;
            } else {
                cfg.n_rx = detail::parse_u64(val, key);
                cfg.n_rx_auto = false;
            }
        } else if (key == "n_sc") {
            cfg.n_sc = detail::parse_u64(val, key);
        } else if (key == "modulation_order") {
            cfg.modulation_order = static_cast<unsigned>(detail::parse_u64(val, key));
        } else if (key == "rho_tx") {
            cfg.rho_tx = detail::parse_double(val, key);
        } else if (key == "rho_rx") {
            cfg.rho_rx = detail::parse_double(val, key);
        } else if (key == "snr_db") {
            cfg.snr_grid_db = detail::parse_grid(val, key);
        } else if (key == "n_symbols_per_point") {
            cfg.n_symbols_per_point = detail::parse_u64(val, key);
        } else if (key == "papr_oversampling") {
            cfg.papr_oversampling = detail::parse_u64(val, key);
        } else if (key == "papr_n_symbols") {
            cfg.papr_n_symbols = detail::parse_u64(val, key);
        } else if (key == "papr_thresholds_db") {
            cfg.papr_thresholds_db = detail::parse_grid(val, key);
        } else if (key == "p_rf_mw") {
            cfg.power_model.p_rf_mw = detail::parse_double(val, key);
        } else if (key == "p_mmse_proc_mw") {
            cfg.power_model.p_mmse_proc_mw = detail::parse_double(val, key);
        } else if (key == "p_sel_proc_mw") {
            cfg.power_model.p_sel_proc_mw = detail::parse_double(val, key);
        } else if (key == "bandwidth_hz") {
            cfg.bandwidth_hz = detail::parse_double(val, key);
        } else if (key == "seed") {
            cfg.seed = detail::parse_u64(val, key);
        } else if (key == "normalize_total_tx_power") {
            cfg.normalize_total_tx_power = detail::parse_bool(val, key);
        } else if (key == "papr_reduce") {
            if (val == "per_antenna")
                cfg.papr_reduce = PaprReduce::per_antenna;
            else if (val == "max_over_antennas")
                cfg.papr_reduce = PaprReduce::max_over_antennas;
            else
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": papr_reduce must be per_antenna or max_over_antennas");
        } else {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

inline SimConfig SimConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

inline std::string SimConfig::serialize() const {
    std::ostringstream out;
    out << "schemes: ";
    for (std::size_t i = 0; i < schemes.size(); ++i)
        out << (i ? "," : "") << scheme_name(schemes[i]);
    out << "\n";
    out << "n_tx: " << n_tx << "\n";
    if (n_rx_auto)
        out << "n_rx: auto\n";
    else
        out << "n_rx: " << n_rx << "\n";
    out << "n_sc: " << n_sc << "\n";
    out << "modulation_order: " << modulation_order << "\n";
    out << "rho_tx: " << format_double(rho_tx) << "\n";
    out << "rho_rx: " << format_double(rho_rx) << "\n";
    out << "snr_db: ";
    for (std::size_t i = 0; i < snr_grid_db.size(); ++i)
        out << (i ? "," : "") << format_double(snr_grid_db[i]);
    out << "\n";
    out << "n_symbols_per_point: " << n_symbols_per_point << "\n";
    out << "papr_oversampling: " << papr_oversampling << "\n";
    out << "papr_n_symbols: " << papr_n_symbols << "\n";
    out << "papr_thresholds_db: ";
    for (std::size_t i = 0; i < papr_thresholds_db.size(); ++i)
        out << (i ? "," : "") << format_double(papr_thresholds_db[i]);
    out << "\n";
    out << "p_rf_mw: " << format_double(power_model.p_rf_mw) << "\n";
    out << "p_mmse_proc_mw: " << format_double(power_model.p_mmse_proc_mw) << "\n";
    out << "p_sel_proc_mw: " << format_double(power_model.p_sel_proc_mw) << "\n";
    out << "bandwidth_hz: " << format_double(bandwidth_hz) << "\n";
    out << "seed: " << seed << "\n";
    out << "normalize_total_tx_power: " << (normalize_total_tx_power ? "true" : "false") << "\n";
    out << "papr_reduce: "
        << (papr_reduce == PaprReduce::per_antenna ? "per_antenna" : "max_over_antennas") << "\n";
    return out.str();
}

}  // namespace mdofdm
