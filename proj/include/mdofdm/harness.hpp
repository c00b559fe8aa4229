#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mdofdm/config.hpp"
#include "mdofdm/format.hpp"
#include "mdofdm/metrics.hpp"

namespace mdofdm {

inline constexpr const char* kToolVersion = "0.1.0";

// Stream context labels: (seed, [experiment, scheme, snr index]) roots a
// family of chunk streams; worker count never enters the derivation.
inline constexpr std::uint64_t kCtxBer = 1;
inline constexpr std::uint64_t kCtxPapr = 2;

inline std::uint64_t scheme_id(Scheme s) { return s == Scheme::mmse ? 0 : 1; }

inline std::vector<BerPoint> run_ber_sweep(const SimConfig& cfg, unsigned n_workers = 1) {
    cfg.validate();
    std::vector<BerPoint> out;
    for (Scheme s : cfg.schemes) {
        const LinkConfig link = cfg.link_for(s);
        for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
            const RandomStream base(cfg.seed, {kCtxBer, scheme_id(s), i});
            out.push_back(run_ber_point(link, cfg.snr_grid_db[i], cfg.n_symbols_per_point, base,
                                        n_workers));
        }
    }
    return out;
}

inline std::vector<EeRecord> ee_from_ber(const std::vector<BerPoint>& ber, const SimConfig& cfg) {
    std::vector<EeRecord> out;
    out.reserve(ber.size());
    for (const BerPoint& pt : ber) {
        EeRecord r;
        r.scheme = pt.scheme;
        r.snr_db = pt.snr_db;
        r.ber = pt.ber;
        r.se_ideal = ideal_se(pt.scheme, cfg.n_tx, cfg.modulation_order);
        r.se_eff = effective_se(pt.scheme, cfg.n_tx, cfg.modulation_order, pt.ber);
        r.bandwidth_hz = cfg.bandwidth_hz;
        r.p_total_mw =
            total_power_mw(pt.scheme, cfg.power_model, cfg.n_tx, cfg.rx_for(pt.scheme), cfg.n_sc);
        r.ee_bits_per_joule = energy_efficiency(r.se_eff, r.bandwidth_hz, r.p_total_mw);
        out.push_back(r);
    }
    return out;
}

inline std::vector<EeRecord> run_ee_sweep(const SimConfig& cfg, unsigned n_workers = 1) {
    return ee_from_ber(run_ber_sweep(cfg, n_workers), cfg);
}

struct SchemeCcdf {
    Scheme scheme = Scheme::md;
    CcdfCurve curve;
};

inline std::vector<SchemeCcdf> run_papr(const SimConfig& cfg, unsigned n_workers = 1) {
    cfg.validate();
    std::vector<SchemeCcdf> out;
    for (Scheme s : cfg.schemes) {
        const RandomStream base(cfg.seed, {kCtxPapr, scheme_id(s)});
        const std::vector<double> samples =
            collect_papr_samples(cfg.link_for(s), cfg.papr_oversampling, cfg.papr_n_symbols, base,
                                 n_workers, cfg.papr_reduce);
        out.push_back({s, estimate_ccdf(samples, cfg.papr_thresholds_db)});
    }
    return out;
}

// ---- CSV emission ----

inline std::string ber_csv(const std::vector<BerPoint>& points) {
    std::ostringstream out;
    out << "scheme,snr_db,bits_sent,bit_errors,ber\n";
    for (const BerPoint& p : points)
        out << scheme_name(p.scheme) << ',' << format_double(p.snr_db) << ',' << p.bits_sent << ','
            << p.bit_errors << ',' << format_double(p.ber) << '\n';
    return out.str();
}

inline std::string ee_csv(const std::vector<EeRecord>& records) {
    std::ostringstream out;
    out << "scheme,snr_db,ber,se_ideal_bps_hz,se_eff_bps_hz,p_total_mw,bandwidth_hz,"
           "ee_bits_per_joule\n";
    for (const EeRecord& r : records)
        out << scheme_name(r.scheme) << ',' << format_double(r.snr_db) << ',' << format_double(r.ber)
            << ',' << format_double(r.se_ideal) << ',' << format_double(r.se_eff) << ','
            << format_double(r.p_total_mw) << ',' << format_double(r.bandwidth_hz) << ','
            << format_double(r.ee_bits_per_joule) << '\n';
    return out.str();
}

inline std::string papr_csv(const std::vector<SchemeCcdf>& curves) {
    std::ostringstream out;
    out << "scheme,papr0_db,ccdf\n";
    for (const SchemeCcdf& c : curves)
        for (std::size_t i = 0; i < c.curve.thresholds_db.size(); ++i)
            out << scheme_name(c.scheme) << ',' << format_double(c.curve.thresholds_db[i]) << ','
                << format_double(c.curve.probabilities[i]) << '\n';
    return out.str();
}

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

struct RunOutputs {
    std::vector<std::filesystem::path> files;
    std::filesystem::path manifest;
};

inline void write_file(const std::filesystem::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << data;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Writes whichever result sets are non-empty, plus a manifest with the
// config echo and per-file checksums.
inline RunOutputs write_outputs(const std::vector<BerPoint>& ber, const std::vector<EeRecord>& ee,
                                const std::vector<SchemeCcdf>& papr, const SimConfig& cfg,
                                const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " +
                                     ec.message());

    RunOutputs result;
    std::vector<std::pair<std::string, std::uint64_t>> checksums;
    auto emit = [&](const char* name, const std::string& data) {
        const auto path = out_dir / name;
        write_file(path, data);
        checksums.emplace_back(name, fnv1a64(data));
        result.files.push_back(path);
    };
    if (!ber.empty()) emit("ber.csv", ber_csv(ber));
    if (!ee.empty()) emit("ee.csv", ee_csv(ee));
    if (!papr.empty()) emit("papr_ccdf.csv", papr_csv(papr));

    std::ostringstream m;
    m << "tool_version: " << kToolVersion << "\n";
    const auto now = std::chrono::system_clock::now();
    m << "timestamp_unix: "
      << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count() << "\n";
    for (const auto& [name, sum] : checksums) {
        std::ostringstream hex;
        hex << std::hex << sum;
        m << "checksum_fnv1a64." << name << ": " << hex.str() << "\n";
    }
    std::istringstream cfg_lines(cfg.serialize());
    std::string line;
    while (std::getline(cfg_lines, line)) m << "config." << line << "\n";

    result.manifest = out_dir / "manifest.txt";
    write_file(result.manifest, m.str());
    return result;
}

// ---- CSV parse-back (round-trip checks and downstream tooling) ----

inline std::vector<BerPoint> parse_ber_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    std::vector<BerPoint> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::split(line, ',');
        if (f.size() != 5) throw std::runtime_error("ber.csv: malformed row: " + line);
        BerPoint p;
        p.scheme = f[0] == "mmse" ? Scheme::mmse : Scheme::md;
        p.snr_db = detail::parse_double(f[1], "snr_db");
        p.bits_sent = detail::parse_u64(f[2], "bits_sent");
        p.bit_errors = detail::parse_u64(f[3], "bit_errors");
        p.ber = detail::parse_double(f[4], "ber");
        out.push_back(p);
    }
    return out;
}

inline std::vector<EeRecord> parse_ee_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::vector<EeRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::split(line, ',');
        if (f.size() != 8) throw std::runtime_error("ee.csv: malformed row: " + line);
        EeRecord r;
        r.scheme = f[0] == "mmse" ? Scheme::mmse : Scheme::md;
        r.snr_db = detail::parse_double(f[1], "snr_db");
        r.ber = detail::parse_double(f[2], "ber");
        r.se_ideal = detail::parse_double(f[3], "se_ideal");
        r.se_eff = detail::parse_double(f[4], "se_eff");
        r.p_total_mw = detail::parse_double(f[5], "p_total_mw");
        r.bandwidth_hz = detail::parse_double(f[6], "bandwidth_hz");
        r.ee_bits_per_joule = detail::parse_double(f[7], "ee");
        out.push_back(r);
    }
    return out;
}

}  // namespace mdofdm
