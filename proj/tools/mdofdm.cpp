// Command-line driver: BER / EE / PAPR sweeps emitted as CSV plus a run
// manifest. See README.md for the config file format.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mdofdm/harness.hpp"

namespace {

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Plots ber.csv / ee.csv / papr_ccdf.csv from this directory."""
import csv, os
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))

def rows(name):
    path = os.path.join(here, name)
    if not os.path.exists(path):
        return []
    with open(path) as f:
        return list(csv.DictReader(f))

def by_scheme(data):
    out = {}
    for r in data:
        out.setdefault(r["scheme"], []).append(r)
    return out

ber = by_scheme(rows("ber.csv"))
if ber:
    plt.figure()
    for scheme, pts in ber.items():
        plt.semilogy([float(p["snr_db"]) for p in pts],
                     [float(p["ber"]) for p in pts], marker="o", label=scheme)
    plt.xlabel("SNR (dB)"); plt.ylabel("BER"); plt.grid(True, which="both")
    plt.legend(); plt.savefig(os.path.join(here, "ber.png"), dpi=150)

ee = by_scheme(rows("ee.csv"))
if ee:
    plt.figure()
    for scheme, pts in ee.items():
        plt.plot([float(p["snr_db"]) for p in pts],
                 [float(p["ee_bits_per_joule"]) for p in pts], marker="o", label=scheme)
    plt.xlabel("SNR (dB)"); plt.ylabel("EE (bits/Joule)"); plt.grid(True)
    plt.legend(); plt.savefig(os.path.join(here, "ee.png"), dpi=150)

papr = by_scheme(rows("papr_ccdf.csv"))
if papr:
    plt.figure()
    for scheme, pts in papr.items():
        plt.semilogy([float(p["papr0_db"]) for p in pts],
                     [float(p["ccdf"]) for p in pts], label=scheme)
    plt.xlabel("PAPR0 (dB)"); plt.ylabel("CCDF"); plt.grid(True, which="both")
    plt.ylim(1e-4, 1); plt.legend()
    plt.savefig(os.path.join(here, "papr_ccdf.png"), dpi=150)

print("wrote plots to", here)
)PY";

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::string snr_override;
    bool plot_script = false;
};

mdofdm::SimConfig build_config(const CliOptions& opt) {
    mdofdm::SimConfig cfg =
        opt.config_path.empty() ? mdofdm::SimConfig{} : mdofdm::SimConfig::load(opt.config_path);
    if (opt.seed) {
        cfg.seed = *opt.seed;
    } else if (const char* env = std::getenv("MDOFDM_SEED")) {
        cfg.seed = mdofdm::detail::parse_u64(env, "MDOFDM_SEED");
    }
    if (!opt.snr_override.empty())
        cfg.snr_grid_db = mdofdm::detail::parse_grid(opt.snr_override, "--snr");
    cfg.validate();
    return cfg;
}

int run(const CliOptions& opt, bool want_ber, bool want_ee, bool want_papr) {
    const mdofdm::SimConfig cfg = build_config(opt);
    std::vector<mdofdm::BerPoint> ber;
    std::vector<mdofdm::EeRecord> ee;
    std::vector<mdofdm::SchemeCcdf> papr;
    if (want_ber || want_ee) {
        ber = mdofdm::run_ber_sweep(cfg, opt.workers);
        if (want_ee) ee = mdofdm::ee_from_ber(ber, cfg);
        if (!want_ber) ber.clear();
    }
    if (want_papr) papr = mdofdm::run_papr(cfg, opt.workers);

    const auto outputs = mdofdm::write_outputs(ber, ee, papr, cfg, opt.out_dir);
    for (const auto& f : outputs.files) std::cout << "wrote " << f.string() << "\n";
    std::cout << "wrote " << outputs.manifest.string() << "\n";
    if (opt.plot_script) {
        const auto script = std::filesystem::path(opt.out_dir) / "plot.py";
        mdofdm::write_file(script, kPlotScript);
        std::filesystem::permissions(script, std::filesystem::perms::owner_exec,
                                     std::filesystem::perm_options::add);
        std::cout << "wrote " << script.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MD-OFDM vs MMSE MIMO-OFDM link-level simulator"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "Config file (flat key: value format)");
    app.add_option("--seed", opt.seed, "Master seed (overrides config and MDOFDM_SEED)");
    app.add_option("--out", opt.out_dir, "Output directory");
    app.add_option("--workers", opt.workers, "Worker thread count")->check(CLI::PositiveNumber);
    app.add_option("--snr", opt.snr_override, "SNR grid override, LO:STEP:HI in dB");
    app.add_flag("--plot-script", opt.plot_script, "Also emit a plot.py referencing the CSVs");

    auto* ber = app.add_subcommand("ber", "BER vs SNR sweep -> ber.csv");
    auto* ee = app.add_subcommand("ee", "Energy-efficiency sweep -> ee.csv");
    auto* papr = app.add_subcommand("papr", "PAPR CCDF estimation -> papr_ccdf.csv");
    auto* all = app.add_subcommand("all", "All three experiments");
    // accept the shared options before or after the subcommand name
    for (CLI::App* sub : {ber, ee, papr, all}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        const bool want_ee = ee->parsed() || all->parsed();
        const bool want_ber = ber->parsed() || all->parsed();
        const bool want_papr = papr->parsed() || all->parsed();
        return run(opt, want_ber, want_ee, want_papr);
    } catch (const mdofdm::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
