// Command-line driver for the near-field wideband ISAC beamforming
// experiments. Every subcommand writes a self-describing CSV (or JSON for
// design-dump) whose metadata header is enough to reproduce the run.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nfisac/common.hpp"
#include "nfisac/sim.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_numerical_error = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string preset = "desk";
    std::string mode;
    std::string bsa;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long long trials = -1;
    unsigned threads = 1;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts, const std::string& default_out) {
    opts.out_path = default_out;
    cmd->add_option("--config", opts.config_path, "JSON config file (unknown keys rejected)");
    cmd->add_option("--out", opts.out_path, "Output path");
    cmd->add_option("--preset", opts.preset, "Base preset")
        ->check(CLI::IsMember({"paper", "desk"}));
    cmd->add_option("--mode", opts.mode, "Design mode")
        ->check(CLI::IsMember({"nearfield", "farfield"}));
    cmd->add_option("--bsa", opts.bsa, "Beam-squint compensation in the hybrid rows")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--seed", opts.seed, "Master seed")->each([&opts](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--trials", opts.trials, "Monte Carlo trial count");
    cmd->add_option("--threads", opts.threads, "Worker threads (results are thread-count independent)");
}

nfisac::SimConfig resolve_config(const CommonOptions& opts) {
    nfisac::SimConfig cfg = opts.preset == "paper" ? nfisac::SimConfig::paper_preset()
                                                   : nfisac::SimConfig::desk_preset();
    if (!opts.config_path.empty()) {
        cfg = nfisac::load_config_file(opts.config_path);
    }
    if (!opts.mode.empty()) {
        cfg.mode = opts.mode;
    }
    if (!opts.bsa.empty()) {
        cfg.compensation = opts.bsa == "on" ? "bsa" : "none";
    }
    if (opts.seed_set) {
        cfg.seed = opts.seed;
    }
    if (opts.trials >= 0) {
        cfg.trials = static_cast<arma::uword>(opts.trials);
    }
    cfg.validate();
    return cfg;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw nfisac::ConfigError("cannot open output file '" + path + "'");
    }
    out << contents;
}

int run_sweep(const CommonOptions& opts, bool bandwidth_sweep) {
    const nfisac::SimConfig cfg = resolve_config(opts);
    const nfisac::ResultTable table = bandwidth_sweep
                                          ? nfisac::run_se_vs_bandwidth(cfg, opts.threads)
                                          : nfisac::run_se_vs_snr(cfg, opts.threads);
    write_file(opts.out_path, nfisac::to_csv_string(table));
    std::cout << table.experiment << ": " << table.rows.size() << " rows -> " << opts.out_path
              << std::endl;
    return exit_ok;
}

int run_beampattern_cmd(const CommonOptions& opts) {
    const nfisac::SimConfig cfg = resolve_config(opts);
    const nfisac::Dictionary dictionary = nfisac::build_sim_dictionary(cfg);
    const nfisac::TrialContext context = nfisac::make_trial_context(cfg, cfg.bandwidth, 0);
    const nfisac::HybridDesign design = nfisac::design_for_trial(cfg, dictionary, context);

    // Probe on the near-field dictionary grid regardless of design mode.
    const nfisac::Dictionary probe =
        nfisac::build_dictionary(cfg.tx_array(), cfg.dict_directions, cfg.dict_ranges,
                                 cfg.range_interval[0], cfg.range_interval[1]);
    const nfisac::BeampatternResult result =
        nfisac::run_beampattern(cfg, design, context, probe.direction_grid, probe.range_grid);

    std::ostringstream out;
    nfisac::write_beampattern_csv(out, cfg, result);
    write_file(opts.out_path, out.str());
    std::cout << "beampattern: " << result.directions.n_elem << "x" << result.ranges.n_elem
              << " grid -> " << opts.out_path << std::endl;
    return exit_ok;
}

int run_design_dump(const CommonOptions& opts) {
    const nfisac::SimConfig cfg = resolve_config(opts);
    const nfisac::Dictionary dictionary = nfisac::build_sim_dictionary(cfg);
    const nfisac::TrialContext context = nfisac::make_trial_context(cfg, cfg.bandwidth, 0);
    const nfisac::HybridDesign design = nfisac::design_for_trial(cfg, dictionary, context);
    write_file(opts.out_path, nfisac::design_dump_json(cfg, dictionary, context, design) + "\n");
    std::cout << "design-dump: " << design.selected_atoms.size() << " atoms -> " << opts.out_path
              << std::endl;
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Near-field wideband hybrid beamforming simulator for THz ISAC"};
    app.require_subcommand(1);

    CommonOptions snr_opts, bw_opts, bp_opts, dump_opts;
    CLI::App* snr = app.add_subcommand("se-vs-snr", "Spectral efficiency versus SNR");
    add_common_options(snr, snr_opts, "se_vs_snr.csv");
    CLI::App* bw = app.add_subcommand("se-vs-bandwidth", "Spectral efficiency versus bandwidth");
    add_common_options(bw, bw_opts, "se_vs_bandwidth.csv");
    CLI::App* bp = app.add_subcommand("beampattern", "Radar beampattern of one design");
    add_common_options(bp, bp_opts, "beampattern.csv");
    CLI::App* dump = app.add_subcommand("design-dump", "Dump one hybrid design as JSON");
    add_common_options(dump, dump_opts, "design.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        if (snr->parsed()) {
            return run_sweep(snr_opts, false);
        }
        if (bw->parsed()) {
            return run_sweep(bw_opts, true);
        }
        if (bp->parsed()) {
            return run_beampattern_cmd(bp_opts);
        }
        if (dump->parsed()) {
            return run_design_dump(dump_opts);
        }
    } catch (const nfisac::ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return exit_config_error;
    } catch (const nfisac::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << std::endl;
        return exit_numerical_error;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << std::endl;
        return exit_numerical_error;
    }
    return exit_ok;
}
