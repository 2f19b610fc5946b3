#ifndef NFISAC_SIM_HPP
#define NFISAC_SIM_HPP

#include <armadillo>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nfisac/array.hpp"
#include "nfisac/channel.hpp"
#include "nfisac/design.hpp"
#include "nfisac/metrics.hpp"

namespace nfisac {

/// Full experiment description. Defaults are the paper-scale setup; the
/// desk preset trades array size and trial count for runtime.
struct SimConfig {
    arma::uword tx_antennas = 128;
    arma::uword rx_antennas = 16;
    double carrier_frequency = 300e9; // Hz
    double bandwidth = 20e9;          // Hz
    arma::uword subcarriers = 64;
    arma::uword targets = 3;
    arma::uword paths = 8;
    arma::uword rf_chains = 8;
    arma::uword streams = 4;
    double epsilon = 0.5;
    arma::uword dict_directions = 100;
    arma::uword dict_ranges = 20;
    std::array<double, 2> direction_interval = {-1.0471975511965976, 1.0471975511965976}; // radians
    std::array<double, 2> range_interval = {5.0, 30.0};                                   // meters
    arma::uword trials = 500;
    std::vector<double> snr_grid_db = {-20, -15, -10, -5, 0, 5, 10, 15, 20};
    std::vector<double> bandwidth_grid = {0, 5e9, 10e9, 15e9, 20e9, 25e9, 30e9, 35e9, 40e9};
    double bw_sweep_snr_db = 10.0;
    std::uint64_t seed = 1;
    std::string mode = "nearfield";    // nearfield | farfield
    std::string compensation = "bsa";  // bsa | none
    std::string baseline = "all";      // hybrid | fd_isac | fd_comm | all
    arma::uword extra_sweeps = 0;

    static SimConfig paper_preset() { return SimConfig{}; }
    static SimConfig desk_preset();

    void validate() const; // throws ConfigError

    ArrayConfig tx_array() const;
    ArrayConfig rx_array() const;
    PathScenario path_scenario(double bandwidth_hz) const;
};

/// Strict JSON (de)serialization: unknown keys are rejected, missing keys
/// keep their defaults.
SimConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const SimConfig& cfg);
SimConfig load_config_file(const std::string& path);

/// One aggregated output row of a sweep experiment.
struct ResultRow {
    double sweep_value = 0.0;
    std::string method;
    double mean_se = 0.0;
    double std_se = 0.0;
    double mean_target_gain = 0.0;
    arma::uword trials_used = 0;
};

struct ResultTable {
    std::string experiment;
    std::string sweep_name;
    std::uint64_t seed = 0;
    std::string config_json; // echo sufficient to reproduce the run
    std::vector<ResultRow> rows;
};

void write_csv(std::ostream& out, const ResultTable& table);
std::string to_csv_string(const ResultTable& table);

/// RFC-4180 field escaping.
std::string csv_escape(const std::string& field);

/// Everything one Monte Carlo trial needs: sampled targets and paths plus
/// the derived per-subcarrier quantities at a given bandwidth. Evaluation
/// always sees the squinted channel; the hybrid design works from the
/// squint-free reconstruction (physical path geometry only) and leaves the
/// squint correction to the compensated baseband.
struct TrialContext {
    std::vector<SteeringParams> targets;
    PathSet paths;
    arma::vec frequencies;
    std::vector<double> etas;
    std::vector<arma::cx_mat> channels;        // squinted channels (evaluation)
    std::vector<arma::cx_mat> comm_opt;        // SVD precoders of the true channels
    std::vector<arma::cx_mat> design_comm_opt; // SVD precoders of the squint-free channels
    arma::cx_mat radar;                        // steering at target locations (mode-dependent)
};

TrialContext make_trial_context(const SimConfig& cfg, double bandwidth_hz, arma::uword trial_index);

HybridDesign design_for_trial(const SimConfig& cfg, const Dictionary& dictionary,
                              const TrialContext& context);

/// Dictionary matching the configured mode (near-field grid or plane-wave
/// directions only).
Dictionary build_sim_dictionary(const SimConfig& cfg);

/// Unconstrained trade-off precoders used as the fully digital reference:
/// the auxiliary matrix is fit to the stacked communications precoders and
/// each subcarrier is scaled to transmit power N_S.
std::vector<arma::cx_mat> fd_isac_precoders(const std::vector<arma::cx_mat>& comm_opt,
                                            const arma::cx_mat& radar, double epsilon);

/// Mean beampattern gain at the true target locations, averaged over
/// subcarriers and targets.
double mean_target_gain(const std::vector<arma::cx_mat>& precoder_per_subcarrier,
                        const std::vector<SteeringParams>& targets, const ArrayConfig& tx,
                        const arma::vec& frequencies, arma::uword num_streams);

/// Fig. 2 style sweep: spectral efficiency of each requested method versus
/// SNR, averaged over `trials` seeded Monte Carlo channel draws. Trials may
/// run on several threads; aggregation order is fixed by trial index.
ResultTable run_se_vs_snr(const SimConfig& cfg, unsigned threads = 1);

/// Fig. 3 style sweep over bandwidth at a fixed SNR; always carries both
/// the squint-compensated and uncompensated hybrid variants.
ResultTable run_se_vs_bandwidth(const SimConfig& cfg, unsigned threads = 1);

struct BeampatternResult {
    arma::vec directions;
    arma::vec ranges;
    arma::mat mean_gains;              // averaged over subcarriers
    std::vector<SteeringParams> targets;
    std::vector<double> target_gains;  // per target, averaged over subcarriers
};

/// Subcarrier-averaged beampattern of a design on a probe grid, plus the
/// gains at the true target locations.
BeampatternResult run_beampattern(const SimConfig& cfg, const HybridDesign& design,
                                  const TrialContext& context, const arma::vec& directions,
                                  const arma::vec& ranges);

void write_beampattern_csv(std::ostream& out, const SimConfig& cfg, const BeampatternResult& result);

/// Structured dump of one design for inspection.
std::string design_dump_json(const SimConfig& cfg, const Dictionary& dictionary,
                             const TrialContext& context, const HybridDesign& design);

} // namespace nfisac

#endif
