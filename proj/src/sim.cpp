#include "nfisac/sim.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nfisac/common.hpp"

namespace nfisac {

namespace {

constexpr const char* artifact_version = "nfisac 0.1.0";

std::string fmt_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

double db_to_noise_variance(double snr_db) {
    // SNR is 1 / sigma^2 with unit-average-power symbols.
    return std::pow(10.0, -snr_db / 10.0);
}

double sample_std(const std::vector<double>& values, double mean) {
    if (values.size() < 2) {
        return 0.0;
    }
    double accum = 0.0;
    for (double v : values) {
        accum += (v - mean) * (v - mean);
    }
    return std::sqrt(accum / static_cast<double>(values.size() - 1));
}

// Runs body(t) for t = 0..trials-1, possibly on several threads. Results
// must be written to per-trial slots; the caller aggregates in index order,
// which keeps the output independent of the scheduling.
template <typename Body>
void for_each_trial(arma::uword trials, unsigned threads, Body&& body) {
    if (threads <= 1 || trials <= 1) {
        for (arma::uword t = 0; t < trials; ++t) {
            body(t);
        }
        return;
    }

    std::atomic<arma::uword> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            const arma::uword t = next.fetch_add(1);
            if (t >= trials) {
                return;
            }
            try {
                body(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };

    const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(trials));
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned i = 0; i < count; ++i) {
        pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::vector<std::string> method_labels(const SimConfig& cfg, bool bandwidth_run) {
    const std::string hybrid_label =
        cfg.compensation == "bsa" ? "hybrid_bsa" : "hybrid_nobsa";
    std::vector<std::string> labels;
    if (cfg.baseline == "all") {
        labels = {"fd_comm", "fd_isac"};
        if (bandwidth_run) {
            labels.push_back("hybrid_bsa");
            labels.push_back("hybrid_nobsa");
        } else {
            labels.push_back(hybrid_label);
        }
    } else if (cfg.baseline == "hybrid") {
        if (bandwidth_run) {
            labels = {"hybrid_bsa", "hybrid_nobsa"};
        } else {
            labels = {hybrid_label};
        }
    } else {
        labels = {cfg.baseline};
    }
    return labels;
}

bool needs_hybrid(const std::vector<std::string>& labels) {
    for (const std::string& label : labels) {
        if (label.rfind("hybrid", 0) == 0) {
            return true;
        }
    }
    return false;
}

std::vector<arma::cx_mat> precoders_for(const std::string& label, const TrialContext& context,
                                        const HybridDesign* design, const SimConfig& cfg) {
    std::vector<arma::cx_mat> precoders;
    const arma::uword subcarriers = context.channels.size();
    precoders.reserve(subcarriers);

    if (label == "fd_comm") {
        return context.comm_opt;
    }
    if (label == "fd_isac") {
        return fd_isac_precoders(context.comm_opt, context.radar, cfg.epsilon);
    }
    if (design == nullptr) {
        throw std::logic_error("precoders_for: hybrid method requested without a design");
    }
    const std::vector<arma::cx_mat>& baseband =
        (label == "hybrid_bsa") ? design->bsa_baseband : design->baseband;
    for (arma::uword m = 0; m < subcarriers; ++m) {
        precoders.push_back(design->analog * baseband[m]);
    }
    return precoders;
}

nlohmann::json matrix_to_json(const arma::cx_mat& matrix) {
    nlohmann::json real = nlohmann::json::array();
    nlohmann::json imag = nlohmann::json::array();
    for (arma::uword i = 0; i < matrix.n_rows; ++i) {
        nlohmann::json row_re = nlohmann::json::array();
        nlohmann::json row_im = nlohmann::json::array();
        for (arma::uword j = 0; j < matrix.n_cols; ++j) {
            row_re.push_back(matrix(i, j).real());
            row_im.push_back(matrix(i, j).imag());
        }
        real.push_back(row_re);
        imag.push_back(row_im);
    }
    return nlohmann::json{{"rows", matrix.n_rows}, {"cols", matrix.n_cols},
                          {"real", real}, {"imag", imag}};
}

nlohmann::json range_to_json(double range) {
    if (std::isinf(range)) {
        return "inf";
    }
    return range;
}

} // namespace

SimConfig SimConfig::desk_preset() {
    SimConfig cfg;
    cfg.tx_antennas = 32;
    cfg.rx_antennas = 8;
    cfg.subcarriers = 16;
    cfg.targets = 2;
    cfg.paths = 4;
    cfg.rf_chains = 4;
    cfg.streams = 2;
    cfg.dict_directions = 40;
    cfg.dict_ranges = 10;
    cfg.trials = 50;
    cfg.snr_grid_db = {-10, -5, 0, 5, 10};
    cfg.bandwidth_grid = {0, 5e9, 10e9, 20e9, 30e9, 40e9};
    return cfg;
}

void SimConfig::validate() const {
    if (tx_antennas < 2 || rx_antennas < 2) {
        throw ConfigError("config: need at least 2 antennas on each side");
    }
    if (!(carrier_frequency > 0.0)) {
        throw ConfigError("config: carrier_frequency must be positive");
    }
    if (bandwidth < 0.0) {
        throw ConfigError("config: bandwidth must be non-negative");
    }
    if (subcarriers < 1 || targets < 1 || paths < 1 || trials < 1) {
        throw ConfigError("config: subcarriers, targets, paths and trials must be positive");
    }
    if (!(targets <= streams && streams <= rf_chains && rf_chains <= tx_antennas)) {
        throw ConfigError("config: need targets <= streams <= rf_chains <= tx_antennas");
    }
    if (streams > rx_antennas) {
        throw ConfigError("config: need streams <= rx_antennas");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ConfigError("config: epsilon must lie in [0, 1]");
    }
    if (dict_directions < 1 || dict_ranges < 1) {
        throw ConfigError("config: dictionary grid must be non-empty");
    }
    constexpr double half_pi = 1.5707963267948966;
    if (!(direction_interval[0] < direction_interval[1]) ||
        direction_interval[0] < -half_pi || direction_interval[1] > half_pi) {
        throw ConfigError("config: direction_interval must be increasing within [-pi/2, pi/2]");
    }
    if (!(range_interval[0] > 0.0) || !(range_interval[0] <= range_interval[1])) {
        throw ConfigError("config: range_interval must satisfy 0 < lo <= hi");
    }
    if (snr_grid_db.empty()) {
        throw ConfigError("config: snr_grid_db must be non-empty");
    }
    for (double b : bandwidth_grid) {
        if (b < 0.0) {
            throw ConfigError("config: bandwidth_grid entries must be non-negative");
        }
    }
    if (mode != "nearfield" && mode != "farfield") {
        throw ConfigError("config: mode must be nearfield or farfield");
    }
    if (compensation != "bsa" && compensation != "none") {
        throw ConfigError("config: compensation must be bsa or none");
    }
    if (baseline != "hybrid" && baseline != "fd_isac" && baseline != "fd_comm" &&
        baseline != "all") {
        throw ConfigError("config: baseline must be hybrid, fd_isac, fd_comm or all");
    }
}

ArrayConfig SimConfig::tx_array() const {
    return ArrayConfig::half_wavelength(tx_antennas, carrier_frequency);
}

ArrayConfig SimConfig::rx_array() const {
    return ArrayConfig::half_wavelength(rx_antennas, carrier_frequency);
}

PathScenario SimConfig::path_scenario(double bandwidth_hz) const {
    PathScenario scenario;
    scenario.num_paths = paths;
    scenario.sin_lo = std::sin(direction_interval[0]);
    scenario.sin_hi = std::sin(direction_interval[1]);
    scenario.range_lo = range_interval[0];
    scenario.range_hi = range_interval[1];
    scenario.bandwidth = bandwidth_hz;
    scenario.cp_length = std::max<arma::uword>(subcarriers / 4, 1);
    return scenario;
}

SimConfig config_from_json_text(const std::string& text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!parsed.is_object()) {
        throw ConfigError("config: expected a JSON object");
    }

    SimConfig cfg;
    try {
        for (const auto& [key, value] : parsed.items()) {
            if (key == "tx_antennas") {
                cfg.tx_antennas = value.get<arma::uword>();
            } else if (key == "rx_antennas") {
                cfg.rx_antennas = value.get<arma::uword>();
            } else if (key == "carrier_frequency") {
                cfg.carrier_frequency = value.get<double>();
            } else if (key == "bandwidth") {
                cfg.bandwidth = value.get<double>();
            } else if (key == "subcarriers") {
                cfg.subcarriers = value.get<arma::uword>();
            } else if (key == "targets") {
                cfg.targets = value.get<arma::uword>();
            } else if (key == "paths") {
                cfg.paths = value.get<arma::uword>();
            } else if (key == "rf_chains") {
                cfg.rf_chains = value.get<arma::uword>();
            } else if (key == "streams") {
                cfg.streams = value.get<arma::uword>();
            } else if (key == "epsilon") {
                cfg.epsilon = value.get<double>();
            } else if (key == "dict_directions") {
                cfg.dict_directions = value.get<arma::uword>();
            } else if (key == "dict_ranges") {
                cfg.dict_ranges = value.get<arma::uword>();
            } else if (key == "direction_interval") {
                cfg.direction_interval = value.get<std::array<double, 2>>();
            } else if (key == "range_interval") {
                cfg.range_interval = value.get<std::array<double, 2>>();
            } else if (key == "trials") {
                cfg.trials = value.get<arma::uword>();
            } else if (key == "snr_grid_db") {
                cfg.snr_grid_db = value.get<std::vector<double>>();
            } else if (key == "bandwidth_grid") {
                cfg.bandwidth_grid = value.get<std::vector<double>>();
            } else if (key == "bw_sweep_snr_db") {
                cfg.bw_sweep_snr_db = value.get<double>();
            } else if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "mode") {
                cfg.mode = value.get<std::string>();
            } else if (key == "compensation") {
                cfg.compensation = value.get<std::string>();
            } else if (key == "baseline") {
                cfg.baseline = value.get<std::string>();
            } else if (key == "extra_sweeps") {
                cfg.extra_sweeps = value.get<arma::uword>();
            } else {
                throw ConfigError("config: unknown key '" + key + "'");
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: bad value: ") + e.what());
    }
    return cfg;
}

std::string config_to_json_text(const SimConfig& cfg) {
    nlohmann::json out{
        {"tx_antennas", cfg.tx_antennas},
        {"rx_antennas", cfg.rx_antennas},
        {"carrier_frequency", cfg.carrier_frequency},
        {"bandwidth", cfg.bandwidth},
        {"subcarriers", cfg.subcarriers},
        {"targets", cfg.targets},
        {"paths", cfg.paths},
        {"rf_chains", cfg.rf_chains},
        {"streams", cfg.streams},
        {"epsilon", cfg.epsilon},
        {"dict_directions", cfg.dict_directions},
        {"dict_ranges", cfg.dict_ranges},
        {"direction_interval", cfg.direction_interval},
        {"range_interval", cfg.range_interval},
        {"trials", cfg.trials},
        {"snr_grid_db", cfg.snr_grid_db},
        {"bandwidth_grid", cfg.bandwidth_grid},
        {"bw_sweep_snr_db", cfg.bw_sweep_snr_db},
        {"seed", cfg.seed},
        {"mode", cfg.mode},
        {"compensation", cfg.compensation},
        {"baseline", cfg.baseline},
        {"extra_sweeps", cfg.extra_sweeps},
    };
    return out.dump();
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str());
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        return field;
    }
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') {
            quoted += "\"\"";
        } else {
            quoted += c;
        }
    }
    quoted += "\"";
    return quoted;
}

void write_csv(std::ostream& out, const ResultTable& table) {
    out << "# " << artifact_version << "\n";
    out << "# experiment: " << table.experiment << "\n";
    out << "# sweep: " << table.sweep_name << "\n";
    out << "# seed: " << table.seed << "\n";
    out << "# config: " << table.config_json << "\n";
    out << "sweep_value,method,mean_se,std_se,mean_target_gain,trials\n";
    for (const ResultRow& row : table.rows) {
        out << fmt_double(row.sweep_value) << ',' << csv_escape(row.method) << ','
            << fmt_double(row.mean_se) << ',' << fmt_double(row.std_se) << ','
            << fmt_double(row.mean_target_gain) << ',' << row.trials_used << "\n";
    }
}

std::string to_csv_string(const ResultTable& table) {
    std::ostringstream out;
    write_csv(out, table);
    return out.str();
}

Dictionary build_sim_dictionary(const SimConfig& cfg) {
    const ArrayConfig tx = cfg.tx_array();
    if (cfg.mode == "farfield") {
        return build_far_field_dictionary(tx, cfg.dict_directions);
    }
    return build_dictionary(tx, cfg.dict_directions, cfg.dict_ranges, cfg.range_interval[0],
                            cfg.range_interval[1]);
}

TrialContext make_trial_context(const SimConfig& cfg, double bandwidth_hz, arma::uword trial_index) {
    const ArrayConfig tx = cfg.tx_array();
    const ArrayConfig rx = cfg.rx_array();

    std::mt19937_64 rng = make_trial_rng(cfg.seed, trial_index);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    const double sin_lo = std::sin(cfg.direction_interval[0]);
    const double sin_hi = std::sin(cfg.direction_interval[1]);

    TrialContext context;
    context.targets.reserve(cfg.targets);
    for (arma::uword k = 0; k < cfg.targets; ++k) {
        const double direction = sin_lo + (sin_hi - sin_lo) * u(rng);
        const double range =
            cfg.range_interval[0] + (cfg.range_interval[1] - cfg.range_interval[0]) * u(rng);
        context.targets.push_back(SteeringParams{direction, range});
    }

    context.paths = sample_paths(rng, cfg.path_scenario(bandwidth_hz));

    const ChannelRealization realization =
        synthesize_channel(context.paths, tx, rx, bandwidth_hz, cfg.subcarriers, true);
    const ChannelRealization squint_free =
        synthesize_channel(context.paths, tx, rx, bandwidth_hz, cfg.subcarriers, false);
    context.frequencies = realization.subcarrier_frequencies;
    context.channels = realization.per_subcarrier;

    context.etas.reserve(cfg.subcarriers);
    for (arma::uword m = 0; m < cfg.subcarriers; ++m) {
        context.etas.push_back(cfg.carrier_frequency / context.frequencies(m));
    }

    context.comm_opt.reserve(cfg.subcarriers);
    context.design_comm_opt.reserve(cfg.subcarriers);
    for (arma::uword m = 0; m < cfg.subcarriers; ++m) {
        context.comm_opt.push_back(optimal_beamformer(context.channels[m], cfg.streams));
        context.design_comm_opt.push_back(
            optimal_beamformer(squint_free.per_subcarrier[m], cfg.streams));
    }

    if (cfg.mode == "farfield") {
        std::vector<SteeringParams> plane_targets;
        plane_targets.reserve(context.targets.size());
        for (const SteeringParams& target : context.targets) {
            plane_targets.push_back(
                SteeringParams{target.direction, std::numeric_limits<double>::infinity()});
        }
        context.radar = radar_beamformer(plane_targets, tx);
    } else {
        context.radar = radar_beamformer(context.targets, tx);
    }
    return context;
}

HybridDesign design_for_trial(const SimConfig& cfg, const Dictionary& dictionary,
                              const TrialContext& context) {
    TradeoffConfig tradeoff{cfg.epsilon, cfg.rf_chains, cfg.streams, cfg.targets};
    return design_hybrid(dictionary, context.design_comm_opt, context.radar, tradeoff,
                         context.etas, cfg.extra_sweeps);
}

std::vector<arma::cx_mat> fd_isac_precoders(const std::vector<arma::cx_mat>& comm_opt,
                                            const arma::cx_mat& radar, double epsilon) {
    if (comm_opt.empty()) {
        throw std::invalid_argument("fd_isac_precoders: no subcarriers");
    }
    if (epsilon == 1.0) {
        return comm_opt;
    }

    const arma::uword streams = comm_opt.front().n_cols;
    const arma::uword subcarriers = comm_opt.size();

    arma::cx_mat comm_stack(comm_opt.front().n_rows, subcarriers * streams);
    for (arma::uword m = 0; m < subcarriers; ++m) {
        comm_stack.cols(m * streams, (m + 1) * streams - 1) = comm_opt[m];
    }

    // Rotate the radar columns toward the stacked communications precoder.
    arma::cx_mat left, right;
    arma::vec singular_values;
    if (!arma::svd_econ(left, singular_values, right, arma::cx_mat(radar.t() * comm_stack))) {
        throw NumericalError("fd_isac_precoders: SVD failed");
    }
    const arma::cx_mat pi = left * right.t();

    std::vector<arma::cx_mat> precoders;
    precoders.reserve(subcarriers);
    for (arma::uword m = 0; m < subcarriers; ++m) {
        arma::cx_mat precoder =
            epsilon * comm_opt[m] +
            (1.0 - epsilon) * radar * pi.cols(m * streams, (m + 1) * streams - 1);
        const double norm = arma::norm(precoder, "fro");
        if (!(norm > 0.0)) {
            throw NumericalError("fd_isac_precoders: zero precoder");
        }
        precoder *= std::sqrt(static_cast<double>(streams)) / norm;
        precoders.push_back(std::move(precoder));
    }
    return precoders;
}

double mean_target_gain(const std::vector<arma::cx_mat>& precoder_per_subcarrier,
                        const std::vector<SteeringParams>& targets, const ArrayConfig& tx,
                        const arma::vec& frequencies, arma::uword num_streams) {
    if (precoder_per_subcarrier.size() != frequencies.n_elem || targets.empty()) {
        throw std::invalid_argument("mean_target_gain: inconsistent inputs");
    }
    double total = 0.0;
    for (arma::uword m = 0; m < frequencies.n_elem; ++m) {
        for (const SteeringParams& target : targets) {
            const arma::cx_vec probe = steering_vector(tx, target, frequencies(m));
            // a^H R a = ||F^H a||^2 / N_S
            total += std::pow(arma::norm(precoder_per_subcarrier[m].t() * probe, 2), 2) /
                     static_cast<double>(num_streams);
        }
    }
    return total / static_cast<double>(frequencies.n_elem * targets.size());
}

ResultTable run_se_vs_snr(const SimConfig& cfg, unsigned threads) {
    cfg.validate();
    const Dictionary dictionary = build_sim_dictionary(cfg);
    const std::vector<std::string> labels = method_labels(cfg, false);
    const bool hybrid_needed = needs_hybrid(labels);
    const ArrayConfig tx = cfg.tx_array();

    const arma::uword snr_points = cfg.snr_grid_db.size();
    // se[label][trial * snr_points + s], gains[label][trial]
    std::vector<std::vector<double>> se(labels.size(),
                                        std::vector<double>(cfg.trials * snr_points, 0.0));
    std::vector<std::vector<double>> gains(labels.size(), std::vector<double>(cfg.trials, 0.0));

    for_each_trial(cfg.trials, threads, [&](arma::uword trial) {
        const TrialContext context = make_trial_context(cfg, cfg.bandwidth, trial);
        HybridDesign design;
        if (hybrid_needed) {
            design = design_for_trial(cfg, dictionary, context);
        }
        for (std::size_t li = 0; li < labels.size(); ++li) {
            const std::vector<arma::cx_mat> precoders =
                precoders_for(labels[li], context, hybrid_needed ? &design : nullptr, cfg);
            for (arma::uword s = 0; s < snr_points; ++s) {
                se[li][trial * snr_points + s] = spectral_efficiency_precoded(
                    context.channels, precoders, db_to_noise_variance(cfg.snr_grid_db[s]),
                    cfg.streams);
            }
            gains[li][trial] = mean_target_gain(precoders, context.targets, tx,
                                                context.frequencies, cfg.streams);
        }
    });

    ResultTable table;
    table.experiment = "se-vs-snr";
    table.sweep_name = "snr_db";
    table.seed = cfg.seed;
    table.config_json = config_to_json_text(cfg);
    for (arma::uword s = 0; s < snr_points; ++s) {
        for (std::size_t li = 0; li < labels.size(); ++li) {
            std::vector<double> per_trial(cfg.trials);
            for (arma::uword t = 0; t < cfg.trials; ++t) {
                per_trial[t] = se[li][t * snr_points + s];
            }
            const double mean_se_value =
                std::accumulate(per_trial.begin(), per_trial.end(), 0.0) /
                static_cast<double>(cfg.trials);
            const double mean_gain =
                std::accumulate(gains[li].begin(), gains[li].end(), 0.0) /
                static_cast<double>(cfg.trials);
            table.rows.push_back(ResultRow{cfg.snr_grid_db[s], labels[li], mean_se_value,
                                           sample_std(per_trial, mean_se_value), mean_gain,
                                           cfg.trials});
        }
    }
    return table;
}

ResultTable run_se_vs_bandwidth(const SimConfig& cfg, unsigned threads) {
    cfg.validate();
    if (cfg.bandwidth_grid.empty()) {
        throw ConfigError("config: bandwidth_grid must be non-empty for the bandwidth sweep");
    }
    const Dictionary dictionary = build_sim_dictionary(cfg);
    const std::vector<std::string> labels = method_labels(cfg, true);
    const bool hybrid_needed = needs_hybrid(labels);
    const ArrayConfig tx = cfg.tx_array();
    const double noise_variance = db_to_noise_variance(cfg.bw_sweep_snr_db);

    ResultTable table;
    table.experiment = "se-vs-bandwidth";
    table.sweep_name = "bandwidth_hz";
    table.seed = cfg.seed;
    table.config_json = config_to_json_text(cfg);

    for (double bandwidth : cfg.bandwidth_grid) {
        std::vector<std::vector<double>> se(labels.size(), std::vector<double>(cfg.trials, 0.0));
        std::vector<std::vector<double>> gains(labels.size(), std::vector<double>(cfg.trials, 0.0));

        for_each_trial(cfg.trials, threads, [&](arma::uword trial) {
            const TrialContext context = make_trial_context(cfg, bandwidth, trial);
            HybridDesign design;
            if (hybrid_needed) {
                design = design_for_trial(cfg, dictionary, context);
            }
            for (std::size_t li = 0; li < labels.size(); ++li) {
                const std::vector<arma::cx_mat> precoders =
                    precoders_for(labels[li], context, hybrid_needed ? &design : nullptr, cfg);
                se[li][trial] = spectral_efficiency_precoded(context.channels, precoders,
                                                             noise_variance, cfg.streams);
                gains[li][trial] = mean_target_gain(precoders, context.targets, tx,
                                                    context.frequencies, cfg.streams);
            }
        });

        for (std::size_t li = 0; li < labels.size(); ++li) {
            const double mean_se_value = std::accumulate(se[li].begin(), se[li].end(), 0.0) /
                                         static_cast<double>(cfg.trials);
            const double mean_gain = std::accumulate(gains[li].begin(), gains[li].end(), 0.0) /
                                     static_cast<double>(cfg.trials);
            table.rows.push_back(ResultRow{bandwidth, labels[li], mean_se_value,
                                           sample_std(se[li], mean_se_value), mean_gain,
                                           cfg.trials});
        }
    }
    return table;
}

BeampatternResult run_beampattern(const SimConfig& cfg, const HybridDesign& design,
                                  const TrialContext& context, const arma::vec& directions,
                                  const arma::vec& ranges) {
    const ArrayConfig tx = cfg.tx_array();
    const arma::uword subcarriers = context.channels.size();
    const std::vector<arma::cx_mat>& baseband =
        cfg.compensation == "bsa" ? design.bsa_baseband : design.baseband;

    BeampatternResult result;
    result.directions = directions;
    result.ranges = ranges;
    result.targets = context.targets;
    result.mean_gains.zeros(directions.n_elem, ranges.n_elem);
    result.target_gains.assign(context.targets.size(), 0.0);

    for (arma::uword m = 0; m < subcarriers; ++m) {
        const arma::cx_mat covariance = transmit_covariance(design.analog, baseband[m], cfg.streams);
        result.mean_gains +=
            beampattern_gains(covariance, directions, ranges, tx, context.frequencies(m));
        for (std::size_t k = 0; k < context.targets.size(); ++k) {
            const arma::cx_vec probe =
                steering_vector(tx, context.targets[k], context.frequencies(m));
            result.target_gains[k] += std::real(arma::cdot(probe, covariance * probe));
        }
    }
    result.mean_gains /= static_cast<double>(subcarriers);
    for (double& gain : result.target_gains) {
        gain /= static_cast<double>(subcarriers);
    }
    return result;
}

void write_beampattern_csv(std::ostream& out, const SimConfig& cfg,
                           const BeampatternResult& result) {
    out << "# " << artifact_version << "\n";
    out << "# experiment: beampattern\n";
    out << "# seed: " << cfg.seed << "\n";
    out << "# config: " << config_to_json_text(cfg) << "\n";
    out << "direction,range_m,gain,is_target\n";
    for (arma::uword i = 0; i < result.directions.n_elem; ++i) {
        for (arma::uword j = 0; j < result.ranges.n_elem; ++j) {
            out << fmt_double(result.directions(i)) << ',' << fmt_double(result.ranges(j)) << ','
                << fmt_double(result.mean_gains(i, j)) << ",0\n";
        }
    }
    for (std::size_t k = 0; k < result.targets.size(); ++k) {
        out << fmt_double(result.targets[k].direction) << ','
            << fmt_double(result.targets[k].range) << ',' << fmt_double(result.target_gains[k])
            << ",1\n";
    }
}

std::string design_dump_json(const SimConfig& cfg, const Dictionary& dictionary,
                             const TrialContext& context, const HybridDesign& design) {
    nlohmann::json atoms = nlohmann::json::array();
    for (arma::uword index : design.selected_atoms) {
        atoms.push_back(nlohmann::json{{"index", index},
                                       {"direction", dictionary.grid[index].direction},
                                       {"range_m", range_to_json(dictionary.grid[index].range)}});
    }

    nlohmann::json targets = nlohmann::json::array();
    for (const SteeringParams& target : context.targets) {
        targets.push_back(
            nlohmann::json{{"direction", target.direction}, {"range_m", range_to_json(target.range)}});
    }

    nlohmann::json baseband = nlohmann::json::array();
    nlohmann::json bsa = nlohmann::json::array();
    nlohmann::json power = nlohmann::json::array();
    for (std::size_t m = 0; m < design.baseband.size(); ++m) {
        baseband.push_back(matrix_to_json(design.baseband[m]));
        bsa.push_back(matrix_to_json(design.bsa_baseband[m]));
        power.push_back(std::pow(arma::norm(design.analog * design.baseband[m], "fro"), 2));
    }

    nlohmann::json freqs = nlohmann::json::array();
    for (arma::uword m = 0; m < context.frequencies.n_elem; ++m) {
        freqs.push_back(context.frequencies(m));
    }

    nlohmann::json out{
        {"config", nlohmann::json::parse(config_to_json_text(cfg))},
        {"targets", targets},
        {"selected_atoms", atoms},
        {"analog", matrix_to_json(design.analog)},
        {"baseband", baseband},
        {"bsa_baseband", bsa},
        {"auxiliary", matrix_to_json(design.auxiliary)},
        {"residual_history", design.residual_history},
        {"per_subcarrier_power", power},
        {"subcarrier_frequencies_hz", freqs},
    };
    return out.dump(2);
}

} // namespace nfisac
