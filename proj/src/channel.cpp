#include "nfisac/channel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "nfisac/common.hpp"

namespace nfisac {

namespace {

constexpr double two_pi = 2.0 * 3.14159265358979323846;

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return lo + (hi - lo) * u(rng);
}

} // namespace

void validate(const PathScenario& scenario) {
    if (scenario.num_paths < 1) {
        throw std::invalid_argument("PathScenario: need at least one path");
    }
    if (!(scenario.sin_lo <= scenario.sin_hi) || std::abs(scenario.sin_lo) > 1.0 ||
        std::abs(scenario.sin_hi) > 1.0) {
        throw std::invalid_argument("PathScenario: direction interval is empty or out of [-1, 1]");
    }
    if (!(scenario.range_lo > 0.0) || !(scenario.range_lo <= scenario.range_hi)) {
        throw std::invalid_argument("PathScenario: range interval is empty or non-positive");
    }
    if (scenario.bandwidth < 0.0 || scenario.cp_length < 1) {
        throw std::invalid_argument("PathScenario: invalid bandwidth or CP length");
    }
}

arma::vec subcarrier_frequencies(double carrier_frequency, double bandwidth,
                                 arma::uword num_subcarriers) {
    if (!(carrier_frequency > 0.0) || bandwidth < 0.0 || num_subcarriers < 1) {
        throw std::invalid_argument("subcarrier_frequencies: invalid arguments");
    }
    arma::vec freqs(num_subcarriers);
    const double step = bandwidth / static_cast<double>(num_subcarriers);
    const double mid = static_cast<double>(num_subcarriers - 1) / 2.0;
    for (arma::uword m = 0; m < num_subcarriers; ++m) {
        freqs(m) = carrier_frequency + step * (static_cast<double>(m) - mid);
    }
    return freqs;
}

PathSet sample_paths(std::mt19937_64& rng, const PathScenario& scenario) {
    validate(scenario);

    const arma::uword count = scenario.num_paths;
    const double delay_bound =
        scenario.bandwidth > 0.0
            ? static_cast<double>(scenario.cp_length - 1) / scenario.bandwidth
            : 0.0;

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    PathSet paths;
    paths.gains.set_size(count);
    paths.delays.set_size(count);
    paths.tx.reserve(count);
    paths.rx.reserve(count);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (arma::uword l = 0; l < count; ++l) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        paths.gains(l) = arma::cx_double(re * inv_sqrt2, im * inv_sqrt2);
        paths.delays(l) = u(rng) * delay_bound;
        paths.tx.push_back(SteeringParams{uniform_in(rng, scenario.sin_lo, scenario.sin_hi),
                                          uniform_in(rng, scenario.range_lo, scenario.range_hi)});
        paths.rx.push_back(SteeringParams{uniform_in(rng, scenario.sin_lo, scenario.sin_hi),
                                          uniform_in(rng, scenario.range_lo, scenario.range_hi)});
    }
    return paths;
}

arma::cx_mat channel_at(const PathSet& paths, const ArrayConfig& tx_cfg, const ArrayConfig& rx_cfg,
                        double frequency, bool squint) {
    validate(tx_cfg);
    validate(rx_cfg);
    if (!(frequency > 0.0)) {
        throw std::invalid_argument("channel_at: frequency must be positive");
    }
    if (paths.size() == 0 || paths.tx.size() != paths.size() || paths.rx.size() != paths.size()) {
        throw std::invalid_argument("channel_at: inconsistent path set");
    }

    const double eta = tx_cfg.carrier_frequency / frequency;
    arma::cx_mat channel(rx_cfg.num_elements, tx_cfg.num_elements, arma::fill::zeros);

    for (arma::uword l = 0; l < paths.size(); ++l) {
        SteeringParams tx_loc = paths.tx[l];
        SteeringParams rx_loc = paths.rx[l];
        if (squint && eta != 1.0) {
            tx_loc = squint_map(tx_loc, eta);
            rx_loc = squint_map(rx_loc, eta);
        }
        const arma::cx_vec a_rx = steering_vector(rx_cfg, rx_loc, rx_cfg.carrier_frequency);
        const arma::cx_vec a_tx = steering_vector(tx_cfg, tx_loc, tx_cfg.carrier_frequency);
        const arma::cx_double delay_phase =
            std::polar(1.0, -two_pi * paths.delays(l) * frequency);
        channel += paths.gains(l) * delay_phase * (a_rx * a_tx.t());
    }
    return channel;
}

ChannelRealization synthesize_channel(const PathSet& paths, const ArrayConfig& tx_cfg,
                                      const ArrayConfig& rx_cfg, double bandwidth,
                                      arma::uword num_subcarriers, bool squint) {
    ChannelRealization realization;
    realization.subcarrier_frequencies =
        subcarrier_frequencies(tx_cfg.carrier_frequency, bandwidth, num_subcarriers);
    realization.squinted = squint;
    realization.per_subcarrier.reserve(num_subcarriers);
    for (arma::uword m = 0; m < num_subcarriers; ++m) {
        realization.per_subcarrier.push_back(
            channel_at(paths, tx_cfg, rx_cfg, realization.subcarrier_frequencies(m), squint));
    }
    return realization;
}

arma::cx_mat optimal_beamformer(const arma::cx_mat& channel, arma::uword num_streams, bool zero_ok) {
    if (num_streams < 1 || num_streams > std::min(channel.n_rows, channel.n_cols)) {
        throw std::invalid_argument("optimal_beamformer: invalid stream count");
    }
    if (arma::norm(channel, "fro") == 0.0) {
        if (zero_ok) {
            return arma::cx_mat(channel.n_cols, num_streams, arma::fill::zeros);
        }
        throw NumericalError("optimal_beamformer: channel matrix is zero");
    }

    arma::cx_mat left, right;
    arma::vec singular_values;
    if (!arma::svd_econ(left, singular_values, right, channel)) {
        throw NumericalError("optimal_beamformer: SVD failed");
    }
    return right.cols(0, num_streams - 1);
}

arma::cx_vec received_signal(const arma::cx_mat& channel, const arma::cx_mat& analog,
                             const arma::cx_mat& baseband, const arma::cx_vec& symbols,
                             const arma::cx_vec& noise) {
    if (channel.n_cols != analog.n_rows || analog.n_cols != baseband.n_rows ||
        baseband.n_cols != symbols.n_elem || noise.n_elem != channel.n_rows) {
        throw std::invalid_argument("received_signal: shape mismatch");
    }
    return channel * (analog * (baseband * symbols)) + noise;
}

} // namespace nfisac
