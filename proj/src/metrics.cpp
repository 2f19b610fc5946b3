#include "nfisac/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "nfisac/common.hpp"

namespace nfisac {

arma::cx_mat transmit_covariance(const arma::cx_mat& analog, const arma::cx_mat& baseband,
                                 arma::uword num_streams) {
    if (analog.n_cols != baseband.n_rows || num_streams < 1) {
        throw std::invalid_argument("transmit_covariance: shape mismatch");
    }
    const arma::cx_mat precoder = analog * baseband;
    return precoder * precoder.t() / static_cast<double>(num_streams);
}

arma::mat beampattern_gains(const arma::cx_mat& covariance, const arma::vec& directions,
                            const arma::vec& ranges, const ArrayConfig& cfg, double frequency) {
    if (covariance.n_rows != covariance.n_cols || covariance.n_rows != cfg.num_elements) {
        throw std::invalid_argument("beampattern: covariance does not match the array");
    }
    arma::mat gains(directions.n_elem, ranges.n_elem);
    for (arma::uword i = 0; i < directions.n_elem; ++i) {
        for (arma::uword j = 0; j < ranges.n_elem; ++j) {
            const arma::cx_vec probe =
                steering_vector(cfg, SteeringParams{directions(i), ranges(j)}, frequency);
            gains(i, j) = std::real(arma::cdot(probe, covariance * probe));
        }
    }
    return gains;
}

BeampatternGrid beampattern(const arma::cx_mat& covariance, const arma::vec& directions,
                            const arma::vec& ranges, const ArrayConfig& cfg, double frequency) {
    BeampatternGrid grid;
    grid.directions = directions;
    grid.ranges = ranges;
    grid.gains.push_back(beampattern_gains(covariance, directions, ranges, cfg, frequency));
    return grid;
}

double spectral_efficiency_precoded(const std::vector<arma::cx_mat>& channel_per_subcarrier,
                                    const std::vector<arma::cx_mat>& precoder_per_subcarrier,
                                    double noise_variance, arma::uword num_streams) {
    if (channel_per_subcarrier.empty() ||
        channel_per_subcarrier.size() != precoder_per_subcarrier.size()) {
        throw std::invalid_argument("spectral_efficiency: subcarrier lists are inconsistent");
    }
    if (!(noise_variance > 0.0) || num_streams < 1) {
        throw std::invalid_argument("spectral_efficiency: invalid noise variance or stream count");
    }

    const double gain = 1.0 / (static_cast<double>(num_streams) * noise_variance);
    double total_bits = 0.0;
    for (std::size_t m = 0; m < channel_per_subcarrier.size(); ++m) {
        const arma::cx_mat& channel = channel_per_subcarrier[m];
        const arma::cx_mat& precoder = precoder_per_subcarrier[m];
        if (channel.n_cols != precoder.n_rows) {
            throw std::invalid_argument("spectral_efficiency: shape mismatch");
        }
        const arma::cx_mat effective = channel * precoder; // N_R x N_S
        // det(I_NR + g W W^H) = det(I_NS + g W^H W)
        arma::cx_mat gram = arma::eye<arma::cx_mat>(effective.n_cols, effective.n_cols) +
                            gain * (effective.t() * effective);
        gram = 0.5 * (gram + gram.t());
        double log_det = 0.0;
        try {
            log_det = arma::log_det_sympd(gram);
        } catch (const std::exception&) {
            throw NumericalError("spectral_efficiency: log-det failed");
        }
        if (!std::isfinite(log_det)) {
            throw NumericalError("spectral_efficiency: non-finite determinant");
        }
        total_bits += log_det / std::log(2.0);
    }
    return total_bits / static_cast<double>(channel_per_subcarrier.size());
}

double spectral_efficiency(const std::vector<arma::cx_mat>& channel_per_subcarrier,
                           const arma::cx_mat& analog,
                           const std::vector<arma::cx_mat>& baseband_per_subcarrier,
                           double noise_variance, arma::uword num_streams) {
    std::vector<arma::cx_mat> precoders;
    precoders.reserve(baseband_per_subcarrier.size());
    for (const arma::cx_mat& baseband : baseband_per_subcarrier) {
        precoders.push_back(analog * baseband);
    }
    return spectral_efficiency_precoded(channel_per_subcarrier, precoders, noise_variance,
                                        num_streams);
}

double design_residual(const arma::cx_mat& analog,
                       const std::vector<arma::cx_mat>& baseband_per_subcarrier,
                       const std::vector<arma::cx_mat>& target_per_subcarrier) {
    if (baseband_per_subcarrier.size() != target_per_subcarrier.size()) {
        throw std::invalid_argument("design_residual: subcarrier lists are inconsistent");
    }
    double total = 0.0;
    for (std::size_t m = 0; m < baseband_per_subcarrier.size(); ++m) {
        total += arma::norm(analog * baseband_per_subcarrier[m] - target_per_subcarrier[m], "fro");
    }
    return total;
}

} // namespace nfisac
