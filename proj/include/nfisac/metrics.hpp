#ifndef NFISAC_METRICS_HPP
#define NFISAC_METRICS_HPP

#include <armadillo>
#include <vector>

#include "nfisac/array.hpp"

namespace nfisac {

/// Radar beampattern samples over a (direction x range) probe grid.
struct BeampatternGrid {
    arma::vec directions;
    arma::vec ranges;
    std::vector<arma::mat> gains; // one (n_directions x n_ranges) matrix per covariance
};

/// Transmit covariance R_x = (1 / N_S) F_RF F_BB F_BB^H F_RF^H.
arma::cx_mat transmit_covariance(const arma::cx_mat& analog, const arma::cx_mat& baseband,
                                 arma::uword num_streams);

/// Quadratic-form beampattern a^H R_x a over the probe grid; probe steering
/// vectors are evaluated at the given frequency.
BeampatternGrid beampattern(const arma::cx_mat& covariance, const arma::vec& directions,
                            const arma::vec& ranges, const ArrayConfig& cfg, double frequency);

/// Gains-only variant of beampattern.
arma::mat beampattern_gains(const arma::cx_mat& covariance, const arma::vec& directions,
                            const arma::vec& ranges, const ArrayConfig& cfg, double frequency);

/// Average log-det spectral efficiency in bits/s/Hz:
///   (1/M) sum_m log2 det(I + (1 / (N_S sigma^2)) H F F^H H^H),
/// with F[m] = F_RF F_BB[m].
double spectral_efficiency(const std::vector<arma::cx_mat>& channel_per_subcarrier,
                           const arma::cx_mat& analog,
                           const std::vector<arma::cx_mat>& baseband_per_subcarrier,
                           double noise_variance, arma::uword num_streams);

/// Same metric for precoders given directly as N_T x N_S matrices.
double spectral_efficiency_precoded(const std::vector<arma::cx_mat>& channel_per_subcarrier,
                                    const std::vector<arma::cx_mat>& precoder_per_subcarrier,
                                    double noise_variance, arma::uword num_streams);

/// Summed design objective sum_m ||F_RF F_BB[m] - F_CR[m]||_F.
double design_residual(const arma::cx_mat& analog,
                       const std::vector<arma::cx_mat>& baseband_per_subcarrier,
                       const std::vector<arma::cx_mat>& target_per_subcarrier);

} // namespace nfisac

#endif
