#ifndef NFISAC_CHANNEL_HPP
#define NFISAC_CHANNEL_HPP

#include <armadillo>
#include <random>
#include <vector>

#include "nfisac/array.hpp"

namespace nfisac {

/// Random multipath scenario: how many paths to draw and from which
/// intervals. Direction bounds are sine-angles (the draw is uniform in the
/// sine domain). Delays are uniform over [0, (cp_length - 1) / bandwidth];
/// a zero bandwidth pins all delays to zero.
struct PathScenario {
    arma::uword num_paths = 1;
    double sin_lo = -1.0;
    double sin_hi = 1.0;
    double range_lo = 1.0;
    double range_hi = 1.0;
    double bandwidth = 0.0;
    arma::uword cp_length = 1;
};

void validate(const PathScenario& scenario);

/// Sampled multipath parameters, one entry per path.
struct PathSet {
    arma::cx_vec gains;             // gamma_l
    arma::vec delays;               // tau_l, seconds
    std::vector<SteeringParams> tx; // (phi_l, r_l)
    std::vector<SteeringParams> rx; // (theta_l, rho_l)

    arma::uword size() const { return gains.n_elem; }
};

/// Per-subcarrier channel matrices plus the frequency grid they live on.
struct ChannelRealization {
    std::vector<arma::cx_mat> per_subcarrier; // M matrices, N_R x N_T
    arma::vec subcarrier_frequencies;         // Hz
    bool squinted = false;
};

/// Subcarrier grid centered on the carrier:
/// f_m = f_c + (B / M) (m - 1 - (M - 1) / 2), m = 1..M.
arma::vec subcarrier_frequencies(double carrier_frequency, double bandwidth, arma::uword num_subcarriers);

/// Draw a PathSet. Per path, the draw order is: gain (two normals), delay,
/// tx direction, tx range, rx direction, rx range. Gains are CN(0, 1).
/// Deterministic given the generator state.
PathSet sample_paths(std::mt19937_64& rng, const PathScenario& scenario);

/// Channel matrix at one subcarrier:
///   H = sum_l gamma_l a_R a_T^H exp(-j 2 pi tau_l f_m).
/// With squint enabled the steering pair of each path is displaced through
/// squint_map at eta = f_c / f_m before evaluating the carrier-frequency
/// steering vectors; with squint disabled the physical locations are used
/// directly (the array response is frequency-flat).
arma::cx_mat channel_at(const PathSet& paths, const ArrayConfig& tx_cfg, const ArrayConfig& rx_cfg,
                        double frequency, bool squint);

/// channel_at over the full subcarrier grid.
ChannelRealization synthesize_channel(const PathSet& paths, const ArrayConfig& tx_cfg,
                                      const ArrayConfig& rx_cfg, double bandwidth,
                                      arma::uword num_subcarriers, bool squint);

/// Unconstrained communications precoder: the num_streams right singular
/// vectors of H with the largest singular values (orthonormal columns,
/// Frobenius norm sqrt(num_streams)). An all-zero H throws unless zero_ok,
/// in which case a zero precoder is returned.
arma::cx_mat optimal_beamformer(const arma::cx_mat& channel, arma::uword num_streams,
                                bool zero_ok = false);

/// y = H F_RF F_BB s + n.
arma::cx_vec received_signal(const arma::cx_mat& channel, const arma::cx_mat& analog,
                             const arma::cx_mat& baseband, const arma::cx_vec& symbols,
                             const arma::cx_vec& noise);

} // namespace nfisac

#endif
