#ifndef NFISAC_DESIGN_HPP
#define NFISAC_DESIGN_HPP

#include <armadillo>
#include <vector>

#include "nfisac/array.hpp"

namespace nfisac {

/// Sensing/communications trade-off and beamformer dimensions.
/// Requires num_targets <= num_streams <= num_rf_chains.
struct TradeoffConfig {
    double epsilon = 0.5;          // 1 = communications only, 0 = radar only
    arma::uword num_rf_chains = 1; // N_RF
    arma::uword num_streams = 1;   // N_S
    arma::uword num_targets = 1;   // K
};

void validate(const TradeoffConfig& tradeoff);

/// Output of the hybrid design: frequency-flat analog beamformer,
/// per-subcarrier digital beamformers (plain and squint-compensated), the
/// row-orthonormal auxiliary matrix coupling the radar beamformer into the
/// design target, and the indices of the dictionary atoms that were picked.
struct HybridDesign {
    arma::cx_mat analog;                    // N_T x L, L <= N_RF columns, constant modulus
    std::vector<arma::cx_mat> baseband;     // M matrices, L x N_S
    std::vector<arma::cx_mat> bsa_baseband; // M matrices, L x N_S
    arma::cx_mat auxiliary;                 // K x (M N_S), rows orthonormal
    std::vector<arma::uword> selected_atoms;
    std::vector<double> residual_history;   // summed fit distance after each iteration
};

/// Steering vectors at the target locations, stacked column-wise.
/// Duplicate targets are allowed but flagged.
arma::cx_mat radar_beamformer(const std::vector<SteeringParams>& targets, const ArrayConfig& cfg);

/// F_CR = epsilon F_opt + (1 - epsilon) F_R Pi.
arma::cx_mat jrc_beamformer(const arma::cx_mat& comm_opt, const arma::cx_mat& radar,
                            const arma::cx_mat& pi, double epsilon);

/// Index of the dictionary atom with the largest accumulated correlation
///   sum_m ||a_p^H residual[m]||_2^2,
/// ties broken toward the lowest index. Indices listed in `excluded` are
/// never returned. All-zero residuals yield the first admissible index with
/// a warning.
arma::uword omp_select(const Dictionary& dictionary, const std::vector<arma::cx_mat>& residuals,
                       const std::vector<arma::uword>* excluded = nullptr);

/// Least-squares baseband solve min ||F_RF F_BB - F_CR||_F via the
/// pseudo-inverse. Singular values below 1e-10 of the largest are dropped
/// (minimum-norm solution) with a warning.
arma::cx_mat ls_baseband(const arma::cx_mat& analog, const arma::cx_mat& target);

/// Rescale the baseband so that ||F_RF F_BB||_F = sqrt(N_S) exactly.
arma::cx_mat normalize_baseband(const arma::cx_mat& analog, const arma::cx_mat& baseband);

/// Row-orthonormal auxiliary update (orthogonal Procrustes): with
///   T = (F_RF F_BB_stack - epsilon F_opt_stack) / (1 - epsilon)
/// and the SVD U S V^H = F_R^H T, returns U V^H, which minimizes
/// ||F_RF F_BB_stack - epsilon F_opt_stack - (1 - epsilon) F_R Pi||_F over
/// Pi with orthonormal rows. epsilon = 1 returns `previous` unchanged.
arma::cx_mat update_pi(const arma::cx_mat& radar, const arma::cx_mat& analog,
                       const arma::cx_mat& baseband_stack, const arma::cx_mat& comm_opt_stack,
                       double epsilon, const arma::cx_mat& previous);

/// Subcarrier-dependent analog surrogate: every entry keeps magnitude
/// 1/sqrt(N_T) and has its principal phase scaled by eta.
arma::cx_mat sd_analog(const arma::cx_mat& analog, double eta);

/// Squint-compensating baseband min ||F_RF X - F_RF_sd F_BB||_F, i.e. the
/// pseudo-inverse product F_RF^+ F_RF_sd F_BB (returned unscaled; with
/// N_RF = N_T and invertible F_RF the match is exact).
arma::cx_mat bsa_baseband(const arma::cx_mat& analog, const arma::cx_mat& analog_sd,
                          const arma::cx_mat& baseband);

/// Full alternating design. Per RF chain: pick the best remaining atom
/// against the current residuals, re-solve the per-subcarrier basebands,
/// refresh the auxiliary matrix and the design target, and renormalize the
/// residuals. A vanishing residual stops atom selection early. Afterward
/// the basebands are power-normalized and the squint-compensated basebands
/// are computed from the per-subcarrier analog surrogates at the given
/// eta ratios. `extra_sweeps` repeats the baseband/auxiliary refinement
/// with the analog beamformer frozen.
HybridDesign design_hybrid(const Dictionary& dictionary,
                           const std::vector<arma::cx_mat>& comm_opt_per_subcarrier,
                           const arma::cx_mat& radar, const TradeoffConfig& tradeoff,
                           const std::vector<double>& etas, arma::uword extra_sweeps = 0);

} // namespace nfisac

#endif
