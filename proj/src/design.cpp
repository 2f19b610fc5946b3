#include "nfisac/design.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "nfisac/common.hpp"

namespace nfisac {

namespace {

constexpr double pinv_rel_tol = 1e-10;

arma::cx_mat stack_subcarriers(const std::vector<arma::cx_mat>& blocks) {
    const arma::uword rows = blocks.front().n_rows;
    const arma::uword cols = blocks.front().n_cols;
    arma::cx_mat stacked(rows, cols * blocks.size());
    for (arma::uword m = 0; m < blocks.size(); ++m) {
        stacked.cols(m * cols, (m + 1) * cols - 1) = blocks[m];
    }
    return stacked;
}

} // namespace

void validate(const TradeoffConfig& tradeoff) {
    if (!(tradeoff.epsilon >= 0.0 && tradeoff.epsilon <= 1.0)) {
        throw std::invalid_argument("TradeoffConfig: epsilon must lie in [0, 1]");
    }
    if (tradeoff.num_targets < 1 || tradeoff.num_targets > tradeoff.num_streams ||
        tradeoff.num_streams > tradeoff.num_rf_chains) {
        throw std::invalid_argument("TradeoffConfig: need K <= N_S <= N_RF");
    }
}

arma::cx_mat radar_beamformer(const std::vector<SteeringParams>& targets, const ArrayConfig& cfg) {
    if (targets.empty()) {
        throw std::invalid_argument("radar_beamformer: need at least one target");
    }
    for (std::size_t i = 0; i + 1 < targets.size(); ++i) {
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
            if (targets[i].direction == targets[j].direction && targets[i].range == targets[j].range) {
                warn("radar_beamformer: duplicate target locations");
            }
        }
    }
    arma::cx_mat beams(cfg.num_elements, targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
        beams.col(k) = steering_vector(cfg, targets[k], cfg.carrier_frequency);
    }
    return beams;
}

arma::cx_mat jrc_beamformer(const arma::cx_mat& comm_opt, const arma::cx_mat& radar,
                            const arma::cx_mat& pi, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("jrc_beamformer: epsilon must lie in [0, 1]");
    }
    if (radar.n_rows != comm_opt.n_rows || radar.n_cols != pi.n_rows ||
        pi.n_cols != comm_opt.n_cols) {
        throw std::invalid_argument("jrc_beamformer: shape mismatch");
    }
    return epsilon * comm_opt + (1.0 - epsilon) * radar * pi;
}

arma::uword omp_select(const Dictionary& dictionary, const std::vector<arma::cx_mat>& residuals,
                       const std::vector<arma::uword>* excluded) {
    if (dictionary.size() == 0) {
        throw std::invalid_argument("omp_select: empty dictionary");
    }
    if (residuals.empty()) {
        throw std::invalid_argument("omp_select: no residuals");
    }

    arma::vec scores(dictionary.size(), arma::fill::zeros);
    for (const arma::cx_mat& residual : residuals) {
        if (residual.n_rows != dictionary.atoms.n_rows) {
            throw std::invalid_argument("omp_select: residual rows do not match dictionary atoms");
        }
        scores += arma::sum(arma::square(arma::abs(dictionary.atoms.t() * residual)), 1);
    }
    if (excluded != nullptr) {
        for (arma::uword p : *excluded) {
            scores(p) = -1.0;
        }
    }

    const arma::uword best = scores.index_max();
    if (!(scores(best) > 0.0)) {
        warn("omp_select: degenerate selection (all residual correlations vanish)");
        for (arma::uword p = 0; p < dictionary.size(); ++p) {
            if (excluded == nullptr ||
                std::find(excluded->begin(), excluded->end(), p) == excluded->end()) {
                return p;
            }
        }
        throw std::invalid_argument("omp_select: all atoms excluded");
    }
    return best;
}

arma::cx_mat ls_baseband(const arma::cx_mat& analog, const arma::cx_mat& target) {
    if (analog.n_rows != target.n_rows) {
        throw std::invalid_argument("ls_baseband: shape mismatch");
    }

    arma::cx_mat left, right;
    arma::vec singular_values;
    if (!arma::svd_econ(left, singular_values, right, analog)) {
        throw NumericalError("ls_baseband: SVD failed");
    }

    const double cutoff = pinv_rel_tol * singular_values.max();
    arma::vec inverted(singular_values.n_elem, arma::fill::zeros);
    bool deficient = false;
    for (arma::uword i = 0; i < singular_values.n_elem; ++i) {
        if (singular_values(i) > cutoff) {
            inverted(i) = 1.0 / singular_values(i);
        } else {
            deficient = true;
        }
    }
    if (deficient) {
        warn("ls_baseband: rank-deficient analog beamformer, returning minimum-norm solution");
    }
    return right * arma::diagmat(inverted) * (left.t() * target);
}

arma::cx_mat normalize_baseband(const arma::cx_mat& analog, const arma::cx_mat& baseband) {
    const double norm = arma::norm(analog * baseband, "fro");
    if (!(norm > 0.0)) {
        throw NumericalError("normalize_baseband: zero product norm");
    }
    const double streams = static_cast<double>(baseband.n_cols);
    return std::sqrt(streams) / norm * baseband;
}

arma::cx_mat update_pi(const arma::cx_mat& radar, const arma::cx_mat& analog,
                       const arma::cx_mat& baseband_stack, const arma::cx_mat& comm_opt_stack,
                       double epsilon, const arma::cx_mat& previous) {
    if (epsilon == 1.0) {
        return previous;
    }
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("update_pi: epsilon must lie in [0, 1]");
    }
    if (radar.n_cols > comm_opt_stack.n_cols) {
        throw std::invalid_argument("update_pi: need K <= M * N_S");
    }

    const arma::cx_mat projected =
        (analog * baseband_stack - epsilon * comm_opt_stack) / (1.0 - epsilon);
    arma::cx_mat left, right;
    arma::vec singular_values;
    if (!arma::svd_econ(left, singular_values, right, arma::cx_mat(radar.t() * projected))) {
        throw NumericalError("update_pi: SVD failed");
    }

    const arma::uword targets = radar.n_cols;
    const double cutoff = singular_values.n_elem ? 1e-10 * singular_values.max() : 0.0;
    arma::uword rank = 0;
    for (arma::uword i = 0; i < singular_values.n_elem; ++i) {
        if (singular_values(i) > cutoff) {
            ++rank;
        }
    }
    if (rank == targets) {
        return left * right.t();
    }

    // The correlation matrix is rank deficient (typical while the analog
    // beamformer still has fewer columns than there are targets), so the
    // Procrustes optimum is not unique in the null directions. Fill those
    // from the previous iterate instead of whatever the SVD happened to
    // return, so unreached targets keep their allocation.
    arma::cx_mat updated(targets, previous.n_cols, arma::fill::zeros);
    arma::cx_mat row_space;
    arma::cx_mat free_directions;
    if (rank > 0) {
        const arma::cx_mat u1 = left.cols(0, rank - 1);
        row_space = right.cols(0, rank - 1);
        updated = u1 * row_space.t();
        free_directions = arma::null(arma::cx_mat(u1.t()));
    } else {
        free_directions = arma::eye<arma::cx_mat>(targets, targets);
    }
    if (free_directions.n_cols != targets - rank) {
        return left * right.t();
    }

    arma::cx_mat carried = free_directions.t() * previous;
    if (rank > 0) {
        carried -= (carried * row_space) * row_space.t();
    }
    arma::cx_mat cl, cr;
    arma::vec cs;
    if (!arma::svd_econ(cl, cs, cr, carried)) {
        return left * right.t();
    }
    updated += free_directions * (cl * cr.t());

    if (arma::norm(updated * updated.t() - arma::eye<arma::cx_mat>(targets, targets), "fro") >
        1e-8) {
        return left * right.t();
    }
    return updated;
}

arma::cx_mat sd_analog(const arma::cx_mat& analog, double eta) {
    constexpr double pi = 3.14159265358979323846;
    const double scale = 1.0 / std::sqrt(static_cast<double>(analog.n_rows));
    arma::cx_mat surrogate(analog.n_rows, analog.n_cols);
    for (arma::uword j = 0; j < analog.n_cols; ++j) {
        // Scaling the principal phases alone cannot track a steering column
        // whose phase profile exceeds one period, so unwrap down the column
        // first. Steering columns advance by less than pi per element, which
        // makes the unwrapped profile exact.
        double previous = 0.0;
        double unwrapped = 0.0;
        for (arma::uword i = 0; i < analog.n_rows; ++i) {
            const arma::cx_double entry = analog(i, j);
            if (entry == arma::cx_double(0.0, 0.0)) {
                throw std::invalid_argument("sd_analog: zero entry has no phase");
            }
            const double phase = std::arg(entry);
            if (i == 0) {
                unwrapped = phase;
            } else {
                double step = phase - previous;
                step -= 2.0 * pi * std::floor((step + pi) / (2.0 * pi));
                unwrapped += step;
            }
            previous = phase;
            surrogate(i, j) = std::polar(scale, eta * unwrapped);
        }
    }
    return surrogate;
}

arma::cx_mat bsa_baseband(const arma::cx_mat& analog, const arma::cx_mat& analog_sd,
                          const arma::cx_mat& baseband) {
    if (analog.n_rows != analog_sd.n_rows || analog.n_cols != analog_sd.n_cols ||
        analog_sd.n_cols != baseband.n_rows) {
        throw std::invalid_argument("bsa_baseband: shape mismatch");
    }
    return ls_baseband(analog, analog_sd * baseband);
}

HybridDesign design_hybrid(const Dictionary& dictionary,
                           const std::vector<arma::cx_mat>& comm_opt_per_subcarrier,
                           const arma::cx_mat& radar, const TradeoffConfig& tradeoff,
                           const std::vector<double>& etas, arma::uword extra_sweeps) {
    validate(tradeoff);
    if (dictionary.size() == 0) {
        throw std::invalid_argument("design_hybrid: empty dictionary");
    }
    if (comm_opt_per_subcarrier.empty() || etas.size() != comm_opt_per_subcarrier.size()) {
        throw std::invalid_argument("design_hybrid: subcarrier lists are inconsistent");
    }

    const arma::uword num_subcarriers = comm_opt_per_subcarrier.size();
    const arma::uword num_antennas = dictionary.atoms.n_rows;
    const arma::uword streams = tradeoff.num_streams;
    const arma::uword targets = tradeoff.num_targets;
    const double epsilon = tradeoff.epsilon;

    for (const arma::cx_mat& comm_opt : comm_opt_per_subcarrier) {
        if (comm_opt.n_rows != num_antennas || comm_opt.n_cols != streams) {
            throw std::invalid_argument("design_hybrid: comm precoder dimensions are wrong");
        }
    }
    if (radar.n_rows != num_antennas || radar.n_cols != targets) {
        throw std::invalid_argument("design_hybrid: radar beamformer dimensions are wrong");
    }

    HybridDesign design;

    // Pi starts as identity rows so that the initial design target exists.
    design.auxiliary.set_size(targets, num_subcarriers * streams);
    design.auxiliary.zeros();
    for (arma::uword m = 0; m < num_subcarriers; ++m) {
        for (arma::uword k = 0; k < targets; ++k) {
            design.auxiliary(k, m * streams + k) = 1.0;
        }
    }

    const arma::cx_mat comm_opt_stack = stack_subcarriers(comm_opt_per_subcarrier);

    auto pi_slice = [&](arma::uword m) {
        return design.auxiliary.cols(m * streams, (m + 1) * streams - 1);
    };

    std::vector<arma::cx_mat> target_per_m(num_subcarriers);
    for (arma::uword m = 0; m < num_subcarriers; ++m) {
        target_per_m[m] = jrc_beamformer(comm_opt_per_subcarrier[m], radar, pi_slice(m), epsilon);
    }
    std::vector<arma::cx_mat> residual_per_m = target_per_m;
    std::vector<arma::cx_mat> baseband_per_m(num_subcarriers);

    design.analog.set_size(num_antennas, 0);

    auto solve_basebands = [&]() {
        for (arma::uword m = 0; m < num_subcarriers; ++m) {
            baseband_per_m[m] = ls_baseband(design.analog, target_per_m[m]);
        }
    };
    auto refresh_auxiliary_and_target = [&]() {
        if (epsilon < 1.0) {
            design.auxiliary = update_pi(radar, design.analog, stack_subcarriers(baseband_per_m),
                                         comm_opt_stack, epsilon, design.auxiliary);
            for (arma::uword m = 0; m < num_subcarriers; ++m) {
                target_per_m[m] =
                    jrc_beamformer(comm_opt_per_subcarrier[m], radar, pi_slice(m), epsilon);
            }
        }
    };
    // Returns the summed fit distance and refreshes the normalized residuals.
    auto measure_residuals = [&]() {
        double total = 0.0;
        for (arma::uword m = 0; m < num_subcarriers; ++m) {
            const arma::cx_mat gap = target_per_m[m] - design.analog * baseband_per_m[m];
            const double norm = arma::norm(gap, "fro");
            total += norm;
            if (norm > 0.0) {
                residual_per_m[m] = gap / norm;
            } else {
                residual_per_m[m] = gap;
            }
        }
        if (!std::isfinite(total)) {
            throw NumericalError("design_hybrid: non-finite residual");
        }
        return total;
    };

    double target_scale = 0.0;
    for (const arma::cx_mat& t : target_per_m) {
        target_scale += arma::norm(t, "fro");
    }

    for (arma::uword chain = 0; chain < tradeoff.num_rf_chains; ++chain) {
        const arma::uword pick = omp_select(dictionary, residual_per_m, &design.selected_atoms);
        design.selected_atoms.push_back(pick);
        design.analog.insert_cols(design.analog.n_cols, dictionary.atoms.col(pick));

        solve_basebands();
        refresh_auxiliary_and_target();

        const double total = measure_residuals();
        design.residual_history.push_back(total);
        if (total <= 1e-12 * std::max(target_scale, 1.0)) {
            break; // target reproduced exactly, further atoms are redundant
        }
    }

    for (arma::uword sweep = 0; sweep < extra_sweeps; ++sweep) {
        solve_basebands();
        refresh_auxiliary_and_target();
        design.residual_history.push_back(measure_residuals());
    }

    design.baseband.resize(num_subcarriers);
    design.bsa_baseband.resize(num_subcarriers);
    for (arma::uword m = 0; m < num_subcarriers; ++m) {
        design.baseband[m] = normalize_baseband(design.analog, baseband_per_m[m]);
        const arma::cx_mat surrogate = sd_analog(design.analog, etas[m]);
        const arma::cx_mat compensated = bsa_baseband(design.analog, surrogate, design.baseband[m]);
        design.bsa_baseband[m] = normalize_baseband(design.analog, compensated);
        if (!design.baseband[m].is_finite() || !design.bsa_baseband[m].is_finite()) {
            throw NumericalError("design_hybrid: non-finite baseband beamformer");
        }
    }
    return design;
}

} // namespace nfisac
