#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "nfisac/common.hpp"
#include "nfisac/design.hpp"

using namespace nfisac;

namespace {

constexpr double pi = 3.14159265358979323846;

ArrayConfig thz_array(arma::uword n) { return ArrayConfig::half_wavelength(n, 300e9); }

arma::cx_mat random_cx(arma::uword rows, arma::uword cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    arma::cx_mat out(rows, cols);
    for (arma::uword j = 0; j < cols; ++j) {
        for (arma::uword i = 0; i < rows; ++i) {
            out(i, j) = arma::cx_double(gauss(rng), gauss(rng));
        }
    }
    return out;
}

// Row-orthonormal matrix from a Gaussian draw.
arma::cx_mat random_row_orthonormal(arma::uword rows, arma::uword cols, std::mt19937_64& rng) {
    const arma::cx_mat gaussian = random_cx(cols, rows, rng);
    arma::cx_mat q, r;
    arma::qr_econ(q, r, gaussian);
    return q.t();
}

// Constant-modulus analog beamformer made of well-separated dictionary atoms.
arma::cx_mat atoms_analog(const ArrayConfig& cfg, arma::uword count) {
    arma::cx_mat analog(cfg.num_elements, count);
    for (arma::uword j = 0; j < count; ++j) {
        const double direction = -0.85 + 1.7 * double(j) / double(std::max<arma::uword>(count - 1, 1));
        analog.col(j) = steering_vector(cfg, {direction, 3.0 + 2.0 * double(j)},
                                        cfg.carrier_frequency);
    }
    return analog;
}

} // namespace

TEST_SUITE("design") {

TEST_CASE("radar beamformer") {
    const ArrayConfig cfg = thz_array(16);
    SUBCASE("single target column") {
        const arma::cx_mat beam = radar_beamformer({{0.0, 10.0}}, cfg);
        CHECK(beam.n_cols == 1);
        CHECK(arma::norm(beam.col(0) - steering_vector(cfg, {0.0, 10.0}, cfg.carrier_frequency),
                         2) == 0.0);
    }
    SUBCASE("unit-norm columns and per-column reconstruction") {
        const std::vector<SteeringParams> targets{{-0.4, 6.0}, {0.2, 14.0}, {0.7, 22.0}};
        const arma::cx_mat beams = radar_beamformer(targets, cfg);
        CHECK(beams.n_cols == 3);
        for (arma::uword k = 0; k < 3; ++k) {
            REQUIRE(std::abs(arma::norm(beams.col(k), 2) - 1.0) < 1e-12);
            REQUIRE(arma::norm(beams.col(k) -
                                   steering_vector(cfg, targets[k], cfg.carrier_frequency),
                               2) < 1e-12);
        }
    }
    SUBCASE("empty target list rejected") {
        CHECK_THROWS_AS(radar_beamformer({}, cfg), std::invalid_argument);
    }
}

TEST_CASE("jrc beamformer") {
    std::mt19937_64 rng(31);
    const arma::cx_mat comm = random_cx(8, 3, rng);
    const arma::cx_mat radar = random_cx(8, 2, rng);
    const arma::cx_mat pi_mat = random_row_orthonormal(2, 3, rng);

    CHECK(arma::norm(jrc_beamformer(comm, radar, pi_mat, 1.0) - comm, "fro") == 0.0);
    CHECK(arma::norm(jrc_beamformer(comm, radar, pi_mat, 0.0) - radar * pi_mat, "fro") == 0.0);

    const arma::cx_mat mixed = jrc_beamformer(comm, radar, pi_mat, 0.5);
    const arma::cx_mat expected = 0.5 * comm + 0.5 * radar * pi_mat;
    CHECK(arma::norm(mixed - expected, "fro") < 1e-12);

    CHECK_THROWS_AS(jrc_beamformer(comm, radar.head_rows(4), pi_mat, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(jrc_beamformer(comm, radar, pi_mat, 1.5), std::invalid_argument);
}

TEST_CASE("omp selection") {
    const ArrayConfig cfg = thz_array(16);
    const Dictionary dict = build_dictionary(cfg, 15, 4, 2.0, 20.0);

    SUBCASE("dominant atom wins") {
        const arma::uword truth = 33;
        std::vector<arma::cx_mat> residuals;
        arma::cx_mat residual(16, 2, arma::fill::zeros);
        residual.col(0) = dict.atoms.col(truth);
        residuals.push_back(residual);
        CHECK(omp_select(dict, residuals) == truth);
    }
    SUBCASE("matches the exhaustive oracle") {
        // Interior directions only: the +-1 endpoints alias onto the same
        // atom, and exact ties would be broken by accumulation-order noise.
        const ArrayConfig small = thz_array(4);
        Dictionary tiny;
        tiny.direction_grid = arma::linspace(-0.9, 0.9, 8);
        tiny.range_grid = arma::vec{6.0};
        tiny.atoms.set_size(4, 8);
        for (arma::uword j = 0; j < 8; ++j) {
            const SteeringParams p{tiny.direction_grid(j), 6.0};
            tiny.grid.push_back(p);
            tiny.atoms.col(j) = steering_vector(small, p, small.carrier_frequency);
        }
        std::mt19937_64 rng(17);
        for (int instance = 0; instance < 25; ++instance) {
            std::vector<arma::cx_mat> residuals;
            for (int m = 0; m < 3; ++m) {
                residuals.push_back(random_cx(4, 2, rng));
            }
            // Brute force with explicit loops.
            double best_score = -1.0;
            arma::uword best_index = 0;
            for (arma::uword p = 0; p < tiny.size(); ++p) {
                double score = 0.0;
                for (const arma::cx_mat& residual : residuals) {
                    for (arma::uword s = 0; s < residual.n_cols; ++s) {
                        arma::cx_double corr(0.0, 0.0);
                        for (arma::uword n = 0; n < residual.n_rows; ++n) {
                            corr += std::conj(tiny.atoms(n, p)) * residual(n, s);
                        }
                        score += std::norm(corr);
                    }
                }
                if (score > best_score) {
                    best_score = score;
                    best_index = p;
                }
            }
            REQUIRE(omp_select(tiny, residuals) == best_index);
        }
    }
    SUBCASE("scaling every residual leaves the pick unchanged") {
        std::mt19937_64 rng(23);
        std::vector<arma::cx_mat> residuals{random_cx(16, 2, rng), random_cx(16, 2, rng)};
        const arma::uword pick = omp_select(dict, residuals);
        for (arma::cx_mat& residual : residuals) {
            residual *= arma::cx_double(0.0, -7.5);
        }
        CHECK(omp_select(dict, residuals) == pick);
    }
    SUBCASE("all-zero residuals fall back to the first admissible index") {
        std::vector<arma::cx_mat> residuals{arma::cx_mat(16, 2, arma::fill::zeros)};
        CHECK(omp_select(dict, residuals) == 0);
        const std::vector<arma::uword> excluded{0, 1};
        CHECK(omp_select(dict, residuals, &excluded) == 2);
    }
    SUBCASE("excluded atoms are never picked") {
        const arma::uword truth = 12;
        std::vector<arma::cx_mat> residuals;
        arma::cx_mat residual(16, 1, arma::fill::zeros);
        residual.col(0) = dict.atoms.col(truth);
        residuals.push_back(residual);
        const std::vector<arma::uword> excluded{truth};
        CHECK(omp_select(dict, residuals, &excluded) != truth);
    }
}

TEST_CASE("least-squares baseband") {
    std::mt19937_64 rng(41);

    SUBCASE("orthonormal analog reduces to the adjoint") {
        const arma::cx_mat gaussian = random_cx(8, 3, rng);
        arma::cx_mat q, r;
        arma::qr_econ(q, r, gaussian);
        const arma::cx_mat target = random_cx(8, 2, rng);
        CHECK(arma::norm(ls_baseband(q, target) - q.t() * target, "fro") < 1e-12);
    }
    SUBCASE("targets in the column span are reproduced exactly") {
        const arma::cx_mat analog = random_cx(8, 4, rng);
        const arma::cx_mat coeffs = random_cx(4, 2, rng);
        const arma::cx_mat target = analog * coeffs;
        const arma::cx_mat solved = ls_baseband(analog, target);
        CHECK(arma::norm(analog * solved - target, "fro") <= 1e-10);
    }
    SUBCASE("matches the normal-equations oracle") {
        const arma::cx_mat analog = random_cx(8, 4, rng);
        const arma::cx_mat target = random_cx(8, 3, rng);
        const arma::cx_mat oracle =
            arma::inv(arma::cx_mat(analog.t() * analog)) * analog.t() * target;
        CHECK(arma::norm(ls_baseband(analog, target) - oracle, "fro") < 1e-10);
    }
    SUBCASE("rank-deficient analog yields the minimum-norm fit") {
        arma::cx_mat analog = random_cx(8, 3, rng);
        analog.col(2) = analog.col(1); // exact deficiency
        const arma::cx_mat target = random_cx(8, 2, rng);
        const arma::cx_mat solved = ls_baseband(analog, target);
        REQUIRE(solved.is_finite());
        // Still the least-squares optimum: residual orthogonal to the span.
        const arma::cx_mat residual = target - analog * solved;
        CHECK(arma::norm(analog.t() * residual, "fro") < 1e-10);
    }
}

TEST_CASE("baseband normalization") {
    std::mt19937_64 rng(53);
    const arma::cx_mat analog = random_cx(8, 4, rng);
    const arma::cx_mat baseband = random_cx(4, 2, rng);

    const arma::cx_mat normalized = normalize_baseband(analog, baseband);
    CHECK(arma::norm(analog * normalized, "fro") == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const arma::cx_mat again = normalize_baseband(analog, normalized);
    CHECK(arma::norm(again - normalized, "fro") < 1e-12);

    const arma::cx_mat scaled = normalize_baseband(analog, 7.0 * baseband);
    CHECK(arma::norm(scaled - normalized, "fro") < 1e-12);

    CHECK_THROWS_AS(normalize_baseband(analog, arma::cx_mat(4, 2, arma::fill::zeros)),
                    NumericalError);
}

TEST_CASE("auxiliary matrix update") {
    std::mt19937_64 rng(61);
    const arma::uword targets = 2;
    const arma::uword stacked = 8; // M * N_S

    SUBCASE("rows come out orthonormal") {
        for (int instance = 0; instance < 10; ++instance) {
            const arma::cx_mat radar = random_cx(6, targets, rng);
            const arma::cx_mat analog = random_cx(6, 3, rng);
            const arma::cx_mat baseband = random_cx(3, stacked, rng);
            const arma::cx_mat comm = random_cx(6, stacked, rng);
            const arma::cx_mat previous(targets, stacked, arma::fill::zeros);
            const arma::cx_mat pi_mat = update_pi(radar, analog, baseband, comm, 0.5, previous);
            REQUIRE(arma::norm(pi_mat * pi_mat.t() - arma::eye<arma::cx_mat>(targets, targets),
                               "fro") < 1e-10);
        }
    }
    SUBCASE("row-orthonormal correlation is a fixed point") {
        const arma::cx_mat radar = random_cx(6, targets, rng);
        const arma::cx_mat wanted = random_row_orthonormal(targets, stacked, rng);
        // Choose the stacked baseband so that radar^H (analog baseband) = wanted.
        const arma::cx_mat analog = arma::eye<arma::cx_mat>(6, 6);
        const arma::cx_mat baseband =
            radar * arma::inv(arma::cx_mat(radar.t() * radar)) * wanted;
        const arma::cx_mat comm(6, stacked, arma::fill::zeros);
        const arma::cx_mat pi_mat =
            update_pi(radar, analog, baseband, comm, 0.0, arma::cx_mat(targets, stacked));
        CHECK(arma::norm(pi_mat - wanted, "fro") < 1e-10);
    }
    SUBCASE("beats random row-orthonormal candidates") {
        const arma::cx_mat radar = random_cx(6, targets, rng);
        const arma::cx_mat analog = random_cx(6, 3, rng);
        const arma::cx_mat baseband = random_cx(3, stacked, rng);
        const arma::cx_mat comm = random_cx(6, stacked, rng);
        const double epsilon = 0.4;
        const arma::cx_mat pi_mat = update_pi(radar, analog, baseband, comm, epsilon,
                                              arma::cx_mat(targets, stacked, arma::fill::zeros));

        auto objective = [&](const arma::cx_mat& candidate) {
            return arma::norm(analog * baseband - epsilon * comm -
                                  (1.0 - epsilon) * radar * candidate,
                              "fro");
        };
        const double achieved = objective(pi_mat);
        for (int sample = 0; sample < 1000; ++sample) {
            REQUIRE(achieved <=
                    objective(random_row_orthonormal(targets, stacked, rng)) + 1e-10);
        }
    }
    SUBCASE("epsilon one returns the previous value") {
        const arma::cx_mat previous = random_cx(targets, stacked, rng);
        const arma::cx_mat pi_mat =
            update_pi(random_cx(6, targets, rng), random_cx(6, 3, rng),
                      random_cx(3, stacked, rng), random_cx(6, stacked, rng), 1.0, previous);
        CHECK(arma::norm(pi_mat - previous, "fro") == 0.0);
    }
}

TEST_CASE("subcarrier-dependent analog surrogate") {
    const ArrayConfig cfg = thz_array(32);
    const arma::cx_mat analog = atoms_analog(cfg, 4);

    SUBCASE("eta one reproduces the input") {
        CHECK(arma::norm(sd_analog(analog, 1.0) - analog, "fro") < 1e-12);
    }
    SUBCASE("scales the phase of a flat matrix") {
        arma::cx_mat flat(8, 2);
        flat.fill(std::polar(1.0 / std::sqrt(8.0), pi / 4.0));
        const arma::cx_mat scaled = sd_analog(flat, 2.0);
        for (arma::uword j = 0; j < 2; ++j) {
            for (arma::uword i = 0; i < 8; ++i) {
                REQUIRE(std::arg(scaled(i, j)) == doctest::Approx(pi / 2.0).epsilon(1e-12));
            }
        }
    }
    SUBCASE("keeps the constant modulus") {
        const arma::cx_mat scaled = sd_analog(analog, 0.94);
        const double expected = 1.0 / std::sqrt(32.0);
        for (arma::uword j = 0; j < scaled.n_cols; ++j) {
            for (arma::uword i = 0; i < scaled.n_rows; ++i) {
                REQUIRE(std::abs(std::abs(scaled(i, j)) - expected) < 1e-12);
            }
        }
    }
    SUBCASE("steering columns map to frequency-scaled steering columns") {
        // The surrogate of a dictionary atom is the same atom evaluated at
        // the scaled frequency, which is what makes the compensation track
        // the displaced beam.
        const double eta = 0.94;
        const arma::cx_mat scaled = sd_analog(analog, eta);
        for (arma::uword j = 0; j < analog.n_cols; ++j) {
            const double direction = -0.85 + 1.7 * double(j) / 3.0;
            const arma::cx_vec expected = steering_vector(
                cfg, {direction, 3.0 + 2.0 * double(j)}, eta * cfg.carrier_frequency);
            REQUIRE(arma::norm(scaled.col(j) - expected, 2) < 1e-10);
        }
    }
    SUBCASE("zero entries rejected") {
        arma::cx_mat broken = analog;
        broken(3, 1) = 0.0;
        CHECK_THROWS_AS(sd_analog(broken, 1.0), std::invalid_argument);
    }
}

TEST_CASE("squint-compensating baseband") {
    const ArrayConfig cfg = thz_array(16);
    std::mt19937_64 rng(71);

    SUBCASE("identity at eta one") {
        const arma::cx_mat analog = atoms_analog(cfg, 4);
        const arma::cx_mat baseband =
            normalize_baseband(analog, random_cx(4, 2, rng));
        const arma::cx_mat compensated = bsa_baseband(analog, sd_analog(analog, 1.0), baseband);
        CHECK(arma::norm(compensated - baseband, "fro") < 1e-10);
    }
    SUBCASE("full RF complement compensates exactly") {
        const arma::cx_mat analog = atoms_analog(cfg, 16); // N_RF = N_T
        const arma::cx_mat baseband =
            normalize_baseband(analog, random_cx(16, 4, rng));
        const arma::cx_mat surrogate = sd_analog(analog, 1.03);
        const arma::cx_mat compensated = bsa_baseband(analog, surrogate, baseband);
        CHECK(arma::norm(analog * compensated - surrogate * baseband, "fro") <= 1e-8);
    }
    SUBCASE("never worse than leaving the baseband untouched") {
        const arma::cx_mat analog = atoms_analog(cfg, 4);
        const arma::cx_mat baseband =
            normalize_baseband(analog, random_cx(4, 2, rng));
        const arma::cx_mat surrogate = sd_analog(analog, 0.95);
        const arma::cx_mat compensated = bsa_baseband(analog, surrogate, baseband);
        const double with_fit = arma::norm(analog * compensated - surrogate * baseband, "fro");
        const double baseline = arma::norm(analog * baseband - surrogate * baseband, "fro");
        CHECK(with_fit <= baseline + 1e-12);
    }
}

TEST_CASE("hybrid design") {
    const ArrayConfig cfg = thz_array(16);

    SUBCASE("single-atom case selects the dominant atom") {
        // Single path, single subcarrier, communications-only: the best
        // single-column fit is the atom the channel is built from.
        const SteeringParams loc{0.42, 8.0};
        const Dictionary dict = build_dictionary(cfg, 25, 5, 2.0, 20.0);
        const arma::cx_vec atom = steering_vector(cfg, loc, cfg.carrier_frequency);

        // Comm precoder equal to the atom itself (N_S = 1).
        std::vector<arma::cx_mat> comm_opt{arma::cx_mat(atom)};
        const arma::cx_mat radar = radar_beamformer({{0.0, 10.0}}, cfg);
        const TradeoffConfig tradeoff{1.0, 1, 1, 1};
        const HybridDesign design = design_hybrid(dict, comm_opt, radar, tradeoff, {1.0});

        REQUIRE(design.selected_atoms.size() == 1);
        const arma::uword pick = design.selected_atoms[0];
        // Brute force: no other single atom fits the target better.
        const double achieved =
            arma::norm(comm_opt[0] - dict.atoms.col(pick) *
                                         ls_baseband(dict.atoms.col(pick), comm_opt[0]),
                       "fro");
        for (arma::uword p = 0; p < dict.size(); ++p) {
            const double other =
                arma::norm(comm_opt[0] - dict.atoms.col(p) *
                                             ls_baseband(dict.atoms.col(p), comm_opt[0]),
                           "fro");
            REQUIRE(achieved <= other + 1e-12);
        }
    }

    SUBCASE("output satisfies the structural invariants") {
        std::mt19937_64 rng(77);
        const Dictionary dict = build_dictionary(cfg, 21, 6, 2.0, 20.0);
        const arma::uword subcarriers = 5;
        const TradeoffConfig tradeoff{0.5, 4, 2, 2};

        std::vector<arma::cx_mat> comm_opt;
        std::vector<double> etas;
        for (arma::uword m = 0; m < subcarriers; ++m) {
            arma::cx_mat q, r;
            arma::qr_econ(q, r, random_cx(16, 2, rng));
            comm_opt.push_back(q);
            etas.push_back(0.96 + 0.02 * double(m));
        }
        const arma::cx_mat radar = radar_beamformer({{-0.3, 6.0}, {0.5, 14.0}}, cfg);
        const HybridDesign design = design_hybrid(dict, comm_opt, radar, tradeoff, etas);

        // Constant modulus of every analog entry.
        const double expected = 1.0 / 4.0;
        for (arma::uword j = 0; j < design.analog.n_cols; ++j) {
            for (arma::uword i = 0; i < design.analog.n_rows; ++i) {
                REQUIRE(std::abs(std::abs(design.analog(i, j)) - expected) < 1e-12);
            }
        }
        // Per-subcarrier transmit power.
        for (arma::uword m = 0; m < subcarriers; ++m) {
            const double power =
                std::pow(arma::norm(design.analog * design.baseband[m], "fro"), 2);
            REQUIRE(power == doctest::Approx(2.0).epsilon(1e-10));
            const double bsa_power =
                std::pow(arma::norm(design.analog * design.bsa_baseband[m], "fro"), 2);
            REQUIRE(bsa_power == doctest::Approx(2.0).epsilon(1e-10));
        }
        // Row-orthonormal auxiliary matrix.
        REQUIRE(arma::norm(design.auxiliary * design.auxiliary.t() -
                               arma::eye<arma::cx_mat>(2, 2),
                           "fro") < 1e-10);
        // Distinct atoms, finite residual history.
        for (std::size_t a = 0; a < design.selected_atoms.size(); ++a) {
            for (std::size_t b = a + 1; b < design.selected_atoms.size(); ++b) {
                REQUIRE(design.selected_atoms[a] != design.selected_atoms[b]);
            }
        }
        REQUIRE(design.residual_history.size() == design.selected_atoms.size());
        for (double r : design.residual_history) {
            REQUIRE(std::isfinite(r));
        }
        // BSA dominance per subcarrier against the uncompensated baseband.
        for (arma::uword m = 0; m < subcarriers; ++m) {
            const arma::cx_mat surrogate = sd_analog(design.analog, etas[m]);
            const double with_bsa = arma::norm(
                design.analog * design.bsa_baseband[m] - surrogate * design.baseband[m], "fro");
            const double without = arma::norm(
                design.analog * design.baseband[m] - surrogate * design.baseband[m], "fro");
            REQUIRE(with_bsa <= without * (1.0 + 1e-10) + 1e-12);
        }
    }

    SUBCASE("complete orthonormal dictionary reproduces the target") {
        // Four plane-wave atoms at DFT directions span C^4 exactly.
        const ArrayConfig small = thz_array(4);
        Dictionary dft;
        dft.direction_grid = arma::vec{-1.0, -0.5, 0.0, 0.5};
        dft.range_grid = arma::vec{std::numeric_limits<double>::infinity()};
        dft.atoms.set_size(4, 4);
        for (arma::uword j = 0; j < 4; ++j) {
            const SteeringParams p{dft.direction_grid(j),
                                   std::numeric_limits<double>::infinity()};
            dft.grid.push_back(p);
            dft.atoms.col(j) = steering_vector(small, p, small.carrier_frequency);
        }

        std::mt19937_64 rng(83);
        arma::cx_mat q, r;
        arma::qr_econ(q, r, random_cx(4, 2, rng));
        std::vector<arma::cx_mat> comm_opt{q};
        const arma::cx_mat radar = radar_beamformer({{0.25, 9.0}}, small);
        const TradeoffConfig tradeoff{1.0, 4, 2, 1};
        const HybridDesign design = design_hybrid(dft, comm_opt, radar, tradeoff, {1.0});

        // Undo the power normalization before comparing with the target.
        const arma::cx_mat realized = design.analog * design.baseband[0];
        const double scale = arma::norm(q, "fro") / arma::norm(realized, "fro");
        CHECK(arma::norm(scale * realized - q, "fro") <= 1e-6);
    }

    SUBCASE("greedy fit improves while the target is fixed") {
        std::mt19937_64 rng(89);
        const Dictionary dict = build_dictionary(cfg, 17, 5, 2.0, 20.0);
        const arma::cx_mat target = random_cx(16, 2, rng);
        std::vector<arma::cx_mat> targets{target};

        arma::cx_mat analog(16, 0);
        std::vector<arma::uword> picked;
        double previous = arma::norm(target, "fro");
        for (int step = 0; step < 5; ++step) {
            std::vector<arma::cx_mat> residuals{target - (analog.n_cols
                                                              ? arma::cx_mat(analog *
                                                                             ls_baseband(analog, target))
                                                              : arma::cx_mat(16, 2,
                                                                             arma::fill::zeros))};
            const arma::uword pick = omp_select(dict, residuals, &picked);
            picked.push_back(pick);
            analog.insert_cols(analog.n_cols, dict.atoms.col(pick));
            const double fit = arma::norm(target - analog * ls_baseband(analog, target), "fro");
            REQUIRE(fit <= previous + 1e-12);
            previous = fit;
        }
    }

    SUBCASE("dimension mismatches rejected") {
        const Dictionary dict = build_dictionary(cfg, 5, 2, 2.0, 20.0);
        std::mt19937_64 rng(97);
        std::vector<arma::cx_mat> comm_opt{random_cx(16, 2, rng)};
        const arma::cx_mat radar = random_cx(16, 2, rng);
        CHECK_THROWS_AS(design_hybrid(dict, comm_opt, radar, TradeoffConfig{0.5, 4, 2, 2}, {}),
                        std::invalid_argument);
        CHECK_THROWS_AS(design_hybrid(dict, {}, radar, TradeoffConfig{0.5, 4, 2, 2}, {1.0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            design_hybrid(dict, comm_opt, radar, TradeoffConfig{0.5, 2, 4, 2}, {1.0}),
            std::invalid_argument);
    }
}

} // TEST_SUITE
