#include "nfisac/array.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "nfisac/common.hpp"

namespace nfisac {

namespace {

constexpr double two_pi = 2.0 * 3.14159265358979323846;

// Curvature coefficient of the Fresnel expansion.
double curvature(const SteeringParams& p) {
    return (1.0 - p.direction * p.direction) / (2.0 * p.range);
}

arma::vec grid_1d(double lo, double hi, arma::uword n) {
    if (n == 1) {
        return arma::vec{0.5 * (lo + hi)};
    }
    arma::vec g(n);
    for (arma::uword i = 0; i < n; ++i) {
        g(i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

} // namespace

ArrayConfig ArrayConfig::half_wavelength(arma::uword num_elements, double carrier_frequency) {
    if (carrier_frequency <= 0.0) {
        throw std::invalid_argument("ArrayConfig: carrier frequency must be positive");
    }
    ArrayConfig cfg{num_elements, speed_of_light / (2.0 * carrier_frequency), carrier_frequency};
    validate(cfg);
    return cfg;
}

void validate(const ArrayConfig& cfg) {
    if (cfg.num_elements < 2) {
        throw std::invalid_argument("ArrayConfig: need at least 2 elements");
    }
    if (!(cfg.spacing > 0.0) || !(cfg.carrier_frequency > 0.0)) {
        throw std::invalid_argument("ArrayConfig: spacing and carrier frequency must be positive");
    }
}

void validate(const SteeringParams& params) {
    if (!(std::abs(params.direction) <= 1.0)) {
        throw std::invalid_argument("SteeringParams: |direction| must be <= 1");
    }
    if (!(params.range > 0.0)) {
        throw std::invalid_argument("SteeringParams: range must be positive");
    }
}

double aperture(const ArrayConfig& cfg) {
    validate(cfg);
    return static_cast<double>(cfg.num_elements - 1) * cfg.spacing;
}

double fraunhofer_distance(double aperture, double wavelength) {
    if (!(aperture > 0.0) || !(wavelength > 0.0)) {
        throw std::invalid_argument("fraunhofer_distance: aperture and wavelength must be positive");
    }
    return 2.0 * aperture * aperture / wavelength;
}

double element_range(const SteeringParams& params, arma::uword element_index, double spacing) {
    validate(params);
    if (element_index < 1) {
        throw std::invalid_argument("element_range: element index is 1-based");
    }
    const double offset = static_cast<double>(element_index - 1) * spacing;
    return std::sqrt(params.range * params.range + offset * offset -
                     2.0 * params.range * offset * params.direction);
}

double element_range_fresnel(const SteeringParams& params, arma::uword element_index, double spacing) {
    validate(params);
    if (element_index < 1) {
        throw std::invalid_argument("element_range_fresnel: element index is 1-based");
    }
    const double offset = static_cast<double>(element_index - 1) * spacing;
    return params.range - offset * params.direction + offset * offset * curvature(params);
}

arma::cx_vec steering_vector(const ArrayConfig& cfg, const SteeringParams& params, double frequency) {
    validate(cfg);
    validate(params);
    if (!(frequency > 0.0)) {
        throw std::invalid_argument("steering_vector: frequency must be positive");
    }
    const double zeta = curvature(params);
    const double wavenumber = two_pi * frequency / ArrayConfig::speed_of_light;
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.num_elements));

    arma::cx_vec a(cfg.num_elements);
    for (arma::uword n = 0; n < cfg.num_elements; ++n) {
        const double offset = static_cast<double>(n) * cfg.spacing;
        const double phase = wavenumber * (offset * params.direction - offset * offset * zeta);
        a(n) = std::polar(scale, phase);
    }
    return a;
}

arma::cx_vec far_field_steering(const ArrayConfig& cfg, double direction, double frequency) {
    return steering_vector(cfg, SteeringParams{direction, std::numeric_limits<double>::infinity()},
                           frequency);
}

SteeringParams squint_map(const SteeringParams& params, double eta, bool* clamped) {
    validate(params);
    if (!(eta > 0.0)) {
        throw std::invalid_argument("squint_map: eta must be positive");
    }
    if (std::abs(params.direction) >= 1.0) {
        throw std::domain_error("squint_map: singular at |direction| = 1");
    }

    const double phi = params.direction;
    double mapped_dir = eta * phi;
    double mapped_range;
    bool did_clamp = false;

    if (std::abs(mapped_dir) > 1.0) {
        mapped_dir = (mapped_dir > 0.0) ? 1.0 : -1.0;
        mapped_range = std::numeric_limits<double>::infinity();
        did_clamp = true;
    } else {
        mapped_range = (1.0 - eta * eta * phi * phi) / (eta * (1.0 - phi * phi)) * params.range;
    }

    if (clamped != nullptr) {
        *clamped = did_clamp;
    } else if (did_clamp) {
        warn("squint_map: mapped direction clamped to +-1");
    }
    return SteeringParams{mapped_dir, mapped_range};
}

std::pair<double, double> squint_deviation(const SteeringParams& params, double eta) {
    bool clamped = false;
    const SteeringParams mapped = squint_map(params, eta, &clamped);
    if (clamped) {
        warn("squint_deviation: mapped direction clamped to +-1");
    }
    return {mapped.direction - params.direction, mapped.range - params.range};
}

Dictionary build_dictionary(const ArrayConfig& cfg, arma::uword n_directions, arma::uword n_ranges,
                            double r_min, double r_max) {
    validate(cfg);
    if (n_directions < 1 || n_ranges < 1) {
        throw std::invalid_argument("build_dictionary: grid must be non-empty");
    }
    if (!(r_min > 0.0) || !(r_min <= r_max)) {
        throw std::invalid_argument("build_dictionary: need 0 < r_min <= r_max");
    }

    Dictionary dict;
    dict.direction_grid = grid_1d(-1.0, 1.0, n_directions);
    dict.range_grid = grid_1d(r_min, r_max, n_ranges);
    dict.atoms.set_size(cfg.num_elements, n_directions * n_ranges);
    dict.grid.reserve(n_directions * n_ranges);

    arma::uword col = 0;
    for (arma::uword i = 0; i < n_directions; ++i) {
        for (arma::uword j = 0; j < n_ranges; ++j) {
            const SteeringParams p{dict.direction_grid(i), dict.range_grid(j)};
            dict.grid.push_back(p);
            dict.atoms.col(col++) = steering_vector(cfg, p, cfg.carrier_frequency);
        }
    }
    return dict;
}

Dictionary build_far_field_dictionary(const ArrayConfig& cfg, arma::uword n_directions) {
    validate(cfg);
    if (n_directions < 1) {
        throw std::invalid_argument("build_far_field_dictionary: grid must be non-empty");
    }

    Dictionary dict;
    dict.direction_grid = grid_1d(-1.0, 1.0, n_directions);
    dict.range_grid = arma::vec{std::numeric_limits<double>::infinity()};
    dict.atoms.set_size(cfg.num_elements, n_directions);
    dict.grid.reserve(n_directions);

    for (arma::uword i = 0; i < n_directions; ++i) {
        const SteeringParams p{dict.direction_grid(i), std::numeric_limits<double>::infinity()};
        dict.grid.push_back(p);
        dict.atoms.col(i) = steering_vector(cfg, p, cfg.carrier_frequency);
    }
    return dict;
}

} // namespace nfisac
