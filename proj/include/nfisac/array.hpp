#ifndef NFISAC_ARRAY_HPP
#define NFISAC_ARRAY_HPP

#include <armadillo>
#include <vector>

namespace nfisac {

/// Uniform linear array geometry and carrier parameters.
struct ArrayConfig {
    arma::uword num_elements = 0;   // N, at least 2
    double spacing = 0.0;           // element spacing d in meters
    double carrier_frequency = 0.0; // f_c in Hz

    static constexpr double speed_of_light = 299792458.0; // c_0, m/s

    /// Standard half-wavelength array: d = c_0 / (2 f_c).
    static ArrayConfig half_wavelength(arma::uword num_elements, double carrier_frequency);

    double wavelength() const { return speed_of_light / carrier_frequency; }
};

void validate(const ArrayConfig& cfg);

/// Source location seen from the array: direction is the sine of the
/// physical angle (in [-1, 1]), range is the distance to the reference
/// element in meters. range may be +inf for a far-field source.
struct SteeringParams {
    double direction = 0.0;
    double range = 0.0;
};

void validate(const SteeringParams& params);

/// Array aperture D = (N - 1) d.
double aperture(const ArrayConfig& cfg);

/// Fraunhofer distance 2 D^2 / lambda separating near and far field.
double fraunhofer_distance(double aperture, double wavelength);

/// Exact distance between a source and the n-th element (1-based index):
/// sqrt(r^2 + (n-1)^2 d^2 - 2 r (n-1) d phi).
double element_range(const SteeringParams& params, arma::uword element_index, double spacing);

/// Second-order (Fresnel) expansion of element_range:
/// r - (n-1) d phi + (n-1)^2 d^2 zeta with zeta = (1 - phi^2) / (2 r).
double element_range_fresnel(const SteeringParams& params, arma::uword element_index, double spacing);

/// Near-field steering vector at the given frequency. Element n carries
/// magnitude 1/sqrt(N) and phase
///   2 pi (f / c_0) ((n-1) d phi - (n-1)^2 d^2 zeta),
/// the common range-dependent phase being dropped.
arma::cx_vec steering_vector(const ArrayConfig& cfg, const SteeringParams& params, double frequency);

/// Plane-wave steering vector (the curvature term zeta forced to zero).
arma::cx_vec far_field_steering(const ArrayConfig& cfg, double direction, double frequency);

/// Focus drift of a beam designed at the carrier when observed at a
/// frequency with ratio eta = f_c / f_m: the beam lands at
///   direction' = eta * phi,
///   range'     = (1 - eta^2 phi^2) / (eta (1 - phi^2)) * r.
/// If |eta * phi| exceeds 1 the direction is clamped to +-1 (range becomes
/// +inf). The clamp is reported through `clamped` when provided, otherwise
/// as a warning.
SteeringParams squint_map(const SteeringParams& params, double eta, bool* clamped = nullptr);

/// (direction', range') - (direction, range) under squint_map.
std::pair<double, double> squint_deviation(const SteeringParams& params, double eta);

/// Grid of candidate transmit steering vectors. Column j is exactly
/// steering_vector(cfg, grid[j], f_c). Atoms are ordered direction-major:
/// j = i_direction * n_ranges + i_range.
struct Dictionary {
    arma::cx_mat atoms;                // N_T x N, unit-norm columns
    std::vector<SteeringParams> grid;  // one entry per column
    arma::vec direction_grid;
    arma::vec range_grid;

    arma::uword size() const { return atoms.n_cols; }
};

/// Uniform (direction x range) dictionary. Directions span [-1, 1]
/// inclusive; ranges span [r_min, r_max]. A single-point axis collapses to
/// the interval midpoint.
Dictionary build_dictionary(const ArrayConfig& cfg, arma::uword n_directions, arma::uword n_ranges,
                            double r_min, double r_max);

/// Direction-only dictionary of plane-wave atoms (ranges pinned at +inf).
Dictionary build_far_field_dictionary(const ArrayConfig& cfg, arma::uword n_directions);

} // namespace nfisac

#endif
