#ifndef NFISAC_COMMON_HPP
#define NFISAC_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace nfisac {

/// Invalid configuration or inputs detected before any computation runs.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computation produced non-finite or otherwise unusable values.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Print a non-fatal diagnostic to stderr.
void warn(const std::string& message);

/// SplitMix64 finalizer.
std::uint64_t mix_seed(std::uint64_t x);

/// Derive an independent per-trial seed from the master seed. Trials seeded
/// this way can run in any order (or concurrently) with identical results.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

std::mt19937_64 make_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index);

} // namespace nfisac

#endif
