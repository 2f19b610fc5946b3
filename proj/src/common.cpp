#include "nfisac/common.hpp"

#include <iostream>

namespace nfisac {

void warn(const std::string& message) {
    std::cerr << "warning: " << message << std::endl;
}

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix_seed(master_seed ^ mix_seed(trial_index + 1));
}

std::mt19937_64 make_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
    return std::mt19937_64(trial_seed(master_seed, trial_index));
}

} // namespace nfisac
