#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qcrec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Error in user-supplied input (bad config, malformed file, out-of-domain value).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure that survived the configured retries (e.g. Cholesky after jitter).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// splitmix64, used to derive independent streams from (base seed, unit id)
// so parallel schedules cannot change results.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t unit) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (unit + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t base, std::uint64_t unit = 0) {
    return std::mt19937_64(mix_seed(base, unit));
}

} // namespace qcrec
