#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "ordlab/interval_sets.hpp"

namespace ordlab {

// x in S' decided from the points fs(x, t) + w^rho just below x, for large t
bool derived_oracle(const CanonicalSet& s, const Ordinal& x);

CanonicalSet random_set(const Ordinal& top, std::mt19937_64& rng);

struct OracleStats {
    size_t instances = 0;
    size_t checks = 0;
    size_t mismatches = 0;
    std::string first_mismatch;
};

// instance i draws from its own generator seeded by (seed, i), so both kernels see identical inputs
OracleStats oracle_sweep(size_t instances, std::uint64_t seed);
OracleStats oracle_sweep_serial(size_t instances, std::uint64_t seed);

}  // namespace ordlab
