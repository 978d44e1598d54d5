#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ordlab/interval_sets.hpp"

namespace ordlab {

// Random CNF ordinal <= top.
Ordinal random_ordinal(const Ordinal& top, std::mt19937_64& rng);

// Endpoints of every cell, their predecessors and fundamental-sequence neighbours, and top.
std::vector<Ordinal> corner_points(const Ordinal& top, const std::vector<Cell>& cells);

// corners followed by random points, deduplicated, in deterministic order
std::vector<Ordinal> sample_points(const Ordinal& top, const std::vector<Cell>& cells, std::mt19937_64& rng,
                                   size_t random_count);

}  // namespace ordlab
