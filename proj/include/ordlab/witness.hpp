#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/fn_core.hpp"

namespace ordlab {

// least y >= x with complexity(y) <= n and y <= cap
std::optional<Ordinal> least_simple_above(const Ordinal& x, std::uint64_t n, const Ordinal& cap);

// r_n(x): least point of R_n = {complexity <= n} U {top} that is >= x
Ordinal reveal_point(const Ordinal& x, std::uint64_t n, const Ordinal& top);

// sorted R_n on [0, top]; throws BudgetExceeded beyond cap points
std::vector<Ordinal> enumerate_simple(std::uint64_t n, const Ordinal& top, size_t cap = 400000);

// stage k of the canonical witness (k = 0 is identically zero)
StepFn witness_stage(const SimpleFn& f, std::uint64_t k, size_t cap = 400000);
Rational witness_value(const SimpleFn& f, std::uint64_t k, const Ordinal& x);
// total variation sum_k |f_{k+1}(x) - f_k(x)| of the canonical witness at x
Rational witness_variation(const SimpleFn& f, const Ordinal& x);
// stage from which the witness is constant at x
std::uint64_t stabilization_stage(const SimpleFn& f, const Ordinal& x);

// value per rank below top plus the top value, when F depends only on rank
struct RankProfile {
    std::uint64_t max_rank = 0;
    std::vector<std::optional<Rational>> phi;  // indexed by rank; nullopt when no point of that rank lies below top
    Rational top_value;
};
std::optional<RankProfile> rank_profile(const SimpleFn& f);
Rational rank_path_bound(const RankProfile& p, bool omega_below_top);

struct WitnessBound {
    bool finite = true;
    Rational bound;
    std::string method;
    bool exact = false;
    std::optional<Ordinal> argmax;
    std::map<long, Rational> block_bounds;
};

WitnessBound witness_bound(const SimpleFn& f);

struct EnumResult {
    Rational max;
    Ordinal argmax;
    size_t points = 0;
};

// max variation over all points of complexity <= b (parallel kernel and serial reference)
EnumResult max_variation_enum(const SimpleFn& f, std::uint64_t b);
EnumResult max_variation_enum_serial(const SimpleFn& f, std::uint64_t b);

}  // namespace ordlab
