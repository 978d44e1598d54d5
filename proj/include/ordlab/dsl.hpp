#pragma once

#include <string>
#include <variant>

#include "ordlab/structural.hpp"

namespace ordlab {

using AnyFn = std::variant<SimpleFn, StructFn>;

// fdelta(w^2; parity=even) | type0(3) | const(1/2, w^2) | scale(1/3, F) |
// patch([0,w] -> F, [w+1,w^2] -> G [; top=ORD]) | gallery(prop53b, 4) |
// type(n=2, m=8, k=2) | truncate(type(...), K) | flatten(STRUCT) | blocks(STRUCT)
AnyFn parse_function(const std::string& text, Convention default_conv = Convention::Even);

// the SimpleFn of a parsed function; flattens structural functions (InfiniteRange when impossible)
SimpleFn as_simple(const AnyFn& f);
std::string fn_descriptor(const AnyFn& f);

}  // namespace ordlab
