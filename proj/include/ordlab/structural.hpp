#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/fn_core.hpp"
#include "ordlab/indices.hpp"

namespace ordlab {

struct StructNode;
using NodePtr = std::shared_ptr<const StructNode>;

// Copy j of a tail is multiplied by p / (q*j + r), plus the label of the enclosing
// isolated point when from_label is set.
struct Scaling {
    bool reciprocal = false;
    long p = 1, q = 1, r = 1;
    bool from_label = false;
};

struct TailRule {
    NodePtr tmpl;
    Scaling scaling;
    // copies of a carrying tail advance the isolated-point label by their index
    bool carry = false;
};

struct StructNode {
    enum class Kind { Leaf, Sum, Limit };
    Kind kind = Kind::Leaf;
    Rational value;                 // leaf value, or value at the limit point
    std::vector<NodePtr> children;  // Sum children or Limit prefix
    std::optional<TailRule> tail;
};

struct StructFn {
    NodePtr root;
    std::string descriptor;
    // blocks (i, j) with i + j > truncation are zeroed; negative means untruncated
    long truncation = -1;
};

NodePtr make_leaf(const Rational& v);
NodePtr make_sum(std::vector<NodePtr> children);
NodePtr make_limit(std::vector<NodePtr> prefix, std::optional<TailRule> tail, const Rational& limit_value);

StructFn build_type(long n, long m, long base_depth, Convention conv = Convention::Even);
StructFn truncate(const StructFn& f, long k);

using Address = std::vector<long>;
Rational struct_eval(const StructFn& f, const Address& a);
std::string format_address(const Address& a);
Address parse_address(const std::string& s);

Ordinal order_type(const StructNode& n);
Ordinal struct_top(const StructFn& f);
Ordinal address_to_ordinal(const StructFn& f, const Address& a);

// closed-form bounds of all values of the node; the tail supremum sits at copy 1
std::pair<Rational, Rational> value_range(const StructFn& f);
// sup |F - truncate(F, k)|, in closed form
Rational truncation_error(const StructFn& f, long k);
// max |value| over the first n materialized copies of every reciprocal tail
Rational materialized_sup(const StructFn& f, long n);

// Finite presentation of F: tails keep explicit copies while they can matter and one
// representative for all remaining copies.
struct ExpNode {
    StructNode::Kind kind = StructNode::Kind::Leaf;
    Rational value;
    Ordinal ot;
    std::vector<ExpNode> kids;
    std::vector<ExpNode> copies;
    std::shared_ptr<ExpNode> rest;
    Ordinal tmpl_ot;
    bool block_tail = false;  // copies are reciprocally scaled blocks
    Rational lo, hi;          // value range over the subtree
};

// threshold > 0: copies whose value range is below it collapse into the representative;
// threshold == 0: only exactly zero copies collapse (InfiniteRange otherwise)
ExpNode expand(const StructFn& f, const Rational& threshold);

struct SSet {
    bool pt = false;
    std::vector<SSet> kids, copies;
    std::shared_ptr<SSet> rest;
    bool operator==(const SSet& o) const;
};

SSet sset_full(const ExpNode& e);
bool sset_empty(const SSet& s);
std::optional<std::pair<Rational, Rational>> sset_extrema(const ExpNode& e, const SSet& s);
SSet struct_osc_step(const ExpNode& e, const SSet& s, const Rational& delta);

struct StructTrace {
    TraceSpec spec;
    ExpNode exp;
    std::vector<SSet> stages;  // stage i at position i
    Terminal terminal = Terminal::EmptyAt;
    long at = 0;
};

StructTrace struct_index(const StructFn& f, const TraceSpec& spec, unsigned max_steps = 400);

struct StructChain {
    Rational best_sum;
    std::vector<Rational> chain;
    Rational delta_floor;
};
// gen chains with deltas from the gaps between values of copies whose range reaches delta_floor
StructChain struct_chain_search(const StructFn& f, const Rational& delta_floor);

SimpleFn flatten(const StructFn& f);
// flatten as a patch of clopen intervals: every kept block at every depth, and the
// gaps between blocks carrying the rank-definable base values
SimpleFn flatten_blocks(const StructFn& f);
CanonicalSet flatten_set(const StructFn& f, const ExpNode& e, const SSet& s);

// blocks n = 0..n_max of type n on consecutive clopen intervals of [0, w^(w^2)], truncated at level 2
SimpleFn prop53a(long n_max, Convention conv = Convention::Even);
StructFn prop53a_block(long n, Convention conv = Convention::Even);
constexpr long kProp53aTruncation = 2;

}  // namespace ordlab
