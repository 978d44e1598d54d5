#include <doctest.h>

#include <random>

#include "ordlab/structural.hpp"

using namespace ordlab;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }

// walks down from the root choosing children and tail copies at random
Address random_address(const StructFn& f, std::mt19937_64& rng) {
    Address a;
    const StructNode* n = f.root.get();
    while (n->kind != StructNode::Kind::Leaf) {
        long nk = static_cast<long>(n->children.size());
        long span = nk + (n->tail ? 4 : 0);
        if (n->kind == StructNode::Kind::Limit && std::uniform_int_distribution<int>(0, 3)(rng) == 0) break;
        long idx = std::uniform_int_distribution<long>(1, span)(rng);
        a.push_back(idx);
        n = idx <= nk ? n->children[static_cast<size_t>(idx - 1)].get() : n->tail->tmpl.get();
    }
    return a;
}
}  // namespace

TEST_CASE("type 0 functions") {
    StructFn t = build_type(0, 1, 3);
    auto [lo, hi] = value_range(t);
    CHECK(lo == 0);
    CHECK(hi == Rational(1, 3));
    CHECK(struct_eval(t, {}) == type0(3).eval(type0(3).top()));
    SimpleFn g = flatten(build_type(0, 1, 2));
    SimpleFn want = type0(2);
    CHECK(g.top() == want.top());
    for (const auto& v : {Rational(0), Rational(1, 2)}) CHECK(g.level_set_eq(v).equals(want.level_set_eq(v)));
}

TEST_CASE("type 1 bounds") {
    StructFn t = build_type(1, 8, 2);
    auto [lo, hi] = value_range(t);
    CHECK(lo >= 0);
    CHECK(hi <= Rational(1, 2));
    CHECK(hi > 0);
    CHECK_THROWS_AS(flatten(t), Error);
    CHECK(truncation_error(t, 3) <= Rational(1, 3 + 8));
    CHECK(truncation_error(truncate(t, 2), 2) == 0);
}

TEST_CASE("addresses") {
    StructFn t = build_type(1, 8, 2);
    CHECK(parse_address("/2/3") == Address{2, 3});
    CHECK(format_address({2, 3}) == "/2/3");
    CHECK(format_address({}) == "/");
    CHECK_THROWS_AS(parse_address("2/3"), Error);
    CHECK_THROWS_AS(struct_eval(t, {0}), Error);
    CHECK_THROWS_AS(struct_eval(build_type(0, 1, 2), {1, 1, 1, 1, 1, 1, 1, 1}), Error);
}

TEST_CASE("addresses agree with the flattened function") {
    std::mt19937_64 rng(17);
    for (const StructFn& f : {build_type(0, 1, 3), truncate(build_type(1, 8, 2), 1)}) {
        SimpleFn g = flatten(f);
        CHECK(g.top() == struct_top(f));
        for (int i = 0; i < 200; ++i) {
            Address a = random_address(f, rng);
            Ordinal x = address_to_ordinal(f, a);
            REQUIRE(x <= g.top());
            REQUIRE(struct_eval(f, a) == g.eval(x));
        }
    }
}

TEST_CASE("sums concatenate") {
    StructFn a = build_type(0, 1, 2);
    StructFn s{make_sum({a.root, a.root}), "sum", -1};
    CHECK(order_type(*s.root) == O("w^2*2 + 1"));
    CHECK(struct_top(s) == O("w^2*2"));
    CHECK(address_to_ordinal(s, {2}) == O("w^2*2"));
}

TEST_CASE("structural beta traces") {
    for (long n = 1; n <= 4; ++n) {
        StructTrace t = struct_index(build_type(0, 1, n), TraceSpec::beta(Rational(1, n)));
        CHECK(t.terminal == Terminal::EmptyAt);
        CHECK(t.at == n + 1);
    }
    StructFn a = build_type(0, 1, 2), b = build_type(0, 1, 3);
    StructFn s{make_sum({a.root, b.root}), "sum", -1};
    CHECK(struct_index(s, TraceSpec::beta(Rational(1, 3))).at == 4);
}

TEST_CASE("structural chain search") {
    StructChain c = struct_chain_search(build_type(1, 8, 2), Rational(1, 16));
    CHECK(c.best_sum <= 4);
    CHECK(c.best_sum > 0);
}

TEST_CASE("prop53a family") {
    SimpleFn f = prop53a(2);
    REQUIRE(f.family().has_value());
    CHECK(f.family()->blocks.size() == 3);
    CHECK(f.sup_norm() <= 1);
}
