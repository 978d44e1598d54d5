#include <doctest.h>

#include <random>

#include "ordlab/interval_sets.hpp"
#include "ordlab/oracle.hpp"
#include "ordlab/sampling.hpp"

using namespace ordlab;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
}  // namespace

TEST_CASE("cell membership") {
    Cell c = make_cell(Ordinal(), O("w^2"), RankSet::at_least(Ordinal(2)));
    CHECK(cell_member(c, O("w^2")));
    CHECK_FALSE(cell_member(c, O("w*3")));
    CHECK(cell_member(make_cell(O("w*2 + 1"), O("w^2"), RankSet::exactly(Ordinal(1))), O("w*4")));
}

TEST_CASE("least elements") {
    CHECK(cell_min(make_cell(O("w + 1"), O("w^3"), RankSet::at_least(Ordinal(2)))) == O("w^2"));
    CHECK_FALSE(cell_min(make_cell(Ordinal(1), O("w"), RankSet::at_least(Ordinal(2)))).has_value());
    CHECK(cell_min(make_cell(Ordinal(), O("w^2"), RankSet::at_least(Ordinal(1), ParityFilter::Odd))) == O("w^2"));
}

TEST_CASE("set algebra") {
    Ordinal top = O("w");
    CanonicalSet lim(top, {make_cell(Ordinal(), top, RankSet::at_least(Ordinal(1)))});
    CanonicalSet iso(top, {make_cell(Ordinal(), top, RankSet::exactly(Ordinal()))});
    CHECK(lim.complement().equals(iso));
    Ordinal t2 = O("w^2");
    CanonicalSet a(t2, {make_cell(Ordinal(), t2, RankSet::at_least(Ordinal(1)))});
    CanonicalSet b = CanonicalSet::interval(t2, O("w + 1"), t2);
    CanonicalSet want(t2, {make_cell(O("w + 1"), t2, RankSet::at_least(Ordinal(1)))});
    CHECK(a.intersect(b).equals(want));
    CHECK(a.unite(CanonicalSet(t2)).equals(a));
    CHECK(a.diff(a).empty());
    CHECK(a.subset_of(CanonicalSet::full(t2)));
    CHECK_THROWS_AS(a.unite(CanonicalSet(top)), Error);
}

TEST_CASE("closure and derived sets") {
    Ordinal t2 = O("w^2");
    CanonicalSet succ(t2, {make_cell(Ordinal(1), t2, RankSet::exactly(Ordinal()))});
    CHECK(succ.closure().equals(CanonicalSet::interval(t2, Ordinal(1), t2)));
    CHECK(CanonicalSet::full(t2).derived().equals(CanonicalSet(t2, {make_cell(O("w"), t2, RankSet::at_least(Ordinal(1)))})));
    CHECK(CanonicalSet(t2).closure().empty());
    CHECK(CanonicalSet::points(t2, {O("w"), Ordinal(3)}).derived().empty());
}

TEST_CASE("normal form is idempotent") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Ordinal top = O("w^3*2 + w");
        CanonicalSet s = random_set(top, rng);
        CanonicalSet again(top, s.cells());
        CHECK(again == s);
    }
}

TEST_CASE("derived sets agree with the fundamental-sequence oracle") {
    std::mt19937_64 rng(11);
    size_t checks = 0;
    for (int i = 0; i < 150; ++i) {
        Ordinal top = i % 2 ? O("w^4 + w^2") : O("w^(w) + w");
        CanonicalSet s = random_set(top, rng);
        CanonicalSet d = s.derived(), c = s.closure();
        for (const auto& x : sample_points(top, s.cells(), rng, 15)) {
            ++checks;
            REQUIRE(d.member(x) == derived_oracle(s, x));
            REQUIRE(c.member(x) == (s.member(x) || derived_oracle(s, x)));
        }
    }
    CHECK(checks > 1000);
}

TEST_CASE("oracle sanity") {
    Ordinal t2 = O("w^2");
    CHECK(derived_oracle(CanonicalSet::full(t2), O("w")));
    CHECK_FALSE(derived_oracle(CanonicalSet::points(t2, {O("w")}), O("w")));
    CHECK_FALSE(derived_oracle(CanonicalSet::full(t2), O("5")));
    CHECK(derived_oracle(CanonicalSet(t2, {make_cell(Ordinal(), t2, RankSet::exactly(Ordinal(1)))}), t2));
}

TEST_CASE("parallel and serial oracle sweeps match") {
    OracleStats p = oracle_sweep(200, 5), s = oracle_sweep_serial(200, 5);
    CHECK(p.checks == s.checks);
    CHECK(p.mismatches == 0);
    CHECK(s.mismatches == 0);
}
