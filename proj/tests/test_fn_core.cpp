#include <doctest.h>

#include <algorithm>
#include <random>

#include "ordlab/fn_core.hpp"
#include "ordlab/oracle.hpp"
#include "ordlab/sampling.hpp"

using namespace ordlab;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
Rational Q(const char* s) { return parse_rational(s); }

// adherent values at x from membership and the derived-set oracle only
Rational osc_oracle(const SimpleFn& f, const CanonicalSet& s, const Ordinal& x) {
    std::vector<Rational> vs;
    for (const auto& v : f.values()) {
        CanonicalSet lv = s.intersect(f.level_set_eq(v));
        if (lv.member(x) || derived_oracle(lv, x)) vs.push_back(v);
    }
    auto [lo, hi] = std::minmax_element(vs.begin(), vs.end());
    return *hi - *lo;
}
}  // namespace

TEST_CASE("evaluation") {
    SimpleFn f = f_delta(O("w"));
    CHECK(f.eval(O("w")) == 1);
    CHECK(f.eval(Ordinal(5)) == 0);
    CHECK(f.scaled(Q("1/3")).eval(O("w")) == Q("1/3"));
    CHECK_THROWS_AS(f.eval(O("w + 1")), Error);
    SimpleFn g = f_delta(O("w"), Convention::Odd);
    CHECK(g.eval(O("w")) == 0);
    CHECK(g.eval(Ordinal(5)) == 1);
}

TEST_CASE("level sets") {
    Ordinal t = O("w^2");
    SimpleFn f = f_delta(t);
    CanonicalSet rank0(t, {make_cell(Ordinal(), t, RankSet::exactly(Ordinal()))});
    CHECK(f.level_set_le(Q("1/4")).equals(rank0.unite(CanonicalSet::points(t, {t}))));
    CHECK(f.level_set_ge(Q("3/4")).equals(CanonicalSet(t, {make_cell(Ordinal(), t, RankSet::exactly(Ordinal(1)))})));
    CHECK(f.level_set_le(2).equals(CanonicalSet::full(t)));
    CHECK(f.level_set_ge(2).empty());
}

TEST_CASE("oscillation and extrema") {
    SimpleFn f = f_delta(O("w"));
    CanonicalSet all = CanonicalSet::full(O("w"));
    CHECK(f.osc(all, O("w")) == 1);
    CHECK(f.osc(all, Ordinal(3)) == 0);
    CHECK_THROWS_AS(f.osc(CanonicalSet::points(O("w"), {Ordinal(1)}), Ordinal(2)), Error);
    Ordinal t = O("w^2");
    auto e = f_delta(t).extrema(CanonicalSet(t, {make_cell(O("w"), t, RankSet::at_least(Ordinal(1)))}));
    REQUIRE(e.has_value());
    CHECK(e->first == 0);
    CHECK(e->second == 1);
    CHECK_FALSE(f_delta(t).extrema(CanonicalSet(t)).has_value());
}

TEST_CASE("oscillation agrees with the oracle") {
    std::mt19937_64 rng(21);
    std::vector<SimpleFn> fns = {f_delta(O("w^3")), f_delta(O("w^2"), Convention::Odd), type0(3), prop53d(),
                                 prop53b(3)};
    size_t checks = 0;
    for (const auto& f : fns) {
        for (int i = 0; i < 20; ++i) {
            CanonicalSet s = random_set(f.top(), rng).closure();
            if (s.empty()) continue;
            for (const auto& x : sample_points(f.top(), s.cells(), rng, 10)) {
                if (!s.member(x)) continue;
                ++checks;
                REQUIRE(f.osc(s, x) == osc_oracle(f, s, x));
            }
        }
    }
    CHECK(checks > 200);
}

TEST_CASE("gallery") {
    SimpleFn f = f_delta(O("w^2"));
    CHECK(f.values() == std::vector<Rational>{0, 1});
    CHECK(f.level_set_eq(1).equals(CanonicalSet(f.top(), {make_cell(Ordinal(), f.top(), RankSet::exactly(Ordinal(1)))})));
    SimpleFn t3 = type0(3);
    CHECK(t3.values() == std::vector<Rational>{0, Q("1/3")});
    CHECK(t3.sup_norm() == Q("1/3"));
    SimpleFn b = prop53b(3);
    REQUIRE(b.family().has_value());
    for (const auto& blk : b.family()->blocks) {
        if (blk.index == 0) continue;
        auto vs = blk.local->values();
        CHECK(vs.front() == 0);
        CHECK(vs.back() == Rational(1, blk.index));
    }
    CHECK(prop53c().top() == O("w^(w)"));
}

TEST_CASE("patch and restriction") {
    SimpleFn a = SimpleFn::constant(O("w"), 1);
    CHECK_THROWS_AS(patch(O("w*3"), {{Ordinal(), O("w"), a}, {O("w"), O("w*2"), a}}), Error);
    SimpleFn p = patch(O("w*3"), {{Ordinal(), O("w"), a}, {O("w*2 + 1"), O("w*3"), f_delta(O("w"))}});
    CHECK(p.eval(Ordinal(4)) == 1);
    CHECK(p.eval(O("w + 3")) == 0);
    CHECK(p.eval(O("w*3")) == 1);
    CHECK(p.eval(O("w*2 + 4")) == 0);
    SimpleFn r = restrict_extend(f_delta(O("w^2")), O("w + 1"), O("w^2"));
    CHECK(r.eval(O("w")) == 0);
    CHECK(r.eval(O("w*2")) == 1);
}

TEST_CASE("step functions") {
    StepFn s(O("w*2"), {{Ordinal(), O("w"), 1}, {O("w + 1"), O("w*2"), 2}});
    CHECK(s.eval(O("w")) == 1);
    CHECK(s.eval(O("w + 5")) == 2);
    CHECK(s.locate(O("w*2")) == 1);
    CHECK(stepfn_defect(O("w*2"), {{Ordinal(), O("w + 3"), 1}, {O("w + 4"), O("w*2"), 2}}).empty());
    CHECK_FALSE(stepfn_defect(O("w*2"), {{Ordinal(), Ordinal(3), 1}, {O("w"), O("w*2"), 2}}).empty());
    CHECK_FALSE(stepfn_defect(O("w*2"), {{Ordinal(), O("w"), 1}}).empty());
}
