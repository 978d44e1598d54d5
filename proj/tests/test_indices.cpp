#include <doctest.h>

#include <algorithm>
#include <random>

#include "ordlab/indices.hpp"
#include "ordlab/oracle.hpp"
#include "ordlab/sampling.hpp"

using namespace ordlab;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
Rational Q(const char* s) { return parse_rational(s); }

bool osc_at_least(const SimpleFn& f, const CanonicalSet& k, const Ordinal& x, const Rational& d) {
    std::vector<Rational> vs;
    for (const auto& v : f.values()) {
        CanonicalSet lv = k.intersect(f.level_set_eq(v));
        if (lv.member(x) || derived_oracle(lv, x)) vs.push_back(v);
    }
    if (vs.empty()) return false;
    auto [lo, hi] = std::minmax_element(vs.begin(), vs.end());
    return *hi - *lo >= d;
}
}  // namespace

TEST_CASE("beta trace of F_delta on w^2") {
    SimpleFn f = f_delta(O("w^2"));
    IndexTrace t = index_run(f, TraceSpec::beta(1));
    CHECK(t.terminal == Terminal::EmptyAt);
    CHECK(t.at == Ordinal(3));
    REQUIRE(t.stage_set(Ordinal(1)));
    CHECK(t.stage_set(Ordinal(1))->equals(CanonicalSet::full(f.top()).derived()));
    REQUIRE(t.stage_set(Ordinal(2)));
    CHECK(t.stage_set(Ordinal(2))->equals(CanonicalSet::points(f.top(), {f.top()})));
    CHECK(t.last_nonempty() == Ordinal(2));
}

TEST_CASE("alpha and general traces") {
    SimpleFn f = f_delta(O("w^2"));
    IndexTrace a = index_run(f, TraceSpec::alpha(Q("1/4"), Q("3/4")));
    CHECK(a.terminal == Terminal::EmptyAt);
    CHECK(a.at == Ordinal(3));
    CHECK(a.stage_set(Ordinal(2))->equals(CanonicalSet::points(f.top(), {f.top()})));
    IndexTrace g = index_run(f, TraceSpec::gen({1, 1, 1}));
    CHECK(g.at == Ordinal(3));
    CHECK_FALSE(g.stage_set(Ordinal(2))->empty());
}

TEST_CASE("successor step agrees with the oscillation oracle") {
    std::mt19937_64 rng(5);
    std::vector<SimpleFn> fns = {f_delta(O("w^3")), type0(3), prop53d(), prop53b(3)};
    size_t checks = 0;
    for (const auto& f : fns) {
        for (int i = 0; i < 15; ++i) {
            CanonicalSet k = random_set(f.top(), rng).closure();
            for (const Rational& d : {Q("1/3"), Rational(1)}) {
                CanonicalSet next = osc_step(f, k, d);
                for (const auto& x : sample_points(f.top(), k.cells(), rng, 8)) {
                    ++checks;
                    REQUIRE(next.member(x) == (k.member(x) && osc_at_least(f, k, x, d)));
                }
            }
        }
    }
    CHECK(checks > 300);
}

TEST_CASE("traces shrink as delta grows") {
    for (const SimpleFn& f : {type0(4), f_delta(O("w^3")), prop53d()}) {
        std::vector<Rational> ds = {Q("1/8"), Q("1/4"), Q("1/2"), 1};
        for (size_t i = 0; i + 1 < ds.size(); ++i) {
            IndexTrace lo = index_run(f, TraceSpec::beta(ds[i]));
            IndexTrace hi = index_run(f, TraceSpec::beta(ds[i + 1]));
            CHECK(hi.at <= lo.at);
            for (const auto& s : hi.stages)
                if (const CanonicalSet* l = lo.stage_set(s.index)) CHECK(s.set.subset_of(*l));
        }
    }
}

TEST_CASE("constant general deltas reproduce the beta trace") {
    SimpleFn f = type0(3);
    IndexTrace b = index_run(f, TraceSpec::beta(Q("1/3")));
    IndexTrace g = index_run(f, TraceSpec::gen(std::vector<Rational>(6, Q("1/3"))));
    REQUIRE(b.at == Ordinal(4));
    for (std::uint64_t i = 0; i <= 3; ++i) CHECK(b.stage_set(Ordinal(i))->equals(*g.stage_set(Ordinal(i))));
}

TEST_CASE("beta supremum") {
    for (std::uint64_t n = 1; n <= 5; ++n) {
        BetaSup b = beta_sup(f_delta(Ordinal::omega_pow(Ordinal(n))));
        CHECK(b.value == Ordinal(n + 1));
        CHECK_FALSE(b.lower_bound_only);
    }
    CHECK(beta_sup(SimpleFn::constant(O("w^2"), 3)).value == Ordinal(1));
    CHECK(beta_sup(prop53c()).value == O("w + 1"));
}

TEST_CASE("I norms") {
    INorms a = i_norms(f_delta(O("w^2")));
    CHECK(a.i_prime.value == 2);
    CHECK(a.i_value.value == 2);
    for (long n = 1; n <= 4; ++n) {
        INorms t = i_norms(type0(n));
        CHECK(t.i_prime.value == 1);
        CHECK(t.i_value.value == 1);
    }
}

TEST_CASE("filtered-sum criterion") {
    Ordinal top = O("w");
    StepFn zero(top, {{Ordinal(), top, 0}}), one(top, {{Ordinal(), top, 1}});
    CriterionResult c = b14_criterion_check({zero, zero, zero, zero}, Q("1/2"), Q("1/100"));
    CHECK(c.pass);
    CriterionResult alt = b14_criterion_check({zero, one, zero, one}, Q("1/2"), 1);
    CHECK_FALSE(alt.pass);
    CHECK(alt.worst_sum >= 2);
    CriterionResult ser = b14_criterion_check_serial({zero, one, zero, one}, Q("1/2"), 1);
    CHECK(ser.pass == alt.pass);
    CHECK(ser.worst_sum == alt.worst_sum);
    CHECK(ser.subsequences == alt.subsequences);
}

TEST_CASE("closed forms for the norm-inequivalence family") {
    CHECK(prop85_query(Prop85Mode::Nonempty, 4, Q("1/2")).nonempty);
    CHECK_FALSE(prop85_query(Prop85Mode::Nonempty, 5, Q("1/2")).nonempty);
    CHECK(prop85_query(Prop85Mode::Chain, 3, 1).value == Q("11/3"));
    CHECK(prop85_query(Prop85Mode::IPrimeCheck, 4, Q("1/2")).holds);
    // 2 H_m by direct summation
    Rational h = 0;
    for (long m = 1; m <= 12; ++m) {
        h += Rational(2, m);
        CHECK(prop85_query(Prop85Mode::Chain, m, 1).value == h);
    }
    CHECK_THROWS_AS(prop85_query(Prop85Mode::Chain, 0, 1), Error);
}
