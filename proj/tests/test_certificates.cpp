#include <doctest.h>

#include "ordlab/certificates.hpp"

using namespace ordlab;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
Rational Q(const char* s) { return parse_rational(s); }
}  // namespace

TEST_CASE("witness certificate") {
    Certificate c = witness_upper(f_delta(O("w")));
    CHECK(c.kind == CertKind::WitnessUpper);
    CHECK(std::get<WitnessUpperData>(c.data).bound == 2);
    CHECK(verify(c).ok);
    Certificate bad = c;
    std::get<WitnessUpperData>(bad.data).bound = 1;
    CHECK_FALSE(verify(bad).ok);
}

TEST_CASE("chain lower bounds") {
    Certificate c = dnorm_lower(f_delta(O("w^2")));
    CHECK(std::get<ChainLowerData>(c.data).bound == 1);
    CHECK(verify(c).ok);
    CHECK(std::get<ChainLowerData>(dnorm_lower(SimpleFn::constant(O("w"), 0)).data).bound == 0);
    // lower bound never exceeds the witness upper bound
    for (const SimpleFn& f : {f_delta(O("w^3")), type0(3), prop53d()}) {
        Rational lo = std::get<ChainLowerData>(dnorm_lower(f).data).bound;
        Rational hi = std::get<WitnessUpperData>(witness_upper(f).data).bound;
        CHECK(lo <= hi);
    }
}

TEST_CASE("separation") {
    Ordinal t = O("w^2");
    SimpleFn f = f_delta(t);
    Certificate c = separate_by_D(f, Q("1/4"), Q("3/4"));
    const auto& d = std::get<SeparationData>(c.data).d;
    CanonicalSet want = CanonicalSet(t, {make_cell(Ordinal(), t, RankSet::exactly(Ordinal()))})
                            .unite(CanonicalSet::points(t, {t}));
    CHECK(d.equals(want));
    CHECK(verify(c).ok);
    Certificate bad = c;
    auto& bd = std::get<SeparationData>(bad.data).d;
    bd = bd.diff(CanonicalSet::points(t, {t}));
    VerifyResult r = verify(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.detail.find("w^2") != std::string::npos);
    CHECK_THROWS_AS(separate_by_D(f, Q("3/4"), Q("1/4")), Error);
}

TEST_CASE("separation for a continuous function") {
    Ordinal t = O("w*2");
    SimpleFn f = patch(t, {{Ordinal(), O("w"), SimpleFn::constant(O("w"), 0)},
                           {O("w + 1"), t, SimpleFn::constant(O("w"), 1)}});
    Certificate c = separate_by_D(f, Q("1/4"), Q("3/4"));
    CHECK(std::get<SeparationData>(c.data).d.equals(CanonicalSet::interval(t, Ordinal(), O("w"))));
    CHECK(verify(c).ok);
}

TEST_CASE("approximants") {
    SimpleFn f = f_delta(O("w^2"));
    Certificate c4 = b14_approximant(f, 4);
    const auto& a4 = std::get<ApproximantData>(c4.data);
    CHECK(a4.sup_error <= Q("1/4"));
    CHECK(a4.d_finite);
    CHECK(verify(c4).ok);
    for (long m : {2, 8, 16}) CHECK(std::get<ApproximantData>(b14_approximant(f, m).data).d_bound == a4.d_bound);
    Certificate k = b14_approximant(SimpleFn::constant(O("w"), Q("2/5")), 3);
    CHECK(std::get<ApproximantData>(k.data).sup_error <= Q("1/3"));
    CHECK_THROWS_AS(b14_approximant(prop53b(4), 4), Error);
}

TEST_CASE("PS decomposition") {
    Certificate c = ps_decomposition(f_delta(O("w^2")), 3);
    const auto& d = std::get<PSData>(c.data);
    CHECK(d.k.back().size() == 17);
    CHECK(verify(c).ok);
    Certificate big = ps_decomposition(f_delta(O("w^2")), 8);
    const auto& k = std::get<PSData>(big.data).k;
    for (size_t j = 0; j + 1 < k.size(); ++j)
        for (const auto& x : k[j]) CHECK(std::binary_search(k[j + 1].begin(), k[j + 1].end(), x));
    CHECK(std::binary_search(k[6].begin(), k[6].end(), O("w*7 + 2")));
}

TEST_CASE("independent families") {
    SimpleFn f = f_delta(O("w^3"));
    Certificate c = independent_family(f, Q("1/4"), Q("3/4"), Q("1/3"), Q("2/3"), 3);
    const auto& d = std::get<IndependentData>(c.data);
    CHECK(d.witnesses.size() == 8);
    CHECK(verify(c).ok);
    CHECK(verify(independent_family(f, Q("1/4"), Q("3/4"), Q("1/3"), Q("2/3"), 1)).ok);
    try {
        independent_family(f_delta(O("w^2")), Q("1/4"), Q("3/4"), Q("1/3"), Q("2/3"), 4);
        FAIL("expected InsufficientIndex");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientIndex);
    }
}

TEST_CASE("beta certificates") {
    Certificate c = beta_certificate(f_delta(O("w^2")), "empty_at", 1);
    CHECK(std::get<BetaTraceData>(c.data).trace.at == Ordinal(3));
    CHECK(verify(c).ok);
    CHECK(verify(beta_certificate(prop53b(3), "family_finite", 1)).ok);
}

TEST_CASE("approximant family") {
    Certificate c = family_approximant(3, Convention::Even);
    const auto& d = std::get<FamilyApproxData>(c.data);
    CHECK(!d.entries.empty());
    for (const auto& e : d.entries) CHECK(e.sup_error <= e.error_bound);
    CHECK(verify(c).ok);
}
