#include "ordlab/acceptance.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "ordlab/classify.hpp"
#include "ordlab/cli.hpp"
#include "ordlab/oracle.hpp"
#include "ordlab/witness.hpp"

namespace ordlab {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream msg;
    void fail(const std::string& s) {
        if (ok) msg << s;
        ok = false;
    }
};

Ordinal w_pow(std::uint64_t n) { return Ordinal::omega_pow(Ordinal(n)); }

std::vector<SimpleFn> gallery_set() {
    std::vector<SimpleFn> g;
    for (std::uint64_t n = 1; n <= 4; ++n) {
        g.push_back(f_delta(w_pow(n), Convention::Even));
        g.push_back(f_delta(w_pow(n), Convention::Odd));
    }
    for (long n = 1; n <= 5; ++n) g.push_back(type0(n));
    g.push_back(prop53b(3));
    g.push_back(prop53b(4, Convention::Odd));
    g.push_back(prop53c());
    g.push_back(prop53d());
    g.push_back(prop53d(Convention::Odd));
    g.push_back(patch(w_pow(2), {PatchItem{Ordinal(), Ordinal::omega(), f_delta(Ordinal::omega())},
                                 PatchItem{Ordinal::omega().succ(), w_pow(2), type0(2).scaled(3)}},
                      "patch([0,w] -> fdelta(w), [w+1,w^2] -> scale(3, type0(2)))"));
    g.push_back(SimpleFn::constant(w_pow(2), Rational(1, 2)));
    return g;
}

std::vector<std::pair<Rational, Rational>> value_pairs(const SimpleFn& f) {
    auto v = f.values();
    std::vector<std::pair<Rational, Rational>> out;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) out.emplace_back(v[i], v[j]);
    return out;
}

void c1(Check& c) {
    for (std::uint64_t n = 1; n <= 5; ++n) {
        SimpleFn f = f_delta(w_pow(n), Convention::Even);
        IndexTrace t = index_run(f, TraceSpec::beta(1));
        if (!(t.terminal == Terminal::EmptyAt && t.at == Ordinal(n + 1)))
            c.fail("n=" + std::to_string(n) + ": beta = " + to_string(t.at));
        CanonicalSet d = CanonicalSet::full(f.top());
        for (const auto& s : t.stages) {
            if (!s.set.equals(d)) c.fail("n=" + std::to_string(n) + ": stage " + to_string(s.index) + " is not the derived set");
            d = d.derived();
        }
    }
    c.msg << (c.ok ? "beta(F_{w^n+}, 1) = n+1 and stages are derived sets, n = 1..5" : "");
}

void c2(Check& c) {
    SimpleFn f = prop53c();
    IndexTrace t = index_run(f, TraceSpec::beta(1));
    bool lim = false;
    for (const auto& s : t.stages) lim |= s.limit && s.index == Ordinal::omega() && !s.set.empty();
    if (!lim) c.fail("no nonempty w-limit stage");
    if (!(t.terminal == Terminal::EmptyAt && t.at == Ordinal::omega().succ())) c.fail("terminal " + to_string(t.at));
    ClassReport r = classify(f);
    if (r.b12.verdict != Verdict::CertifiedNo) c.fail(std::string("b12 is ") + verdict_name(r.b12.verdict));
    for (const auto& cert : r.certificates)
        if (!verify(cert).ok) c.fail("certificate " + cert.id + " fails verification");
    if (c.ok) c.msg << "K_w nonempty, EmptyAt(w+1), b12 CertifiedNo";
}

void c3(Check& c) {
    size_t stages = 0;
    for (const auto& f : gallery_set())
        for (const auto& [a, b] : value_pairs(f)) {
            IndexTrace ta = index_run(f, TraceSpec::alpha(a, b));
            IndexTrace tb = index_run(f, TraceSpec::beta(b - a));
            for (const auto& s : ta.stages) {
                const CanonicalSet* kb = tb.stage_set(s.index);
                ++stages;
                if (kb ? !s.set.subset_of(*kb) : !s.set.empty())
                    c.fail(f.descriptor() + " a=" + rat_str(a) + " b=" + rat_str(b) + " stage " + to_string(s.index));
            }
        }
    if (c.ok) c.msg << stages << " stages checked";
}

void c4(Check& c) {
    size_t checks = 0;
    for (const auto& f : gallery_set()) {
        Certificate w = witness_upper(f);
        const auto& wd = std::get<WitnessUpperData>(w.data);
        Certificate lo = dnorm_lower(f);
        const auto& ld = std::get<ChainLowerData>(lo.data);
        if (wd.finite) {
            if (ld.diverges) c.fail(f.descriptor() + ": lower bound diverges but witness is finite");
            else if (ld.bound > wd.bound) c.fail(f.descriptor() + ": lower " + rat_str(ld.bound) + " > upper " + rat_str(wd.bound));
        }
        for (const auto& d : f.gaps()) {
            IndexTrace t = index_run(f, TraceSpec::beta(d));
            for (const auto& s : t.stages) {
                if (s.limit || s.set.empty() || !s.index.is_finite()) continue;
                ++checks;
                Rational need = d * static_cast<long>(s.index.as_nat()) / 4;
                if (wd.finite && wd.bound < need)
                    c.fail(f.descriptor() + ": K_" + to_string(s.index) + " nonempty at " + rat_str(d) + " but bound " + rat_str(wd.bound));
            }
        }
    }
    if (c.ok) c.msg << checks << " nonempty stages, 0 violations";
}

void c5(Check& c) {
    size_t n = 0, tampered = 0;
    for (const auto& f : gallery_set()) {
        if (!(f.family() && f.family()->rule == "prop53b")) {
            BetaSup bs = beta_sup(f);
            if (bs.lower_bound_only || Ordinal::omega() < bs.value) continue;
        }
        for (const auto& [a, b] : value_pairs(f)) {
            Certificate s;
            try {
                s = separate_by_D(f, a, b);
            } catch (const Error& e) {
                c.fail(f.descriptor() + ": " + e.what());
                continue;
            }
            ++n;
            if (auto v = verify(s); !v.ok) c.fail(f.descriptor() + ": " + v.detail);
            auto& d = std::get<SeparationData>(s.data);
            for (size_t i = 0; i < d.d.cells().size(); ++i) {
                std::vector<Cell> cells = d.d.cells();
                cells.erase(cells.begin() + static_cast<long>(i));
                Certificate bad = s;
                std::get<SeparationData>(bad.data).d = CanonicalSet(f.top(), cells);
                ++tampered;
                if (verify(bad).ok) c.fail(f.descriptor() + ": tampered certificate verifies");
            }
        }
    }
    if (n < 20) c.fail("only " + std::to_string(n) + " separation instances");
    if (c.ok) c.msg << n << " separations verified, " << tampered << " tampered copies rejected";
}

void c6(Check& c) {
    for (std::uint64_t n = 1; n <= 3; ++n) {
        SimpleFn f = f_delta(w_pow(n), Convention::Even);
        std::optional<Rational> first;
        for (long m = 2; m <= 16; ++m) {
            Certificate a = b14_approximant(f, m);
            const auto& d = std::get<ApproximantData>(a.data);
            if (d.sup_error > Rational(1, m)) c.fail("n=" + std::to_string(n) + " m=" + std::to_string(m) + ": sup error " + rat_str(d.sup_error));
            if (!d.d_finite) c.fail("d_bound not finite");
            if (!first) first = d.d_bound;
            else if (*first != d.d_bound) c.fail("n=" + std::to_string(n) + ": d_bound changes at m=" + std::to_string(m));
            if (!verify(a).ok) c.fail("approximant fails verification");
        }
        if (c.ok) c.msg << "n=" << n << " d_bound " << rat_str(*first) << "; ";
    }
}

void c7(Check& c) {
    auto verified = [&](const ClassReport& r) {
        for (const auto& cert : r.certificates)
            if (auto v = verify(cert); !v.ok) c.fail(r.function + ": " + cert.id + " " + v.detail);
    };
    ClassReport d = classify(prop53d());
    verified(d);
    if (d.dbsc.verdict != Verdict::CertifiedYes) c.fail("prop53d dbsc not CertifiedYes");
    if (d.continuous.verdict != Verdict::CertifiedNo) c.fail("prop53d continuous not CertifiedNo");
    if (prop53d().osc(CanonicalSet::full(prop53d().top()), Ordinal::omega()) != 1) c.fail("prop53d osc at w is not 1");

    ClassReport b = classify(prop53b(5));
    verified(b);
    if (b.b12.verdict != Verdict::CertifiedYes) c.fail("prop53b b12 not CertifiedYes");
    if (b.b14.verdict != Verdict::CertifiedNo) c.fail("prop53b b14 not CertifiedNo");
    if (b.dbsc.verdict != Verdict::CertifiedNo) c.fail("prop53b dbsc not CertifiedNo");
    for (const auto& cert : b.certificates)
        if (const auto* cl = std::get_if<ChainLowerData>(&cert.data))
            for (long n = 1; n <= 5; ++n)
                if (!cl->family.count(n) || cl->family.at(n) != n) c.fail("prop53b block " + std::to_string(n) + " chain sum is not n");

    ClassReport a = classify(prop53a(4));
    verified(a);
    if (a.b14.verdict != Verdict::CertifiedYes) c.fail("prop53a b14 not CertifiedYes");
    if (a.dbsc.verdict != Verdict::PaperCited) c.fail("prop53a dbsc not cited");
    for (const auto& cert : a.certificates)
        if (const auto* fa = std::get_if<FamilyApproxData>(&cert.data)) {
            if (fa->uniform_bound > 2) c.fail("uniform witness bound above 2");
            if (c.ok) c.msg << "prop53a uniform witness bound " << rat_str(fa->uniform_bound) << " over " << fa->entries.size() << " approximants";
        }
}

void c8(Check& c) {
    for (long m = 1; m <= 6; ++m) {
        SimpleFn f = f_delta(w_pow(static_cast<std::uint64_t>(m)), Convention::Even);
        Certificate ind = independent_family(f, Rational(1, 4), Rational(3, 4), Rational(1, 3), Rational(2, 3), m);
        if (auto v = verify(ind); !v.ok) c.fail("m=" + std::to_string(m) + ": " + v.detail);
        if (std::get<IndependentData>(ind.data).witnesses.size() != (std::size_t{1} << m)) c.fail("pattern count");
    }
    if (c.ok) c.msg << "m = 1..6, all 2^m patterns realized";
}

void c9(Check& c) {
    INorms n = i_norms(f_delta(w_pow(2), Convention::Even));
    if (n.i_prime.diverges || n.i_prime.value != 2 || n.i_value.value != 2) c.fail("F_delta(w^2) norms");
    for (long k = 1; k <= 5; ++k) {
        INorms t = i_norms(type0(k));
        if (t.i_prime.diverges || t.i_prime.value != 1 || t.i_value.value != 1) c.fail("type0(" + std::to_string(k) + ") norms");
    }
    for (long m = 1; m <= 12; ++m)
        for (long q = 1; q <= 7; ++q) {
            Rational eps(q, 4);
            if (eps >= 2) continue;
            Prop85Result r = prop85_query(Prop85Mode::Nonempty, m, eps);
            if (r.nonempty != (Rational(m) <= Rational(2) / eps)) c.fail("prop85 nonempty closed form");
            if (!prop85_query(Prop85Mode::IPrimeCheck, m, eps).holds) c.fail("prop85 m*eps <= 2");
        }
    for (long m = 2; m <= 12; ++m)
        if (!(prop85_query(Prop85Mode::Chain, m, 1).value > 2)) c.fail("chain sum not above 2");
    if (prop85_query(Prop85Mode::Chain, 3, 1).value != Rational(11, 3)) c.fail("chain(3) != 11/3");
    if (c.ok) c.msg << "norms exact; prop85 closed forms hold";
}

void c10(Check& c, std::uint64_t seed) {
    OracleStats p = oracle_sweep(1000, seed);
    OracleStats s = oracle_sweep_serial(1000, seed);
    if (p.mismatches) c.fail(std::to_string(p.mismatches) + " mismatches; first: " + p.first_mismatch);
    if (p.checks != s.checks || p.mismatches != s.mismatches) c.fail("parallel and serial sweeps disagree");
    if (c.ok) c.msg << p.instances << " instances, " << p.checks << " membership checks, 0 mismatches";
}

void c11(Check& c) {
    for (long n = 1; n <= 4; ++n) {
        StructFn sf = build_type(0, 1, n);
        SimpleFn t0 = type0(n);
        StructTrace st = struct_index(sf, TraceSpec::beta(Rational(1, n)));
        IndexTrace it = index_run(t0, TraceSpec::beta(Rational(1, n)));
        if (st.stages.size() != it.stages.size()) {
            c.fail("n=" + std::to_string(n) + ": trace lengths differ");
            continue;
        }
        for (size_t i = 0; i < st.stages.size(); ++i)
            if (!flatten_set(sf, st.exp, st.stages[i]).equals(it.stages[i].set))
                c.fail("n=" + std::to_string(n) + ": stage " + std::to_string(i) + " differs");
        if (!(Ordinal(static_cast<std::uint64_t>(st.at)) == it.at)) c.fail("terminal index differs");
    }
    if (c.ok) c.msg << "type-0 traces equal stage by stage, n = 1..4";
}

void c12(Check& c) {
    SimpleFn f = f_delta(w_pow(2), Convention::Even);
    std::vector<StepFn> seq;
    for (std::uint64_t k = 0; k < 10; ++k) seq.push_back(witness_stage(f, k));
    Rational bound = std::get<WitnessUpperData>(witness_upper(f).data).bound;
    CriterionResult r = b14_criterion_check(seq, Rational(1, 2), bound);
    if (!r.pass) c.fail("witness stages fail with C = " + rat_str(bound));
    std::vector<StepFn> alt;
    for (long i = 0; i <= 4; ++i) alt.emplace_back(Ordinal::omega(), std::vector<Piece>{Piece{Ordinal(), Ordinal::omega(), i % 2}});
    if (b14_criterion_check(alt, Rational(1, 2), 1).pass) c.fail("alternating sequence passes with C = 1");
    if (c.ok) c.msg << "witness stages pass with C = " << rat_str(bound) << " (" << r.subsequences << " subsequences); alternating fails";
}

void c13(Check& c) {
    auto run = [](std::vector<std::string> a, std::string* out = nullptr) {
        std::ostringstream o, e;
        int code = cli_dispatch(a, o, e);
        if (out) *out = o.str();
        return code;
    };
    std::string r1, r2;
    int k1 = run({"classify", "--fn", "fdelta(w^w)", "--json", "--deterministic"}, &r1);
    int k2 = run({"classify", "--fn", "fdelta(w^w)", "--json", "--deterministic"}, &r2);
    if (k1 != 0 || k2 != 0) c.fail("classify exit code");
    if (r1 != r2) c.fail("deterministic reports differ");
    if (r1.find("\"CertifiedNo\"") == std::string::npos) c.fail("classify report lacks CertifiedNo");
    std::string r3, r4;
    run({"index", "--fn", "fdelta(w^2)", "--kind", "beta", "--delta", "1", "--deterministic"}, &r3);
    run({"index", "--fn", "fdelta(w^2)", "--kind", "beta", "--delta", "1", "--deterministic"}, &r4);
    if (r3 != r4) c.fail("index reports differ");
    if (run({"index", "--fn", "fdelta(w^2)", "--kind", "beta", "--delta", "1"}) != kExitOk) c.fail("exit 0");
    if (run({"index", "--bogus"}) != kExitUsage) c.fail("exit 1");
    if (run({"index", "--fn", "fdelta(w+", "--kind", "beta"}) != kExitParse) c.fail("exit 2");
    if (run({"index", "--fn", "fdelta(w^w)", "--kind", "beta", "--delta", "1", "--budget", "w"}) != kExitBudget) c.fail("exit 3");
    if (run({"separate", "--fn", "fdelta(w^2)", "--a", "1/4", "--b", "3/4", "--inject-fault"}) != kExitVerify) c.fail("exit 4");
    if (c.ok) c.msg << "byte-identical deterministic reports; exit codes 0-4 observed";
}

const std::vector<std::pair<std::string, std::function<void(Check&, std::uint64_t)>>>& table() {
    static const std::vector<std::pair<std::string, std::function<void(Check&, std::uint64_t)>>> t = {
        {"derived-set identification", [](Check& c, std::uint64_t) { c1(c); }},
        {"transfinite boundary", [](Check& c, std::uint64_t) { c2(c); }},
        {"containment law", [](Check& c, std::uint64_t) { c3(c); }},
        {"chain lower bound consistency", [](Check& c, std::uint64_t) { c4(c); }},
        {"separation round trip", [](Check& c, std::uint64_t) { c5(c); }},
        {"approximants below beta w", [](Check& c, std::uint64_t) { c6(c); }},
        {"separating examples", [](Check& c, std::uint64_t) { c7(c); }},
        {"independent families", [](Check& c, std::uint64_t) { c8(c); }},
        {"I and I' norms", [](Check& c, std::uint64_t) { c9(c); }},
        {"oracle equivalence", [](Check& c, std::uint64_t s) { c10(c, s); }},
        {"cross-model traces", [](Check& c, std::uint64_t) { c11(c); }},
        {"filtered jump-sum checker", [](Check& c, std::uint64_t) { c12(c); }},
        {"CLI determinism and exit codes", [](Check& c, std::uint64_t) { c13(c); }},
    };
    return t;
}

}  // namespace

CriterionOutcome run_criterion(int id, std::uint64_t seed) {
    const auto& t = table();
    if (id < 1 || id > static_cast<int>(t.size())) throw Error(ErrorCode::BadParams, "no criterion " + std::to_string(id));
    CriterionOutcome out;
    out.id = id;
    out.name = t[static_cast<size_t>(id - 1)].first;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        t[static_cast<size_t>(id - 1)].second(c, seed);
    } catch (const std::exception& e) {
        c.fail(std::string("exception: ") + e.what());
    }
    out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.pass = c.ok;
    out.detail = c.msg.str();
    return out;
}

std::vector<CriterionOutcome> run_acceptance(std::uint64_t seed) {
    std::vector<CriterionOutcome> out;
    for (int i = 1; i <= static_cast<int>(table().size()); ++i) out.push_back(run_criterion(i, seed));
    return out;
}

}  // namespace ordlab
