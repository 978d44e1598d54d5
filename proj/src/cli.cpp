#include "ordlab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <optional>
#include <sstream>

#include "ordlab/acceptance.hpp"
#include "ordlab/dsl.hpp"
#include "ordlab/report.hpp"
#include "ordlab/witness.hpp"

namespace ordlab {

namespace {

struct Common {
    std::string fn;
    bool json = false, text = false, deterministic = false, inject_fault = false;
    std::string budget;
    std::uint64_t seed = 7;
    std::string parity = "even";
};

struct Params {
    std::string kind = "beta", delta = "1", a, b, a2, b2, deltas, eps = "1/2", c = "witness", mode = "nonempty",
                name, point, floor = "1/40";
    long m = 4, n = 3, stages = 10, alternating = 0, kmax = 2;
};

void add_common(CLI::App* s, Common& c) {
    s->add_option("--fn", c.fn, "function in the DSL");
    s->add_flag("--json", c.json, "JSON report (default)");
    s->add_flag("--text", c.text, "text report");
    s->add_option("--budget", c.budget, "ordinal budget for transfinite iteration");
    s->add_option("--seed", c.seed, "seed for oracle sampling");
    s->add_option("--parity", c.parity, "default parity convention")->check(CLI::IsMember({"even", "odd"}));
    s->add_flag("--deterministic", c.deterministic, "zero the timing field");
    s->add_flag("--inject-fault", c.inject_fault, "corrupt produced certificates before verification (testing aid)")
        ->group("");
}

Rational rat(const std::string& s, const char* what) {
    if (s.empty()) throw Error(ErrorCode::BadParams, std::string("missing --") + what);
    return parse_rational(s);
}

std::vector<Rational> rat_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
    if (out.empty()) throw Error(ErrorCode::BadParams, "missing --deltas");
    return out;
}

Json norm_json(const NormValue& v) {
    Json j;
    j["diverges"] = v.diverges;
    if (v.diverges) {
        j["closed_form"] = v.closed_form;
        Json f = Json::object();
        for (const auto& [k, q] : v.family) f[std::to_string(k)] = rat_str(q);
        j["family"] = std::move(f);
    } else {
        j["value"] = rat_str(v.value);
        Json ch = Json::array();
        for (const auto& q : v.chain) ch.push_back(rat_str(q));
        j["chain"] = std::move(ch);
    }
    return j;
}

std::string sset_text(const SSet& s) {
    if (sset_empty(s)) return "{}";
    std::string out;
    auto add = [&](const std::string& t) { out += (out.empty() ? "" : ", ") + t; };
    if (s.pt) add("*");
    for (size_t i = 0; i < s.kids.size(); ++i)
        if (!sset_empty(s.kids[i])) add(std::to_string(i + 1) + ":" + sset_text(s.kids[i]));
    for (size_t i = 0; i < s.copies.size(); ++i)
        if (!sset_empty(s.copies[i])) add("copy" + std::to_string(i + 1) + ":" + sset_text(s.copies[i]));
    if (s.rest && !sset_empty(*s.rest)) add("rest:" + sset_text(*s.rest));
    return "{" + out + "}";
}

void tamper(Certificate& c) {
    std::visit(
        [&](auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, SeparationData>) {
                CanonicalSet hit = c.fn->level_set_le(d.a).intersect(d.d);
                if (auto x = hit.min_elem()) d.d = d.d.diff(CanonicalSet::points(d.d.top(), {*x}));
                else d.d = CanonicalSet::full(d.d.top());
            } else if constexpr (std::is_same_v<T, WitnessUpperData>) {
                d.finite = true;
                d.bound = d.bound / 2 - 1;
            } else if constexpr (std::is_same_v<T, ChainLowerData>) {
                d.chain_sum += 1;
                d.sup_norm += 1;
            } else if constexpr (std::is_same_v<T, ApproximantData>) {
                d.sup_error += 1;
            } else if constexpr (std::is_same_v<T, PSData>) {
                if (!d.k.empty()) d.k[0].pop_back();
            } else if constexpr (std::is_same_v<T, IndependentData>) {
                d.stages.assign(d.stages.size(), 0);
            } else if constexpr (std::is_same_v<T, BetaTraceData>) {
                d.claim = d.claim == "k1_empty" ? "k1_nonempty" : "k1_empty";
                d.delta += 1;
                if (d.trace.stages.size() > 1) d.trace.stages[1].set = CanonicalSet::full(d.trace.stages[1].set.top());
            } else {
                d.uniform_bound += 1;
            }
        },
        c.data);
}

class Run {
public:
    Run(const Common& c, std::string query) : c_(c), query_(std::move(query)) {
        conv_ = c.parity == "odd" ? Convention::Odd : Convention::Even;
        if (!c.budget.empty()) opt_.budget = parse_ordinal(c.budget);
        opt_.seed = c.seed;
    }

    AnyFn fn() {
        if (c_.fn.empty()) throw Error(ErrorCode::BadParams, "--fn is required");
        if (!fn_) fn_ = parse_function(c_.fn, conv_);
        return *fn_;
    }
    SimpleFn simple() { return as_simple(fn()); }
    Ordinal fn_or_omega() { return c_.fn.empty() ? Ordinal::omega() : simple().top(); }

    Report& report() {
        if (!report_) report_.emplace(query_, c_.fn.empty() ? "" : fn_descriptor(fn()));
        return *report_;
    }
    std::string cert(Certificate c) {
        if (c_.inject_fault) tamper(c);
        return report().add_cert(std::move(c));
    }

    const RunOptions& opt() const { return opt_; }
    Convention conv() const { return conv_; }
    bool budget_hit = false;

private:
    const Common& c_;
    std::string query_;
    Convention conv_;
    RunOptions opt_;
    std::optional<AnyFn> fn_;
    std::optional<Report> report_;
};

void op_classify(Run& r) {
    ClassReport cr = classify(r.simple(), r.opt());
    std::vector<std::string> ids;
    for (auto& c : cr.certificates) ids.push_back(r.cert(c));
    r.report().add_result("classify", Json::object(), class_json(cr), ids);
}

void op_index(Run& r, const Params& p) {
    TraceSpec spec;
    Json params;
    params["kind"] = p.kind;
    if (p.kind == "beta") {
        spec = TraceSpec::beta(rat(p.delta, "delta"));
        params["delta"] = p.delta;
    } else if (p.kind == "alpha") {
        spec = TraceSpec::alpha(rat(p.a, "a"), rat(p.b, "b"));
        params["a"] = p.a;
        params["b"] = p.b;
    } else if (p.kind == "gen") {
        spec = TraceSpec::gen(rat_list(p.deltas));
        params["deltas"] = p.deltas;
    } else {
        throw Error(ErrorCode::BadParams, "--kind must be beta, alpha or gen");
    }
    AnyFn f = r.fn();
    if (const auto* sf = std::get_if<StructFn>(&f)) {
        if (spec.kind == TraceKind::Alpha) throw Error(ErrorCode::BadParams, "structural traces support beta and gen");
        StructTrace t = struct_index(*sf, spec);
        Json st = Json::array();
        for (size_t i = 0; i < t.stages.size(); ++i) st.push_back(Json{{"index", i}, {"set", sset_text(t.stages[i])}});
        r.report().add_result("struct_index", params,
                              Json{{"spec", spec_string(spec)}, {"stages", std::move(st)}, {"terminal", terminal_name(t.terminal)},
                                   {"at", t.at}});
        r.budget_hit = t.terminal == Terminal::BudgetExceeded;
        return;
    }
    IndexTrace t = index_run(std::get<SimpleFn>(f), spec, r.opt());
    r.report().add_result("index", params, trace_json(t));
    r.budget_hit = t.terminal == Terminal::BudgetExceeded;
}

void op_norms(Run& r, const Params& p) {
    AnyFn f = r.fn();
    if (const auto* sf = std::get_if<StructFn>(&f)) {
        StructChain ch = struct_chain_search(*sf, rat(p.floor, "floor"));
        Json chain = Json::array();
        for (const auto& q : ch.chain) chain.push_back(rat_str(q));
        r.report().add_result("struct_chain", Json{{"floor", p.floor}},
                              Json{{"best_sum", rat_str(ch.best_sum)}, {"chain", std::move(chain)}});
        return;
    }
    SimpleFn g = std::get<SimpleFn>(f);
    INorms n = i_norms(g, r.opt());
    std::string lo = r.cert(dnorm_lower(g, r.opt()));
    std::vector<std::string> ids{lo};
    Json out{{"i_prime", norm_json(n.i_prime)}, {"i_value", norm_json(n.i_value)}, {"sup_norm", rat_str(g.sup_norm())}};
    Certificate w = witness_upper(g);
    const auto& wd = std::get<WitnessUpperData>(w.data);
    out["d_upper"] = wd.finite ? Json(rat_str(wd.bound)) : Json("unbounded or not computed");
    ids.push_back(r.cert(std::move(w)));
    r.report().add_result("norms", Json::object(), std::move(out), ids);
}

void op_witness(Run& r, const Params& p) {
    SimpleFn g = r.simple();
    std::string id = r.cert(witness_upper(g));
    Json params = Json::object(), out = Json::object();
    if (!p.point.empty()) {
        Ordinal x = parse_ordinal(p.point);
        if (g.top() < x) throw Error(ErrorCode::OutOfSpace, p.point);
        params["point"] = to_string(x);
        Json vals = Json::array();
        std::uint64_t s = stabilization_stage(g, x);
        for (std::uint64_t k = 0; k <= s; ++k) vals.push_back(rat_str(witness_value(g, k, x)));
        out["stages"] = std::move(vals);
        out["stabilizes_at"] = s;
        out["F"] = rat_str(g.eval(x));
        out["variation"] = rat_str(witness_variation(g, x));
    }
    r.report().add_result("witness", params, std::move(out), {id});
}

void op_separate(Run& r, const Params& p) {
    std::string id = r.cert(separate_by_D(r.simple(), rat(p.a, "a"), rat(p.b, "b"), r.opt()));
    r.report().add_result("separate", Json{{"a", p.a}, {"b", p.b}}, Json::object(), {id});
}

void op_approx(Run& r, const Params& p) {
    SimpleFn g = r.simple();
    if (g.family() && g.family()->rule == "prop53a") {
        std::string id = r.cert(family_approximant(g.family()->n_max, descriptor_convention(g.descriptor()), p.kmax));
        r.report().add_result("approx", Json{{"family", "prop53a"}, {"kmax", p.kmax}}, Json::object(), {id});
        return;
    }
    std::string id = r.cert(b14_approximant(g, p.m, r.opt()));
    r.report().add_result("approx", Json{{"m", p.m}}, Json::object(), {id});
}

void op_psdecomp(Run& r, const Params& p) {
    std::string id = r.cert(ps_decomposition(r.simple(), p.n, r.opt().seed));
    r.report().add_result("psdecomp", Json{{"n", p.n}}, Json::object(), {id});
}

void op_independence(Run& r, const Params& p) {
    std::string id = r.cert(independent_family(r.simple(), rat(p.a, "a"), rat(p.b, "b"), rat(p.a2, "a2"), rat(p.b2, "b2"), p.m, r.opt()));
    r.report().add_result("independence", Json{{"a", p.a}, {"b", p.b}, {"a2", p.a2}, {"b2", p.b2}, {"m", p.m}}, Json::object(), {id});
}

void op_b14check(Run& r, const Params& p) {
    std::vector<StepFn> seq;
    Json params{{"eps", p.eps}};
    Rational c;
    std::vector<std::string> ids;
    if (p.alternating > 0) {
        Ordinal top = r.fn_or_omega();
        for (long i = 0; i <= p.alternating; ++i) seq.emplace_back(top, std::vector<Piece>{Piece{Ordinal(), top, i % 2}});
        params["alternating"] = p.alternating;
        c = rat(p.c == "witness" ? "" : p.c, "c");
    } else {
        SimpleFn g = r.simple();
        for (long k = 0; k < p.stages; ++k) seq.push_back(witness_stage(g, static_cast<std::uint64_t>(k)));
        params["stages"] = p.stages;
        if (p.c == "witness") {
            Certificate w = witness_upper(g);
            const auto& wd = std::get<WitnessUpperData>(w.data);
            if (!wd.finite) throw Error(ErrorCode::BadParams, "witness bound is not finite; pass --c");
            c = wd.bound;
            ids.push_back(r.cert(std::move(w)));
        } else {
            c = rat(p.c, "c");
        }
    }
    params["c"] = rat_str(c);
    CriterionResult res = b14_criterion_check(seq, rat(p.eps, "eps"), c);
    Json out{{"pass", res.pass}, {"atoms", res.atoms}, {"subsequences", res.subsequences}, {"worst_sum", rat_str(res.worst_sum)}};
    if (!res.pass) {
        out["subsequence"] = res.subsequence;
        out["atom"] = Json{{"lo", to_string(res.atom_lo)}, {"hi", to_string(res.atom_hi)},
                           {"class", kind_name(kind_of(res.atom_hi))}};
    }
    r.report().add_result("b14check", std::move(params), std::move(out), ids);
}

void op_prop85(Run& r, const Params& p) {
    Prop85Mode mode;
    if (p.mode == "nonempty") mode = Prop85Mode::Nonempty;
    else if (p.mode == "chain") mode = Prop85Mode::Chain;
    else if (p.mode == "iprime") mode = Prop85Mode::IPrimeCheck;
    else throw Error(ErrorCode::BadParams, "--mode must be nonempty, chain or iprime");
    Rational eps = mode == Prop85Mode::Chain ? Rational(1) : rat(p.eps, "eps");
    Prop85Result res = prop85_query(mode, p.m, eps);
    Json out{{"detail", res.detail}};
    if (mode == Prop85Mode::Chain) out["chain_sum"] = rat_str(res.value);
    if (mode == Prop85Mode::Nonempty) out["nonempty"] = res.nonempty;
    if (mode == Prop85Mode::IPrimeCheck) {
        out["nonempty"] = res.nonempty;
        out["holds"] = res.holds;
    }
    Json params{{"mode", p.mode}, {"m", p.m}};
    if (mode != Prop85Mode::Chain) params["eps"] = p.eps;
    r.report().add_result("prop85", std::move(params), std::move(out));
}

void op_gallery(Run& r, const Params& p, const Common& c) {
    if (!c.fn.empty()) {
        AnyFn f = r.fn();
        Json out;
        if (const auto* sf = std::get_if<StructFn>(&f)) {
            auto [lo, hi] = value_range(*sf);
            out = Json{{"descriptor", sf->descriptor}, {"top", to_string(struct_top(*sf))}, {"min", rat_str(lo)}, {"max", rat_str(hi)}};
            if (!p.point.empty()) {
                Address a = parse_address(p.point);
                out["address"] = format_address(a);
                out["value"] = rat_str(struct_eval(*sf, a));
                out["ordinal"] = to_string(address_to_ordinal(*sf, a));
            }
        } else {
            out = fn_json(std::get<SimpleFn>(f));
        }
        r.report().add_result("gallery", Json::object(), std::move(out));
        return;
    }
    Json list = Json::array();
    const char* names[] = {"fdelta(w^2)", "type0(3)", "gallery(prop53a, 2)", "gallery(prop53b, 4)", "gallery(prop53c)",
                           "gallery(prop53d)", "type(n=1, m=8, k=2)"};
    for (const char* n : names) {
        if (!p.name.empty() && std::string(n).find(p.name) == std::string::npos) continue;
        AnyFn f = parse_function(n, r.conv());
        Json e{{"dsl", n}, {"descriptor", fn_descriptor(f)}};
        if (const auto* sf = std::get_if<SimpleFn>(&f)) {
            e["top"] = to_string(sf->top());
            Json vals = Json::array();
            for (const auto& v : sf->values()) vals.push_back(rat_str(v));
            e["values"] = std::move(vals);
        } else {
            const auto& st = std::get<StructFn>(f);
            auto [lo, hi] = value_range(st);
            e["top"] = to_string(struct_top(st));
            e["range"] = Json{{"min", rat_str(lo)}, {"max", rat_str(hi)}};
        }
        list.push_back(std::move(e));
    }
    r.report().add_result("gallery", p.name.empty() ? Json::object() : Json{{"name", p.name}}, Json{{"entries", std::move(list)}});
}

bool op_selftest(Run& r, const Common& c) {
    auto res = run_acceptance(c.seed);
    Json rows = Json::array();
    bool all = true;
    for (const auto& x : res) {
        rows.push_back(Json{{"id", x.id}, {"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
        all = all && x.pass;
    }
    r.report().add_result("selftest", Json::object(), Json{{"pass", all}, {"criteria", std::move(rows)}});
    return all;
}

int code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::Parse:
        case ErrorCode::NonCanonical:
        case ErrorCode::DepthExceeded:
        case ErrorCode::BadAddress:
            return kExitParse;
        case ErrorCode::BudgetExceeded: return kExitBudget;
        default: return kExitUsage;
    }
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ordlab: exact Baire-1 classification on countable compact ordinal spaces"};
    app.require_subcommand(1);
    Common c;
    Params p;
    auto sub = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        add_common(s, c);
        return s;
    };
    CLI::App* s_classify = sub("classify", "continuity, DBSC, B_{1/4}, B_{1/2}, B_1 verdicts with certificates");
    CLI::App* s_index = sub("index", "beta / alpha / gen index trace");
    s_index->add_option("--kind", p.kind)->check(CLI::IsMember({"beta", "alpha", "gen"}));
    s_index->add_option("--delta", p.delta);
    s_index->add_option("--a", p.a);
    s_index->add_option("--b", p.b);
    s_index->add_option("--deltas", p.deltas, "comma separated chain");
    CLI::App* s_norms = sub("norms", "|F|_I', |F|_I and |F|_D bounds");
    s_norms->add_option("--floor", p.floor, "delta floor for structural chains");
    CLI::App* s_witness = sub("witness", "canonical stabilizing witness and its variation bound");
    s_witness->add_option("--point", p.point, "ordinal whose stage values are listed");
    CLI::App* s_separate = sub("separate", "D-separation of [F<=a] from [F>=b]");
    s_separate->add_option("--a", p.a);
    s_separate->add_option("--b", p.b);
    CLI::App* s_approx = sub("approx", "B_{1/4} approximant");
    s_approx->add_option("--m", p.m);
    s_approx->add_option("--kmax", p.kmax, "truncation levels for the prop53a family");
    CLI::App* s_ps = sub("psdecomp", "PS decomposition by CNF complexity");
    s_ps->add_option("--n", p.n);
    CLI::App* s_ind = sub("independence", "independent family of level-set pairs");
    s_ind->add_option("--a", p.a);
    s_ind->add_option("--b", p.b);
    s_ind->add_option("--a2", p.a2, "a'");
    s_ind->add_option("--b2", p.b2, "b'");
    s_ind->add_option("--m", p.m);
    CLI::App* s_b14 = sub("b14check", "filtered jump-sum criterion on a step function sequence");
    s_b14->add_option("--stages", p.stages, "number of canonical witness stages");
    s_b14->add_option("--alternating", p.alternating, "use a 0/1 alternating sequence of this length instead");
    s_b14->add_option("--eps", p.eps);
    s_b14->add_option("--c", p.c, "bound C, or 'witness'");
    CLI::App* s_p85 = sub("prop85", "closed forms for the sin(1/t) example on [0,1]^w");
    s_p85->add_option("--mode", p.mode)->check(CLI::IsMember({"nonempty", "chain", "iprime"}));
    s_p85->add_option("--m", p.m);
    s_p85->add_option("--eps", p.eps);
    CLI::App* s_gal = sub("gallery", "list gallery functions or describe --fn");
    s_gal->add_option("--name", p.name);
    s_gal->add_option("--point", p.point, "address /i/j/... for structural functions");
    CLI::App* s_self = sub("selftest", "acceptance suite as a pass/fail matrix");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (c.json && c.text) {
        err << "usage error: --json and --text are exclusive\n";
        return kExitUsage;
    }

    std::string query;
    for (size_t i = 0; i < args.size(); ++i) query += (i ? " " : "") + args[i];
    auto t0 = std::chrono::steady_clock::now();
    Run run(c, query);
    int code = kExitOk;
    try {
        if (s_classify->parsed()) op_classify(run);
        else if (s_index->parsed()) op_index(run, p);
        else if (s_norms->parsed()) op_norms(run, p);
        else if (s_witness->parsed()) op_witness(run, p);
        else if (s_separate->parsed()) op_separate(run, p);
        else if (s_approx->parsed()) op_approx(run, p);
        else if (s_ps->parsed()) op_psdecomp(run, p);
        else if (s_ind->parsed()) op_independence(run, p);
        else if (s_b14->parsed()) op_b14check(run, p);
        else if (s_p85->parsed()) op_prop85(run, p);
        else if (s_gal->parsed()) op_gallery(run, p, c);
        else if (s_self->parsed() && !op_selftest(run, c)) code = kExitVerify;
    } catch (const Error& e) {
        int ec = code_for(e);
        Json j{{"version", kToolVersion}, {"query", query}, {"error", Json{{"code", error_name(e.code())}, {"message", e.what()}}}};
        if (c.text) out << "error: " << e.what() << "\n";
        else out << j.dump(2) << "\n";
        err << e.what() << "\n";
        return ec;
    }
    if (run.budget_hit) code = kExitBudget;
    double ms = c.deterministic ? 0.0 : std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    Json j = run.report().to_json(ms);
    if (c.text) out << render_text(j);
    else out << j.dump(2) << "\n";
    if (!run.report().verified()) {
        err << "VERIFICATION FAILURE: " << run.report().failure() << "\n";
        return kExitVerify;
    }
    return code;
}

}  // namespace ordlab
