#include "ordlab/report.hpp"

#include <sstream>

namespace ordlab {

Json set_json(const CanonicalSet& s) { return to_string(s); }

Json trace_json(const IndexTrace& t) {
    Json j;
    j["spec"] = spec_string(t.spec);
    Json st = Json::array();
    for (const auto& s : t.stages)
        st.push_back(Json{{"index", to_string(s.index)}, {"limit", s.limit}, {"set", set_json(s.set)}});
    j["stages"] = std::move(st);
    j["terminal"] = terminal_name(t.terminal);
    j["at"] = to_string(t.at);
    return j;
}

Json stepfn_json(const StepFn& s) {
    Json a = Json::array();
    for (const auto& p : s.pieces()) a.push_back(Json{{"lo", to_string(p.lo)}, {"hi", to_string(p.hi)}, {"value", rat_str(p.value)}});
    return a;
}

Json fn_json(const SimpleFn& f) {
    Json j;
    j["descriptor"] = f.descriptor();
    j["top"] = to_string(f.top());
    Json parts = Json::array();
    for (const auto& p : f.parts()) parts.push_back(Json{{"value", rat_str(p.value)}, {"set", set_json(p.set)}});
    j["parts"] = std::move(parts);
    if (f.family()) {
        Json bl = Json::array();
        for (const auto& b : f.family()->blocks)
            bl.push_back(Json{{"index", b.index}, {"lo", to_string(b.lo)}, {"hi", to_string(b.hi)}, {"fn", b.local->descriptor()}});
        j["family"] = Json{{"rule", f.family()->rule}, {"n_max", f.family()->n_max}, {"blocks", std::move(bl)}};
    }
    return j;
}

namespace {

template <class M>
Json rat_map(const M& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = rat_str(v);
    return j;
}

Json rat_list(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rat_str(q));
    return a;
}

Json ord_list(const std::vector<Ordinal>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json terms_json(const std::vector<SeparationTerm>& ts) {
    Json a = Json::array();
    for (const auto& t : ts) a.push_back(Json{{"closure_le", set_json(t.c1)}, {"closure_ge", set_json(t.c2)}});
    return a;
}

}  // namespace

Json cert_json(const Certificate& c) {
    Json j;
    j["kind"] = cert_kind_name(c.kind);
    j["subject"] = c.subject;
    Json claims = Json::object(), ev = Json::object();
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, WitnessUpperData>) {
                claims["finite"] = d.finite;
                if (d.finite) claims["bound"] = rat_str(d.bound);
                claims["exact"] = d.exact;
                if (d.argmax) claims["argmax"] = to_string(*d.argmax);
                if (!d.block_bounds.empty()) claims["block_bounds"] = rat_map(d.block_bounds);
                ev["rule"] = d.rule;
                ev["method"] = d.method;
                Json st = Json::array();
                for (const auto& s : d.stages) st.push_back(stepfn_json(s));
                ev["stages"] = std::move(st);
                if (!d.block_argmax.empty()) {
                    Json m = Json::object();
                    for (const auto& [k, v] : d.block_argmax) m[std::to_string(k)] = to_string(v);
                    ev["block_argmax"] = std::move(m);
                }
            } else if constexpr (std::is_same_v<T, ChainLowerData>) {
                claims["diverges"] = d.diverges;
                if (!d.diverges) claims["bound"] = rat_str(d.bound);
                if (!d.closed_form.empty()) claims["closed_form"] = d.closed_form;
                if (!d.family.empty()) claims["family"] = rat_map(d.family);
                ev["sup_norm"] = rat_str(d.sup_norm);
                if (!d.chain.empty()) {
                    ev["chain"] = rat_list(d.chain);
                    ev["chain_sum"] = rat_str(d.chain_sum);
                }
                if (!d.trace.stages.empty()) ev["trace"] = trace_json(d.trace);
                if (!d.family_chains.empty()) {
                    Json m = Json::object();
                    for (const auto& [k, v] : d.family_chains) m[std::to_string(k)] = rat_list(v);
                    ev["family_chains"] = std::move(m);
                }
            } else if constexpr (std::is_same_v<T, SeparationData>) {
                claims["a"] = rat_str(d.a);
                claims["b"] = rat_str(d.b);
                claims["D"] = set_json(d.d);
                ev["alpha"] = trace_json(d.alpha);
                ev["terms"] = terms_json(d.terms);
            } else if constexpr (std::is_same_v<T, ApproximantData>) {
                claims["m"] = d.m;
                claims["sup_error"] = rat_str(d.sup_error);
                claims["d_finite"] = d.d_finite;
                if (d.d_finite) claims["d_bound"] = rat_str(d.d_bound);
                if (d.shift != 0 || d.scale != 1)
                    claims["normalization"] = Json{{"shift", rat_str(d.shift)}, {"scale", rat_str(d.scale)}};
                ev["G"] = fn_json(*d.g);
                Json ds = Json::array();
                for (const auto& s : d.d) ds.push_back(set_json(s));
                ev["D"] = std::move(ds);
                Json ts = Json::array();
                for (const auto& t : d.terms) ts.push_back(terms_json(t));
                ev["separations"] = std::move(ts);
            } else if constexpr (std::is_same_v<T, PSData>) {
                claims["n"] = d.n;
                Json sizes = Json::array();
                for (const auto& k : d.k) sizes.push_back(k.size());
                claims["sizes"] = std::move(sizes);
                ev["rule"] = "K_n = points of CNF complexity <= n, plus the top";
                Json ks = Json::array();
                for (const auto& k : d.k) ks.push_back(k.size() <= 64 ? ord_list(k) : Json("(" + std::to_string(k.size()) + " points)"));
                ev["K"] = std::move(ks);
                ev["samples"] = ord_list(d.samples);
            } else if constexpr (std::is_same_v<T, IndependentData>) {
                claims["a"] = rat_str(d.a);
                claims["b"] = rat_str(d.b);
                claims["a_prime"] = rat_str(d.a2);
                claims["b_prime"] = rat_str(d.b2);
                claims["m"] = d.m;
                claims["patterns"] = std::uint64_t{1} << d.m;
                Json st = Json::array();
                for (auto n : d.stages) st.push_back(n);
                ev["stages"] = std::move(st);
                ev["witnesses"] = ord_list(d.witnesses);
                Json ps = Json::array();
                for (const auto& [x, y] : d.pairs) ps.push_back(Json{{"A", set_json(x)}, {"B", set_json(y)}});
                ev["pairs"] = std::move(ps);
            } else if constexpr (std::is_same_v<T, BetaTraceData>) {
                claims["claim"] = d.claim;
                claims["delta"] = rat_str(d.delta);
                if (!d.trace.stages.empty()) {
                    claims["terminal"] = terminal_name(d.trace.terminal);
                    claims["at"] = to_string(d.trace.at);
                    ev["trace"] = trace_json(d.trace);
                }
                if (!d.blocks.empty()) {
                    Json m = Json::object();
                    for (const auto& [k, t] : d.blocks) m[std::to_string(k)] = trace_json(t);
                    ev["blocks"] = std::move(m);
                }
            } else {
                claims["n_max"] = d.n_max;
                claims["uniform_witness_bound"] = rat_str(d.uniform_bound);
                Json es = Json::array();
                for (const auto& e : d.entries)
                    es.push_back(Json{{"n", e.n},
                                      {"k", e.k},
                                      {"m", e.m},
                                      {"sup_error", rat_str(e.sup_error)},
                                      {"error_bound", rat_str(e.error_bound)},
                                      {"witness_bound", rat_str(e.witness_bound)}});
                ev["entries"] = std::move(es);
            }
        },
        c.data);
    j["claims"] = std::move(claims);
    j["evidence"] = std::move(ev);
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

Json class_json(const ClassReport& r) {
    auto entry = [](const ClassEntry& e) {
        Json j{{"verdict", verdict_name(e.verdict)}, {"certificates", e.certs}};
        if (!e.reference.empty()) j["reference"] = e.reference;
        if (!e.reason.empty()) j["reason"] = e.reason;
        return j;
    };
    Json j;
    j["continuous"] = entry(r.continuous);
    j["dbsc"] = entry(r.dbsc);
    j["b14"] = entry(r.b14);
    j["b12"] = entry(r.b12);
    j["b1"] = entry(r.b1);
    j["beta_sup"] = r.beta_sup;
    j["beta_lower_bound_only"] = r.beta_lower_only;
    return j;
}

std::string Report::add_cert(Certificate c) {
    if (c.id.empty()) c.id = "c" + std::to_string(ids_.size() + 1);
    VerifyResult v = verify(c);
    Json j = cert_json(c);
    j["verified"] = v.ok;
    if (!v.ok) {
        j["verify_detail"] = v.detail;
        if (failure_.empty()) failure_ = c.id + " (" + cert_kind_name(c.kind) + "): " + v.detail;
    }
    certs_[c.id] = std::move(j);
    ids_.push_back(c.id);
    return c.id;
}

void Report::add_result(const std::string& op, Json params, Json outcome, std::vector<std::string> certs) {
    results_.push_back(Json{{"op", op}, {"params", std::move(params)}, {"outcome", std::move(outcome)}, {"certificates", std::move(certs)}});
}

Json Report::to_json(double timing_ms) const {
    Json j;
    j["version"] = kToolVersion;
    j["query"] = query_;
    j["function"] = function_;
    j["results"] = results_;
    j["certificates"] = certs_;
    j["timing_ms"] = timing_ms;
    return j;
}

namespace {

void text_value(std::ostringstream& os, const Json& v, int indent) {
    std::string pad(static_cast<size_t>(indent), ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            const Json& x = it.value();
            if (x.is_object() || (x.is_array() && !x.empty() && (x.front().is_object() || x.front().is_array()))) {
                os << pad << it.key() << ":\n";
                text_value(os, x, indent + 2);
            } else {
                os << pad << it.key() << ": ";
                text_value(os, x, 0);
                os << "\n";
            }
        }
    } else if (v.is_array()) {
        if (!v.empty() && (v.front().is_object() || v.front().is_array())) {
            for (size_t i = 0; i < v.size(); ++i) {
                os << pad << "- [" << i << "]\n";
                text_value(os, v[i], indent + 2);
                if (v[i].is_array()) os << "\n";
            }
        } else {
            os << "[";
            for (size_t i = 0; i < v.size(); ++i) {
                if (i) os << ", ";
                text_value(os, v[i], 0);
            }
            os << "]";
        }
    } else if (v.is_string()) {
        os << v.get<std::string>();
    } else {
        os << v.dump();
    }
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream os;
    os << "ordlab " << report.value("version", "") << "\n";
    os << "query: " << report.value("query", "") << "\n";
    os << "function: " << report.value("function", "") << "\n";
    for (const auto& r : report["results"]) {
        os << "\n== " << r["op"].get<std::string>() << " ==\n";
        if (!r["params"].empty()) {
            os << "params:\n";
            text_value(os, r["params"], 2);
        }
        os << "outcome:\n";
        text_value(os, r["outcome"], 2);
        if (!r["certificates"].empty()) {
            os << "certificates: ";
            text_value(os, r["certificates"], 0);
            os << "\n";
        }
    }
    if (!report["certificates"].empty()) {
        os << "\n== certificates ==\n";
        for (auto it = report["certificates"].begin(); it != report["certificates"].end(); ++it) {
            const Json& c = it.value();
            os << it.key() << ": " << c["kind"].get<std::string>() << (c.value("verified", false) ? " (verified)" : " (FAILED)") << "\n";
            text_value(os, c["claims"], 2);
            if (c.contains("verify_detail")) os << "  detail: " << c["verify_detail"].get<std::string>() << "\n";
        }
    }
    os << "\ntiming_ms: " << report["timing_ms"].dump() << "\n";
    return os.str();
}

}  // namespace ordlab
