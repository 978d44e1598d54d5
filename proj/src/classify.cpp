#include "ordlab/classify.hpp"

namespace ordlab {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CertifiedYes: return "CertifiedYes";
        case Verdict::CertifiedNo: return "CertifiedNo";
        case Verdict::PaperCited: return "PaperCited";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

Convention descriptor_convention(const std::string& descriptor) {
    return descriptor.find("parity=odd") != std::string::npos ? Convention::Odd : Convention::Even;
}

namespace {

struct Store {
    ClassReport& r;
    std::string add(Certificate c) {
        c.id = "c" + std::to_string(r.certificates.size() + 1);
        r.certificates.push_back(std::move(c));
        return r.certificates.back().id;
    }
};

void set(ClassEntry& e, Verdict v, const std::string& cert, std::string reason) {
    e.verdict = v;
    e.certs = {cert};
    e.reason = std::move(reason);
}

bool rule_is(const SimpleFn& f, const char* r) { return f.family() && f.family()->rule == r; }

}  // namespace

ClassReport classify(const SimpleFn& f, const RunOptions& opt) {
    ClassReport r;
    r.function = f.descriptor();
    Store st{r};
    auto gaps = f.gaps();
    bool fam_b = rule_is(f, "prop53b"), fam_a = rule_is(f, "prop53a");

    // continuity: K_1 at the least gap is the largest K_1 over all delta
    if (gaps.empty()) {
        std::string id = st.add(beta_certificate(f, "k1_empty", 1, opt));
        set(r.continuous, Verdict::CertifiedYes, id, "constant function");
    } else {
        Certificate c = beta_certificate(f, "k1_empty", gaps.front(), opt);
        const auto& t = std::get<BetaTraceData>(c.data).trace;
        bool empty = t.stages.size() > 1 && t.stages[1].set.empty();
        if (!empty) std::get<BetaTraceData>(c.data).claim = "k1_nonempty";
        std::string id = st.add(std::move(c));
        set(r.continuous, empty ? Verdict::CertifiedYes : Verdict::CertifiedNo, id,
            empty ? "K_1 empty at the least gap" : "K_1 nonempty at delta " + rat_str(gaps.front()));
    }

    // b1: every simple function here is a pointwise-stable limit of its canonical witness
    std::string ps = st.add(ps_decomposition(f, 2, opt.seed));
    set(r.b1, Verdict::CertifiedYes, ps, "PS decomposition by CNF complexity");

    // beta_sup and b12
    if (fam_b) {
        r.beta_sup = "w";
        std::string id = st.add(beta_certificate(f, "family_finite", 1, opt));
        set(r.b12, Verdict::CertifiedYes, id, "each delta meets finitely many blocks, each of finite beta; sup over the family is w");
    } else {
        BetaSup bs = beta_sup(f, opt);
        r.beta_sup = to_string(bs.value);
        r.beta_lower_only = bs.lower_bound_only;
        if (!bs.lower_bound_only) {
            std::string id = st.add(beta_certificate(f, "empty_at", bs.delta, opt));
            bool yes = bs.value <= Ordinal::omega();
            set(r.b12, yes ? Verdict::CertifiedYes : Verdict::CertifiedNo, id,
                "beta(F, " + rat_str(bs.delta) + ") = " + to_string(bs.value));
        }
        if (fam_a) r.beta_sup += " (blocks truncated at level " + std::to_string(kProp53aTruncation) + ")";
    }

    // lower bound chains: shared by b14 and dbsc refutations
    Certificate low = dnorm_lower(f, opt);
    bool diverges = std::get<ChainLowerData>(low.data).diverges;
    std::string low_id = st.add(std::move(low));

    if (fam_a) {
        std::string id = st.add(family_approximant(f.family()->n_max, descriptor_convention(f.descriptor())));
        set(r.b14, Verdict::CertifiedYes, id, "uniform approximants with uniformly bounded witnesses");
    } else if (diverges) {
        set(r.b14, Verdict::CertifiedNo, low_id, "chain sums diverge");
    } else if (r.b12.verdict == Verdict::CertifiedYes && !r.beta_lower_only && r.beta_sup != "w") {
        BetaSup bs = beta_sup(f, opt);
        if (bs.value < Ordinal::omega()) {
            std::string id = st.add(b14_approximant(f, 4, opt));
            set(r.b14, Verdict::CertifiedYes, id, "beta < w: approximant construction");
        }
    }

    // dbsc
    if (fam_a) {
        r.dbsc.verdict = Verdict::PaperCited;
        r.dbsc.reference = "type-n blocks satisfy |F|_D >= n (argument over all converging sequences)";
        r.dbsc.reason = "no index chain certifies this; chain sums stay bounded";
    } else if (diverges) {
        set(r.dbsc, Verdict::CertifiedNo, low_id, "chain sums diverge, so |F|_D is unbounded");
    } else {
        Certificate w = witness_upper(f);
        if (std::get<WitnessUpperData>(w.data).finite) {
            std::string id = st.add(std::move(w));
            set(r.dbsc, Verdict::CertifiedYes, id, "finite witness variation");
        }
    }

    // propagate along the inclusions
    std::vector<ClassEntry*> chain{&r.continuous, &r.dbsc, &r.b14, &r.b12, &r.b1};
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        if (chain[i]->verdict == Verdict::CertifiedYes && chain[i + 1]->verdict == Verdict::Unknown) {
            *chain[i + 1] = *chain[i];
            chain[i + 1]->reason = "implied by a smaller class";
        }
    for (size_t i = chain.size() - 1; i > 0; --i)
        if (chain[i]->verdict == Verdict::CertifiedNo && chain[i - 1]->verdict == Verdict::Unknown) {
            *chain[i - 1] = *chain[i];
            chain[i - 1]->reason = "implied by a larger class";
        }
    return r;
}

}  // namespace ordlab
