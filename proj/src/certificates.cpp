#include "ordlab/certificates.hpp"

#include <algorithm>
#include <random>

#include "ordlab/sampling.hpp"
#include "ordlab/witness.hpp"

namespace ordlab {

const char* cert_kind_name(CertKind k) {
    switch (k) {
        case CertKind::WitnessUpper: return "WitnessUpper";
        case CertKind::ChainLower: return "ChainLower";
        case CertKind::SeparationD: return "SeparationD";
        case CertKind::Approximant: return "Approximant";
        case CertKind::PSDecomposition: return "PSDecomposition";
        case CertKind::IndependentFamily: return "IndependentFamily";
        case CertKind::BetaTrace: return "BetaTrace";
        case CertKind::FamilyApproximant: return "FamilyApproximant";
    }
    return "?";
}

namespace {

Certificate base(CertKind k, const SimpleFn& f) {
    Certificate c;
    c.kind = k;
    c.subject = f.descriptor();
    c.fn = std::make_shared<const SimpleFn>(f);
    return c;
}

bool is_family(const SimpleFn& f, const char* rule) { return f.family() && f.family()->rule == rule; }

}  // namespace

Certificate witness_upper(const SimpleFn& f) {
    Certificate c = base(CertKind::WitnessUpper, f);
    WitnessUpperData d;
    d.rule = "f_k(x) = F(r_k(x)), r_k(x) = least point >= x of complexity <= k (or top); f_0 = 0";
    for (std::uint64_t k = 0; k <= 6; ++k) {
        try {
            d.stages.push_back(witness_stage(f, k, 2000));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::BudgetExceeded) throw;
            break;
        }
    }
    WitnessBound w = witness_bound(f);
    d.finite = w.finite;
    d.bound = w.bound;
    d.method = w.method;
    d.exact = w.exact;
    d.argmax = w.argmax;
    d.block_bounds = w.block_bounds;
    if (!w.finite && f.family()) {
        for (const auto& b : f.family()->blocks) {
            WitnessBound lb = witness_bound(*b.local);
            if (lb.finite && lb.argmax) d.block_argmax[b.index] = b.lo + *lb.argmax;
        }
    }
    c.data = std::move(d);
    return c;
}

Certificate dnorm_lower(const SimpleFn& f, const RunOptions& opt) {
    Certificate c = base(CertKind::ChainLower, f);
    ChainLowerData d;
    d.sup_norm = f.sup_norm();
    if (is_family(f, "prop53b")) {
        d.diverges = true;
        d.closed_form = "block n: n^2 oscillation steps at delta 1/n, chain sum n";
        for (const auto& b : f.family()->blocks) {
            ChainSearch cs = chain_search(*b.local, opt);
            d.family[b.index] = cs.best_sum;
            d.family_chains[b.index] = cs.chain;
        }
        c.data = std::move(d);
        return c;
    }
    ChainSearch cs = chain_search(f, opt);
    if (cs.diverges) {
        d.diverges = true;
        d.trace = index_run(f, TraceSpec::beta(cs.diverging_delta), opt);
        d.closed_form = "K_m(F, " + rat_str(cs.diverging_delta) + ") nonempty for every finite m";
        for (long m = 1; m <= 8; ++m) d.family[m] = cs.diverging_delta * m;
        c.data = std::move(d);
        return c;
    }
    d.chain = cs.chain;
    d.chain_sum = cs.best_sum;
    d.trace = index_run(f, TraceSpec::gen(cs.chain), opt);
    d.bound = std::max(d.sup_norm, Rational(d.chain_sum / 4));
    c.data = std::move(d);
    return c;
}

Certificate separate_by_D(const SimpleFn& f, const Rational& a, const Rational& b, const RunOptions& opt) {
    if (!(a < b)) throw Error(ErrorCode::BadParams, "separation needs a < b");
    IndexTrace t = index_run(f, TraceSpec::alpha(a, b), opt);
    if (t.terminal != Terminal::EmptyAt || !t.at.is_finite())
        throw Error(ErrorCode::IndexNotFinite, "alpha(F; " + rat_str(a) + ", " + rat_str(b) + ") is not finite");
    Certificate c = base(CertKind::SeparationD, f);
    SeparationData d;
    d.a = a;
    d.b = b;
    d.d = CanonicalSet(f.top());
    CanonicalSet le = f.level_set_le(a), ge = f.level_set_ge(b);
    for (size_t i = 0; i + 1 < t.stages.size(); ++i) {
        const CanonicalSet& k = t.stages[i].set;
        SeparationTerm term{k.intersect(le).closure(), k.intersect(ge).closure()};
        d.d = d.d.unite(term.c1.diff(term.c2));
        d.terms.push_back(std::move(term));
    }
    d.alpha = std::move(t);
    c.data = std::move(d);
    return c;
}

namespace {

bool family_beta_infinite(const SimpleFn& f) { return is_family(f, "prop53b") || is_family(f, "prop53a"); }

}  // namespace

Certificate b14_approximant(const SimpleFn& f, long m, const RunOptions& opt) {
    if (m < 1) throw Error(ErrorCode::BadParams, "m must be >= 1");
    if (family_beta_infinite(f))
        throw Error(ErrorCode::IndexNotFinite, "beta of the full family is not finite (sup over blocks is w)");
    auto vals = f.values();
    auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
    Rational shift = 0, scale = 1;
    if (*mn < 0 || *mx > 1) {
        // affine renormalization onto [0, 1] preserves every class in question
        shift = *mn;
        scale = *mx == *mn ? Rational(1) : Rational(1) / (*mx - *mn);
    }
    std::vector<Part> np;
    for (const auto& p : f.parts()) np.push_back(Part{p.set, (p.value - shift) * scale});
    SimpleFn g0(f.top(), np, f.descriptor());
    BetaSup bs = beta_sup(g0, opt);
    if (bs.lower_bound_only || !bs.value.is_finite())
        throw Error(ErrorCode::IndexNotFinite, "beta(F) = " + to_string(bs.value) + " is not finite");

    Certificate c = base(CertKind::Approximant, f);
    ApproximantData d;
    d.m = m;
    d.shift = shift;
    d.scale = scale;
    CanonicalSet cur = CanonicalSet::full(f.top());
    for (long i = 1; i <= m; ++i) {
        Certificate s = separate_by_D(g0, Rational(i - 1, m), Rational(i, m), opt);
        const auto& sd = std::get<SeparationData>(s.data);
        cur = cur.intersect(sd.d.complement());
        d.terms.push_back(sd.terms);
        d.d.push_back(cur);
    }
    // G = sum_i (1/m) 1_{D_i}; level j/m on D_j \ D_{j+1}
    std::vector<Part> gp;
    for (long j = 0; j <= m; ++j) {
        CanonicalSet hi = j == 0 ? CanonicalSet::full(f.top()) : d.d[static_cast<size_t>(j - 1)];
        CanonicalSet next = j == m ? CanonicalSet(f.top()) : d.d[static_cast<size_t>(j)];
        CanonicalSet lvl = hi.diff(next);
        if (!lvl.empty()) gp.push_back(Part{lvl, Rational(j, m)});
    }
    SimpleFn g(f.top(), gp, "approximant(m=" + std::to_string(m) + ")");
    d.sup_error = 0;
    for (const auto& p : g0.parts())
        for (const auto& q : g.parts())
            if (!p.set.intersect(q.set).empty()) d.sup_error = std::max(d.sup_error, rat_abs(p.value - q.value));
    WitnessBound w = witness_bound(g);
    d.d_finite = w.finite;
    d.d_bound = w.bound;
    d.g = std::make_shared<const SimpleFn>(std::move(g));
    c.data = std::move(d);
    return c;
}

Certificate ps_decomposition(const SimpleFn& f, long n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::BadParams, "n must be >= 1");
    Certificate c = base(CertKind::PSDecomposition, f);
    PSData d;
    d.n = n;
    for (long j = 1; j <= n; ++j) {
        std::vector<Ordinal> k = enumerate_simple(static_cast<std::uint64_t>(j), f.top(), 100000);
        if (k.empty() || !(k.back() == f.top())) k.push_back(f.top());
        d.k.push_back(std::move(k));
    }
    std::mt19937_64 rng(seed);
    std::vector<Cell> cells;
    for (const auto& p : f.parts())
        cells.insert(cells.end(), p.set.cells().begin(), p.set.cells().end());
    d.samples = sample_points(f.top(), cells, rng, 40);
    c.data = std::move(d);
    return c;
}

namespace {

// a clopen neighbourhood [lo, k] of k on which r_n is constantly k, inside [l, h]
Ordinal piece_floor(const Ordinal& k, std::uint64_t n, const Ordinal& top, const Ordinal& l) {
    if (kind_of(k) != PointKind::Limit) return std::max(k, l);
    for (std::uint64_t t = 1; t < 4096; ++t) {
        Ordinal q = fundamental_seq(k, t);
        if (q < l) continue;
        if (reveal_point(q.succ(), n, top) == k) return std::max(q.succ(), l);
    }
    throw Error(ErrorCode::Internal, "no stable neighbourhood found");
}

}  // namespace

Certificate independent_family(const SimpleFn& f, const Rational& a, const Rational& b, const Rational& a2,
                               const Rational& b2, long m, const RunOptions& opt) {
    if (!(a < a2 && a2 < b2 && b2 < b)) throw Error(ErrorCode::BadParams, "need a < a' < b' < b");
    if (m < 1) throw Error(ErrorCode::BadParams, "m must be >= 1");
    if (m > 12) throw Error(ErrorCode::BudgetExceeded, "m > 12");
    if (f.family()) throw Error(ErrorCode::BadParams, "independent families are built for single-block functions");
    IndexTrace t = index_run(f, TraceSpec::alpha(a, b), opt);
    std::vector<CanonicalSet> k;  // finite stages
    for (const auto& s : t.stages) {
        if (s.limit) break;
        k.push_back(s.set);
    }
    if (static_cast<long>(k.size()) <= m || k[static_cast<size_t>(m)].empty())
        throw Error(ErrorCode::InsufficientIndex, "K_" + std::to_string(m) + "(F; a, b) is empty");

    Certificate c = base(CertKind::IndependentFamily, f);
    IndependentData d;
    d.a = a;
    d.b = b;
    d.a2 = a2;
    d.b2 = b2;
    d.m = m;
    CanonicalSet le = f.level_set_le(a), ge = f.level_set_ge(b);

    struct Node {
        Ordinal pt, lo, hi;
        std::uint64_t bits = 0;
    };
    std::vector<Node> level{Node{*k[static_cast<size_t>(m)].min_elem(), Ordinal(), f.top(), 0}};
    std::uint64_t prev_stage = 0;
    for (long i = 1; i <= m; ++i) {
        const CanonicalSet& ki = k[static_cast<size_t>(m - i)];
        std::vector<Node> next;
        std::uint64_t n = prev_stage + 1;
        for (const auto& nd : level) {
            CanonicalSet u = CanonicalSet::interval(f.top(), nd.lo, nd.hi);
            auto p_in = ki.intersect(u).intersect(le).min_elem();
            auto p_out = ki.intersect(u).intersect(ge).min_elem();
            if (!p_in || !p_out) throw Error(ErrorCode::Internal, "empty branch in independent family");
            next.push_back(Node{*p_in, nd.lo, nd.hi, nd.bits | (std::uint64_t{1} << (i - 1))});
            next.push_back(Node{*p_out, nd.lo, nd.hi, nd.bits});
            n = std::max({n, complexity(*p_in), complexity(*p_out)});
        }
        for (auto& nd : next) {
            nd.lo = piece_floor(nd.pt, n, f.top(), nd.lo);
            nd.hi = nd.pt;
        }
        d.stages.push_back(n);
        prev_stage = n;
        level = std::move(next);
    }
    d.witnesses.assign(level.size(), Ordinal());
    for (const auto& nd : level) d.witnesses[nd.bits] = nd.pt;
    bool small = true;
    for (auto n : d.stages) {
        try {
            enumerate_simple(n, f.top(), 5000);
        } catch (const Error&) {
            small = false;
        }
    }
    if (small) {
        for (auto n : d.stages) {
            StepFn s = witness_stage(f, n, 5000);
            std::vector<Ordinal> a_pts, b_pts;
            CanonicalSet as(f.top()), bs(f.top());
            for (const auto& p : s.pieces()) {
                CanonicalSet piece = CanonicalSet::interval(f.top(), p.lo, p.hi);
                if (p.value <= a2) as = as.unite(piece);
                if (p.value >= b2) bs = bs.unite(piece);
            }
            d.pairs.emplace_back(std::move(as), std::move(bs));
        }
    }
    c.data = std::move(d);
    return c;
}

Certificate beta_certificate(const SimpleFn& f, const std::string& claim, const Rational& delta,
                             const RunOptions& opt) {
    Certificate c = base(CertKind::BetaTrace, f);
    BetaTraceData d;
    d.claim = claim;
    d.delta = delta;
    if (claim == "family_finite") {
        if (!f.family()) throw Error(ErrorCode::BadParams, "family claim on a single function");
        for (const auto& b : f.family()->blocks) {
            auto g = b.local->gaps();
            Rational dl = g.empty() ? Rational(1) : g.front();
            d.blocks[b.index] = index_run(*b.local, TraceSpec::beta(dl), opt);
        }
    } else {
        // K_1 claims need one oscillation step only
        d.trace = index_run(f, claim == "empty_at" ? TraceSpec::beta(delta) : TraceSpec::gen({delta}), opt);
    }
    c.data = std::move(d);
    return c;
}

Certificate family_approximant(long n_max, Convention conv, long k_max) {
    SimpleFn f = prop53a(n_max, conv);
    Certificate c = base(CertKind::FamilyApproximant, f);
    FamilyApproxData d;
    d.n_max = n_max;
    d.conv = conv;
    d.uniform_bound = 0;
    for (long n = 0; n <= n_max; ++n) {
        StructFn blk = prop53a_block(n, conv);
        long m = n + 1;
        for (long k = 1; k <= k_max; ++k) {
            FamilyEntry e;
            e.n = n;
            e.k = k;
            e.m = m;
            e.sup_error = truncation_error(blk, k);
            e.error_bound = Rational(1, k + m);
            WitnessBound w = witness_bound(flatten_blocks(truncate(blk, k)));
            if (!w.finite) throw Error(ErrorCode::Internal, "approximant witness bound not finite");
            e.witness_bound = w.bound;
            d.uniform_bound = std::max(d.uniform_bound, w.bound);
            d.entries.push_back(e);
        }
    }
    c.data = std::move(d);
    return c;
}

}  // namespace ordlab
