// Certificate checker. Uses only the ordinal, set and function layers; the revealed-point
// map, the stage values and the oscillation steps are recomputed here by separate code.
#include <algorithm>
#include <random>
#include <set>

#include "ordlab/certificates.hpp"
#include "ordlab/sampling.hpp"

namespace ordlab {

namespace {

VerifyResult fail(std::string s) { return VerifyResult{false, std::move(s)}; }

Ordinal lead(const Ordinal& x) { return x.is_zero() ? Ordinal() : x.terms().front().exp; }

std::uint64_t cplx(const Ordinal& x) {
    std::uint64_t c = x.terms().size();
    for (const auto& t : x.terms()) c = std::max({c, t.coeff, cplx(t.exp)});
    return c;
}

Ordinal from(std::vector<Ordinal::Term> t) { return Ordinal::from_terms(std::move(t)); }

// every candidate y >= x that agrees with x on a prefix and then rounds one term up
void candidates(const Ordinal& x, std::uint64_t k, const Ordinal& cap, std::vector<Ordinal>& out) {
    out.push_back(x);
    if (x.is_finite()) {
        out.push_back(Ordinal::omega());
        return;
    }
    const auto& t = x.terms();
    for (size_t j = 0; j < t.size(); ++j) {
        std::vector<Ordinal::Term> pre(t.begin(), t.begin() + static_cast<long>(j));
        std::vector<Ordinal::Term> y = pre;
        y.push_back(Ordinal::Term{t[j].exp, t[j].coeff + 1});
        out.push_back(from(y));
        Ordinal ecap = j == 0 ? lead(cap) : t[j - 1].exp;
        std::vector<Ordinal> ex;
        candidates(t[j].exp.succ(), k, ecap, ex);
        for (const auto& e : ex) {
            if (cplx(e) > k) continue;
            if (j > 0 && !(e < t[j - 1].exp)) continue;
            std::vector<Ordinal::Term> z = pre;
            z.push_back(Ordinal::Term{e, 1});
            out.push_back(from(z));
        }
    }
}

Ordinal own_reveal(const Ordinal& x, std::uint64_t k, const Ordinal& top) {
    std::vector<Ordinal> c;
    candidates(x, k, top, c);
    std::optional<Ordinal> best;
    for (const auto& y : c)
        if (!(y < x) && !(top < y) && cplx(y) <= k && (!best || y < *best)) best = y;
    return best ? *best : top;
}

const Block* block_of(const SimpleFn& f, const Ordinal& x) {
    if (!f.family() || f.family()->blocks.empty()) return nullptr;
    for (const auto& b : f.family()->blocks)
        if (b.lo <= x && x <= b.hi) return &b;
    return nullptr;
}

bool blocked(const SimpleFn& f) { return f.family() && !f.family()->blocks.empty(); }

Rational own_stage(const SimpleFn& f, std::uint64_t k, const Ordinal& x) {
    if (k == 0) return 0;
    if (blocked(f)) {
        const Block* b = block_of(f, x);
        return b ? own_stage(*b->local, k, ord_sub(b->lo, x)) : Rational(0);
    }
    return f.eval(own_reveal(x, k, f.top()));
}

Rational own_variation(const SimpleFn& f, const Ordinal& x) {
    if (blocked(f)) {
        const Block* b = block_of(f, x);
        return b ? own_variation(*b->local, ord_sub(b->lo, x)) : Rational(0);
    }
    Rational prev = 0, tot = 0;
    for (std::uint64_t k = 1; k <= std::max<std::uint64_t>(cplx(x), 1); ++k) {
        Rational v = f.eval(own_reveal(x, k, f.top()));
        tot += rat_abs(v - prev);
        prev = v;
    }
    return tot;
}

std::vector<Ordinal> probe_points(const SimpleFn& f, std::uint64_t seed, size_t n) {
    std::mt19937_64 rng(seed);
    std::vector<Cell> cells;
    for (const auto& p : f.parts()) cells.insert(cells.end(), p.set.cells().begin(), p.set.cells().end());
    return sample_points(f.top(), cells, rng, n);
}

// K' = union over value pairs with |u - v| >= delta of cl(K n [F=u]) n cl(K n [F=v])
CanonicalSet own_osc(const SimpleFn& f, const CanonicalSet& k, const Rational& delta) {
    CanonicalSet out(k.top());
    const auto& ps = f.parts();
    for (size_t i = 0; i < ps.size(); ++i) {
        CanonicalSet ci = k.intersect(ps[i].set);
        if (ci.empty()) continue;
        ci = ci.closure();
        for (size_t j = 0; j < ps.size(); ++j) {
            if (j == i || rat_abs(ps[i].value - ps[j].value) < delta) continue;
            CanonicalSet cj = k.intersect(ps[j].set);
            if (!cj.empty()) out = out.unite(ci.intersect(cj.closure()));
        }
    }
    return out;
}

// replay the finite stages of a beta or gen trace, and check limit stages by containment
VerifyResult replay(const SimpleFn& f, const IndexTrace& t) {
    if (t.stages.empty() || !t.stages[0].set.equals(CanonicalSet::full(f.top()))) return fail("stage 0 is not the space");
    std::vector<const CanonicalSet*> since_limit;
    for (size_t i = 1; i < t.stages.size(); ++i) {
        const Stage& s = t.stages[i];
        if (s.limit) {
            // a limit stage must sit inside every finite stage since the previous limit and below
            for (size_t j = 0; j < i; ++j)
                if (!s.set.subset_of(t.stages[j].set))
                    return fail("limit stage " + to_string(s.index) + " not contained in stage " + to_string(t.stages[j].index));
            continue;
        }
        Rational d = t.spec.kind == TraceKind::Gen ? t.spec.deltas.at(i - 1) : t.spec.delta;
        CanonicalSet mine = t.spec.kind == TraceKind::Alpha
                                ? t.stages[i - 1].set.intersect(f.level_set_le(t.spec.a)).closure().intersect(
                                      t.stages[i - 1].set.intersect(f.level_set_ge(t.spec.b)).closure())
                                : own_osc(f, t.stages[i - 1].set, d);
        if (!mine.equals(s.set)) return fail("stage " + to_string(s.index) + " differs from the recomputed set");
    }
    if (t.terminal == Terminal::EmptyAt && !t.stages.back().set.empty()) return fail("terminal stage is not empty");
    return {};
}

VerifyResult check_witness(const Certificate& c, const WitnessUpperData& d) {
    const SimpleFn& f = *c.fn;
    std::vector<Ordinal> pts = probe_points(f, 11, 40);
    for (size_t k = 0; k < d.stages.size(); ++k) {
        const StepFn& s = d.stages[k];
        if (std::string e = stepfn_defect(f.top(), s.pieces()); !e.empty())
            return fail("stage " + std::to_string(k) + ": " + e);
        std::vector<Ordinal> probe = pts;
        for (const auto& p : s.pieces()) probe.push_back(p.hi);
        for (const auto& x : probe) {
            Rational want = own_stage(f, k, x);
            if (s.eval(x) != want)
                return fail("stage " + std::to_string(k) + " at " + to_string(x) + ": " + rat_str(s.eval(x)) +
                            " != " + rat_str(want));
        }
    }
    if (d.finite) {
        std::vector<Ordinal> probe = pts;
        for (const auto& s : d.stages)
            for (const auto& p : s.pieces()) probe.push_back(p.hi);
        for (const auto& x : probe)
            if (Rational v = own_variation(f, x); v > d.bound)
                return fail("variation " + rat_str(v) + " at " + to_string(x) + " exceeds bound " + rat_str(d.bound));
        if (d.exact) {
            if (!d.argmax) return fail("exact bound without a point attaining it");
            if (Rational v = own_variation(f, *d.argmax); v != d.bound)
                return fail("variation at claimed argmax " + to_string(*d.argmax) + " is " + rat_str(v));
        }
    } else {
        for (const auto& [n, x] : d.block_argmax) {
            auto it = d.block_bounds.find(n);
            if (it == d.block_bounds.end()) return fail("block " + std::to_string(n) + " has a point but no bound");
            if (Rational v = own_variation(f, x); v != it->second)
                return fail("block " + std::to_string(n) + ": variation " + rat_str(v) + " at " + to_string(x) +
                            " != " + rat_str(it->second));
        }
    }
    return {};
}

VerifyResult check_chain(const Certificate& c, const ChainLowerData& d) {
    const SimpleFn& f = *c.fn;
    if (d.sup_norm != f.sup_norm()) return fail("sup norm mismatch");
    if (!d.family_chains.empty()) {
        for (const auto& [n, ch] : d.family_chains) {
            const Block* blk = nullptr;
            for (const auto& b : f.family()->blocks)
                if (b.index == n) blk = &b;
            if (!blk) return fail("no block " + std::to_string(n));
            CanonicalSet k = CanonicalSet::full(blk->local->top());
            Rational sum = 0;
            for (const auto& dl : ch) {
                k = own_osc(*blk->local, k, dl);
                sum += dl;
            }
            if (k.empty()) return fail("block " + std::to_string(n) + ": chain ends in an empty set");
            if (sum != d.family.at(n)) return fail("block " + std::to_string(n) + ": chain sum mismatch");
        }
        return {};
    }
    if (d.diverges) {
        if (auto r = replay(f, d.trace); !r.ok) return r;
        if (d.trace.terminal == Terminal::EmptyAt && d.trace.at.is_finite())
            return fail("trace empties at a finite stage");
        bool has_nonempty_limit = false;
        for (const auto& s : d.trace.stages) has_nonempty_limit |= s.limit && !s.set.empty();
        if (!has_nonempty_limit) return fail("no nonempty limit stage");
        return {};
    }
    CanonicalSet k = CanonicalSet::full(f.top());
    Rational sum = 0;
    for (const auto& dl : d.chain) {
        k = own_osc(f, k, dl);
        sum += dl;
        if (k.empty()) return fail("chain reaches the empty set");
    }
    if (sum != d.chain_sum) return fail("chain sum mismatch");
    if (d.bound != std::max(d.sup_norm, Rational(sum / 4))) return fail("bound is not max(sup, sum/4)");
    return {};
}

VerifyResult check_separation(const Certificate& c, const SeparationData& d) {
    const SimpleFn& f = *c.fn;
    CanonicalSet le = f.level_set_le(d.a), ge = f.level_set_ge(d.b);
    if (CanonicalSet miss = le.diff(d.d); !miss.empty())
        return fail("point " + to_string(*miss.min_elem()) + " in [F<=" + rat_str(d.a) + "] \\ D");
    if (CanonicalSet hit = d.d.intersect(ge); !hit.empty())
        return fail("point " + to_string(*hit.min_elem()) + " in D n [F>=" + rat_str(d.b) + "]");
    CanonicalSet u(f.top());
    for (size_t i = 0; i < d.terms.size(); ++i) {
        const auto& t = d.terms[i];
        if (!t.c1.closure().equals(t.c1) || !t.c2.closure().equals(t.c2))
            return fail("term " + std::to_string(i + 1) + " is not a difference of closed sets");
        u = u.unite(t.c1.diff(t.c2));
    }
    if (!u.equals(d.d)) return fail("D is not the union of its terms");
    return {};
}

VerifyResult check_approximant(const Certificate& c, const ApproximantData& d) {
    const SimpleFn& f = *c.fn;
    const SimpleFn& g = *d.g;
    if (static_cast<long>(d.d.size()) != d.m || static_cast<long>(d.terms.size()) != d.m) return fail("expected m sets");
    CanonicalSet meet = CanonicalSet::full(f.top());
    for (size_t i = 0; i < d.terms.size(); ++i) {
        CanonicalSet u(f.top());
        for (const auto& t : d.terms[i]) {
            if (!t.c1.closure().equals(t.c1) || !t.c2.closure().equals(t.c2))
                return fail("separation term at level " + std::to_string(i + 1) + " is not closed");
            u = u.unite(t.c1.diff(t.c2));
        }
        meet = meet.intersect(u.complement());
        if (!meet.equals(d.d[i])) return fail("D_" + std::to_string(i + 1) + " differs from its closure-difference form");
    }
    for (size_t i = 1; i < d.d.size(); ++i)
        if (!d.d[i].subset_of(d.d[i - 1])) return fail("D_" + std::to_string(i + 1) + " not inside D_" + std::to_string(i));
    for (long j = 0; j <= d.m; ++j) {
        CanonicalSet hi = j == 0 ? CanonicalSet::full(f.top()) : d.d[static_cast<size_t>(j - 1)];
        CanonicalSet nx = j == d.m ? CanonicalSet(f.top()) : d.d[static_cast<size_t>(j)];
        if (!g.level_set_eq(Rational(j, d.m)).equals(hi.diff(nx)))
            return fail("G is not the sum of the indicators at level " + std::to_string(j));
    }
    Rational err = 0;
    for (const auto& p : f.parts())
        for (const auto& q : g.parts())
            if (!p.set.intersect(q.set).empty())
                err = std::max(err, rat_abs((p.value - d.shift) * d.scale - q.value));
    if (err != d.sup_error) return fail("sup error " + rat_str(err) + " != claimed " + rat_str(d.sup_error));
    if (err > Rational(1, d.m)) return fail("sup error exceeds 1/m");
    if (d.d_finite) {
        for (const auto& x : probe_points(g, 13, 40))
            if (Rational v = own_variation(g, x); v > d.d_bound)
                return fail("approximant variation " + rat_str(v) + " exceeds " + rat_str(d.d_bound));
    }
    return {};
}

VerifyResult check_ps(const Certificate& c, const PSData& d) {
    const SimpleFn& f = *c.fn;
    if (static_cast<long>(d.k.size()) != d.n) return fail("expected n sets");
    for (size_t j = 0; j < d.k.size(); ++j) {
        const auto& kj = d.k[j];
        if (!std::is_sorted(kj.begin(), kj.end()) || std::adjacent_find(kj.begin(), kj.end()) != kj.end())
            return fail("K_" + std::to_string(j + 1) + " not strictly sorted");
        if (kj.empty() || !(kj.back() == f.top())) return fail("K_" + std::to_string(j + 1) + " misses the top");
        for (const auto& x : kj)
            if (!(x == f.top()) && cplx(x) > j + 1)
                return fail("point " + to_string(x) + " of K_" + std::to_string(j + 1) + " is too complex");
        if (j > 0 && !std::includes(kj.begin(), kj.end(), d.k[j - 1].begin(), d.k[j - 1].end()))
            return fail("K_" + std::to_string(j) + " not inside K_" + std::to_string(j + 1));
    }
    for (const auto& x : d.samples) {
        std::uint64_t cx = cplx(x);
        if (cx == 0 || cx > static_cast<std::uint64_t>(d.n)) continue;
        const auto& kj = d.k[cx - 1];
        if (!std::binary_search(kj.begin(), kj.end(), x)) return fail("point " + to_string(x) + " missing from K_" + std::to_string(cx));
    }
    return {};
}

VerifyResult check_independent(const Certificate& c, const IndependentData& d) {
    const SimpleFn& f = *c.fn;
    if (static_cast<long>(d.stages.size()) != d.m) return fail("expected m stages");
    if (d.witnesses.size() != (std::size_t{1} << d.m)) return fail("expected 2^m witness points");
    for (size_t i = 1; i < d.stages.size(); ++i)
        if (d.stages[i] <= d.stages[i - 1]) return fail("stages not increasing");
    for (size_t e = 0; e < d.witnesses.size(); ++e) {
        const Ordinal& x = d.witnesses[e];
        for (long i = 0; i < d.m; ++i) {
            Rational v = own_stage(f, d.stages[static_cast<size_t>(i)], x);
            bool in_a = (e >> i) & 1;
            if (in_a ? !(v <= d.a2) : !(v >= d.b2))
                return fail("pattern " + std::to_string(e) + " fails at stage " + std::to_string(d.stages[static_cast<size_t>(i)]) +
                            ": value " + rat_str(v) + " at " + to_string(x));
        }
    }
    if (!d.pairs.empty()) {
        for (size_t i = 0; i < d.pairs.size(); ++i)
            if (!d.pairs[i].first.intersect(d.pairs[i].second).empty()) return fail("A_i and B_i meet");
        for (size_t e = 0; e < d.witnesses.size(); ++e) {
            CanonicalSet s = CanonicalSet::full(f.top());
            for (long i = 0; i < d.m; ++i) s = s.intersect((e >> i) & 1 ? d.pairs[static_cast<size_t>(i)].first : d.pairs[static_cast<size_t>(i)].second);
            if (s.empty()) return fail("pattern " + std::to_string(e) + " has empty intersection");
        }
    }
    return {};
}

VerifyResult check_beta(const Certificate& c, const BetaTraceData& d) {
    const SimpleFn& f = *c.fn;
    if (d.claim == "family_finite") {
        for (const auto& [n, t] : d.blocks) {
            const Block* blk = nullptr;
            for (const auto& b : f.family()->blocks)
                if (b.index == n) blk = &b;
            if (!blk) return fail("no block " + std::to_string(n));
            if (auto r = replay(*blk->local, t); !r.ok) return fail("block " + std::to_string(n) + ": " + r.detail);
            if (t.terminal != Terminal::EmptyAt || !t.at.is_finite()) return fail("block trace not finite");
        }
        return {};
    }
    if (auto r = replay(f, d.trace); !r.ok) return r;
    if (d.claim == "k1_empty") {
        if (d.trace.stages.size() < 2 || !d.trace.stages[1].set.empty()) return fail("K_1 is not empty");
        auto g = f.gaps();
        if (!g.empty() && d.delta != g.front()) return fail("delta is not the least gap");
    } else if (d.claim == "k1_nonempty") {
        if (d.trace.stages.size() < 2 || d.trace.stages[1].set.empty()) return fail("K_1 is empty");
    } else if (d.claim == "empty_at") {
        if (d.trace.terminal != Terminal::EmptyAt) return fail("trace does not terminate");
    }
    return {};
}

Address random_address(const StructFn& f, std::mt19937_64& rng) {
    Address a;
    const StructNode* n = f.root.get();
    while (n->kind != StructNode::Kind::Leaf && a.size() < 16) {
        long nk = static_cast<long>(n->children.size());
        if (n->kind == StructNode::Kind::Limit && rng() % 4 == 0) break;
        long extra = n->kind == StructNode::Kind::Limit && n->tail ? 6 : 0;
        if (nk + extra == 0) break;
        long idx = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(nk + extra));
        a.push_back(idx);
        n = idx <= nk ? n->children[static_cast<size_t>(idx - 1)].get() : n->tail->tmpl.get();
    }
    if (n->kind == StructNode::Kind::Sum) return random_address(f, rng);
    return a;
}

VerifyResult check_family(const FamilyApproxData& d) {
    Rational top = 0;
    std::mt19937_64 rng(17);
    for (const auto& e : d.entries) {
        if (e.error_bound != Rational(1, e.k + e.m)) return fail("error bound is not 1/(k+m)");
        if (e.sup_error > e.error_bound) return fail("sup error above 1/(k+m)");
        top = std::max(top, e.witness_bound);
        StructFn blk = prop53a_block(e.n, d.conv);
        StructFn tr = truncate(blk, e.k);
        SimpleFn flat = flatten_blocks(tr);
        for (int s = 0; s < 60; ++s) {
            Address a = random_address(blk, rng);
            Rational diff = rat_abs(struct_eval(blk, a) - struct_eval(tr, a));
            if (diff > e.sup_error)
                return fail("block " + std::to_string(e.n) + " k=" + std::to_string(e.k) + ": |F - A| = " + rat_str(diff) +
                            " at " + format_address(a) + " exceeds " + rat_str(e.sup_error));
        }
        for (const auto& x : probe_points(flat, 19 + static_cast<std::uint64_t>(e.n), 20))
            if (Rational v = own_variation(flat, x); v > e.witness_bound)
                return fail("block " + std::to_string(e.n) + " k=" + std::to_string(e.k) + ": variation " + rat_str(v) +
                            " exceeds " + rat_str(e.witness_bound));
    }
    if (top != d.uniform_bound) return fail("uniform bound is not the max of the entries");
    return {};
}

}  // namespace

VerifyResult verify(const Certificate& c) {
    return std::visit(
        [&](const auto& d) -> VerifyResult {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, WitnessUpperData>) return check_witness(c, d);
            else if constexpr (std::is_same_v<T, ChainLowerData>) return check_chain(c, d);
            else if constexpr (std::is_same_v<T, SeparationData>) return check_separation(c, d);
            else if constexpr (std::is_same_v<T, ApproximantData>) return check_approximant(c, d);
            else if constexpr (std::is_same_v<T, PSData>) return check_ps(c, d);
            else if constexpr (std::is_same_v<T, IndependentData>) return check_independent(c, d);
            else if constexpr (std::is_same_v<T, BetaTraceData>) return check_beta(c, d);
            else return check_family(d);
        },
        c.data);
}

}  // namespace ordlab
