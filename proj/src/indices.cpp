#include "ordlab/indices.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <limits>

#include "ordlab/sampling.hpp"

namespace ordlab {

namespace {

struct SegShift {
    size_t cell;
    size_t seg;
    std::uint64_t d;
    bool operator==(const SegShift&) const = default;
};

// Stages that differ only by finite increments of rank thresholds.
std::optional<std::vector<SegShift>> shift_between(const CanonicalSet& a, const CanonicalSet& b) {
    if (a.cells().size() != b.cells().size()) return std::nullopt;
    std::vector<SegShift> out;
    for (size_t i = 0; i < a.cells().size(); ++i) {
        const Cell& ca = a.cells()[i];
        const Cell& cb = b.cells()[i];
        if (!(ca.lo == cb.lo) || !(ca.hi == cb.hi)) return std::nullopt;
        const auto& sa = ca.ranks.segs();
        const auto& sb = cb.ranks.segs();
        if (sa.size() != sb.size()) return std::nullopt;
        for (size_t j = 0; j < sa.size(); ++j) {
            if (sa[j].hi != sb[j].hi || sa[j].parity != sb[j].parity) return std::nullopt;
            if (sa[j].lo == sb[j].lo) continue;
            if (!(sa[j].lo.limit_part() == sb[j].lo.limit_part())) return std::nullopt;
            std::uint64_t fa = sa[j].lo.finite_part(), fb = sb[j].lo.finite_part();
            if (fb <= fa) return std::nullopt;
            out.push_back(SegShift{i, j, fb - fa});
        }
    }
    if (out.empty()) return std::nullopt;
    return out;
}

CanonicalSet apply_shift(const CanonicalSet& k, const std::vector<SegShift>& sh, std::uint64_t t) {
    std::vector<Cell> cells = k.cells();
    for (const auto& s : sh) {
        std::vector<RankSeg> segs = cells[s.cell].ranks.segs();
        segs[s.seg].lo = segs[s.seg].lo + Ordinal(s.d * t);
        cells[s.cell].ranks = RankSet::from_segs(std::move(segs));
    }
    return CanonicalSet(k.top(), std::move(cells));
}

CanonicalSet limit_of(const CanonicalSet& k, const std::vector<SegShift>& sh) {
    std::vector<Cell> cells = k.cells();
    for (const auto& s : sh) {
        std::vector<RankSeg> segs = cells[s.cell].ranks.segs();
        segs[s.seg].lo = segs[s.seg].lo.limit_part() + Ordinal::omega();
        if (segs[s.seg].hi && !(segs[s.seg].lo < *segs[s.seg].hi)) segs.erase(segs.begin() + static_cast<long>(s.seg));
        cells[s.cell].ranks = RankSet::from_segs(std::move(segs));
    }
    return CanonicalSet(k.top(), std::move(cells));
}

// Compares the extrapolated limit with the pattern's finite stages on sampled points.
bool limit_oracle(const CanonicalSet& k, const std::vector<SegShift>& sh, const CanonicalSet& lim,
                  const RunOptions& opt) {
    if (!lim.subset_of(k)) return false;
    std::mt19937_64 rng(opt.seed);
    auto pts = sample_points(k.top(), k.cells(), rng, opt.oracle_samples);
    for (const auto& c : k.cells())
        if (auto m = cell_min(c)) pts.push_back(*m);
    if (auto m = lim.min_elem()) pts.push_back(*m);
    for (const auto& x : pts) {
        std::uint64_t horizon = rank_of(x).finite_part() + 3;
        bool all = true;
        for (std::uint64_t t = 0; t <= horizon && all; ++t) all = apply_shift(k, sh, t).member(x);
        if (all != lim.member(x)) return false;
    }
    return true;
}

}  // namespace

const char* terminal_name(Terminal t) {
    switch (t) {
        case Terminal::EmptyAt: return "EmptyAt";
        case Terminal::BudgetExceeded: return "BudgetExceeded";
        case Terminal::ChainEnd: return "ChainEnd";
    }
    return "?";
}

std::string spec_string(const TraceSpec& s) {
    switch (s.kind) {
        case TraceKind::Beta: return "beta(delta=" + rat_str(s.delta) + ")";
        case TraceKind::Alpha: return "alpha(a=" + rat_str(s.a) + ", b=" + rat_str(s.b) + ")";
        case TraceKind::Gen: {
            std::string out = "gen(";
            for (size_t i = 0; i < s.deltas.size(); ++i) out += (i ? ", " : "") + rat_str(s.deltas[i]);
            return out + ")";
        }
    }
    return "?";
}

std::optional<Ordinal> IndexTrace::last_nonempty() const {
    std::optional<Ordinal> r;
    for (const auto& s : stages)
        if (!s.set.empty()) r = s.index;
    return r;
}

const CanonicalSet* IndexTrace::stage_set(const Ordinal& idx) const {
    for (const auto& s : stages)
        if (s.index == idx) return &s.set;
    return nullptr;
}

CanonicalSet osc_step(const SimpleFn& f, const CanonicalSet& k, const Rational& delta) {
    std::vector<std::pair<Rational, CanonicalSet>> cl;
    for (const auto& p : f.parts()) {
        CanonicalSet t = k.intersect(p.set);
        if (!t.empty()) cl.emplace_back(p.value, t.closure());
    }
    CanonicalSet out(k.top());
    for (size_t i = 0; i < cl.size(); ++i)
        for (size_t j = i + 1; j < cl.size(); ++j)
            if (rat_abs(cl[j].first - cl[i].first) >= delta) out = out.unite(cl[i].second.intersect(cl[j].second));
    return out;
}

CanonicalSet alpha_step(const SimpleFn& f, const CanonicalSet& k, const Rational& a, const Rational& b) {
    CanonicalSet lo = k.intersect(f.level_set_le(a)).closure();
    CanonicalSet hi = k.intersect(f.level_set_ge(b)).closure();
    return lo.intersect(hi);
}

IndexTrace index_run(const SimpleFn& f, const TraceSpec& spec, const RunOptions& opt) {
    switch (spec.kind) {
        case TraceKind::Beta:
            if (spec.delta <= 0) throw Error(ErrorCode::BadParams, "delta must be positive");
            break;
        case TraceKind::Alpha:
            if (!(spec.a < spec.b)) throw Error(ErrorCode::BadParams, "alpha needs a < b");
            break;
        case TraceKind::Gen:
            for (const auto& d : spec.deltas)
                if (d <= 0) throw Error(ErrorCode::BadParams, "chain deltas must be positive");
            break;
    }
    if (kind_of(opt.budget) != PointKind::Limit) throw Error(ErrorCode::BadParams, "budget must be a limit ordinal");

    IndexTrace tr;
    tr.spec = spec;
    tr.stages.push_back(Stage{Ordinal(), CanonicalSet::full(f.top()), false});
    Ordinal last_limit;
    size_t since_limit = 0;  // index into stages of the most recent limit stage
    unsigned steps = 0;
    std::uint64_t gen_pos = 0;

    auto step = [&](const CanonicalSet& k) {
        switch (spec.kind) {
            case TraceKind::Beta: return osc_step(f, k, spec.delta);
            case TraceKind::Alpha: return alpha_step(f, k, spec.a, spec.b);
            case TraceKind::Gen: return osc_step(f, k, spec.deltas[gen_pos]);
        }
        return CanonicalSet(k.top());
    };

    while (true) {
        const Stage& cur = tr.stages.back();
        if (spec.kind == TraceKind::Gen && gen_pos >= spec.deltas.size()) {
            tr.terminal = Terminal::ChainEnd;
            tr.at = cur.index;
            return tr;
        }
        Ordinal next = cur.index.succ();
        if (opt.budget <= next || steps >= opt.max_finite_steps) {
            tr.terminal = Terminal::BudgetExceeded;
            tr.at = next;
            return tr;
        }
        CanonicalSet k = step(cur.set);
        ++gen_pos;
        ++steps;
        tr.stages.push_back(Stage{next, k, false});
        if (k.empty()) {
            tr.terminal = Terminal::EmptyAt;
            tr.at = next;
            return tr;
        }
        if (spec.kind == TraceKind::Gen) continue;

        size_t n = tr.stages.size();
        if (n - since_limit < 4) continue;
        auto s1 = shift_between(tr.stages[n - 4].set, tr.stages[n - 3].set);
        if (!s1) continue;
        auto s2 = shift_between(tr.stages[n - 3].set, tr.stages[n - 2].set);
        auto s3 = shift_between(tr.stages[n - 2].set, tr.stages[n - 1].set);
        if (!s2 || !s3 || !(*s1 == *s2) || !(*s2 == *s3)) continue;
        CanonicalSet lim = limit_of(k, *s3);
        // an empty extrapolated limit means the pattern runs out at a finite stage
        if (lim.empty()) continue;
        Ordinal lim_idx = last_limit + Ordinal::omega();
        if (opt.budget <= lim_idx || !limit_oracle(k, *s3, lim, opt)) {
            tr.terminal = Terminal::BudgetExceeded;
            tr.at = lim_idx;
            return tr;
        }
        tr.stages.push_back(Stage{lim_idx, lim, true});
        last_limit = lim_idx;
        since_limit = tr.stages.size() - 1;
        steps = 0;
    }
}

BetaSup beta_sup(const SimpleFn& f, const RunOptions& opt) {
    std::vector<Rational> gaps = f.gaps();
    if (gaps.empty()) gaps.push_back(1);
    BetaSup best;
    bool first = true;
    for (const auto& d : gaps) {
        IndexTrace t = index_run(f, TraceSpec::beta(d), opt);
        bool lb = t.terminal == Terminal::BudgetExceeded;
        if (first || best.value < t.at || (lb && !best.lower_bound_only && !(t.at < best.value))) {
            best.value = t.at;
            best.delta = d;
            best.trace = t;
            best.lower_bound_only = lb;
            first = false;
        }
        if (lb) best.lower_bound_only = true;
    }
    return best;
}

ChainSearch chain_search(const SimpleFn& f, const RunOptions& opt) {
    ChainSearch out;
    std::vector<Rational> gaps = f.gaps();
    for (const auto& d : gaps) {
        IndexTrace t = index_run(f, TraceSpec::beta(d), opt);
        if (t.terminal != Terminal::EmptyAt || !t.at.is_finite()) {
            out.diverges = true;
            out.diverging_delta = d;
            return out;
        }
        long m = static_cast<long>(t.at.as_nat()) - 1;
        Rational md = d * m;
        if (md > out.best_m_delta) {
            out.best_m_delta = md;
            out.best_m = m;
            out.best_delta = d;
        }
    }
    std::map<std::string, std::pair<Rational, std::vector<Rational>>> memo;
    std::function<std::pair<Rational, std::vector<Rational>>(const CanonicalSet&)> best =
        [&](const CanonicalSet& k) -> std::pair<Rational, std::vector<Rational>> {
        std::string key = to_string(k);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::pair<Rational, std::vector<Rational>> r{0, {}};
        for (const auto& d : gaps) {
            CanonicalSet nk = osc_step(f, k, d);
            if (nk.empty()) continue;
            auto sub = best(nk);
            Rational total = d + sub.first;
            if (total > r.first) {
                r.first = total;
                r.second = {d};
                r.second.insert(r.second.end(), sub.second.begin(), sub.second.end());
            }
        }
        memo.emplace(key, r);
        return r;
    };
    auto r = best(CanonicalSet::full(f.top()));
    out.best_sum = r.first;
    out.chain = r.second;
    return out;
}

INorms i_norms(const SimpleFn& f, const RunOptions& opt) {
    INorms out;
    Rational sup = f.sup_norm();
    if (f.family() && f.family()->rule == "prop53b") {
        out.i_prime.diverges = out.i_value.diverges = true;
        out.i_prime.closed_form = out.i_value.closed_form = "block n contributes n (n^2 steps at delta 1/n)";
        for (const auto& b : f.family()->blocks) {
            ChainSearch cs = chain_search(*b.local, opt);
            out.i_prime.family[b.index] = cs.best_m_delta;
            out.i_value.family[b.index] = cs.best_sum;
        }
        return out;
    }
    ChainSearch cs = chain_search(f, opt);
    if (cs.diverges) {
        out.i_prime.diverges = out.i_value.diverges = true;
        std::string form = "K_m(F, " + rat_str(cs.diverging_delta) + ") nonempty for every finite m: m -> m*" +
                           rat_str(cs.diverging_delta);
        out.i_prime.closed_form = out.i_value.closed_form = form;
        for (long m = 1; m <= 8; ++m) {
            out.i_prime.family[m] = cs.diverging_delta * m;
            out.i_value.family[m] = cs.diverging_delta * m;
        }
        return out;
    }
    out.i_prime.value = std::max(sup, cs.best_m_delta);
    out.i_prime.chain.assign(static_cast<size_t>(cs.best_m), cs.best_delta);
    out.i_value.value = std::max(sup, cs.best_sum);
    out.i_value.chain = cs.chain;
    return out;
}

AtomTable atom_table(const std::vector<StepFn>& seq) {
    AtomTable t;
    if (seq.empty()) return t;
    std::vector<Ordinal> bps;
    for (const auto& s : seq) {
        if (!(s.top() == seq.front().top())) throw Error(ErrorCode::SpaceMismatch, "step functions on different spaces");
        for (const auto& p : s.pieces()) bps.push_back(p.lo);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    for (size_t i = 0; i < bps.size(); ++i) {
        Ordinal hi = seq.front().top();
        if (i + 1 < bps.size()) {
            std::vector<Ordinal::Term> ts = bps[i + 1].terms();
            if (ts.back().coeff == 1) ts.pop_back();
            else ts.back().coeff -= 1;
            hi = Ordinal::from_terms(std::move(ts));
        }
        t.atoms.emplace_back(bps[i], hi);
        std::vector<Rational> v;
        for (const auto& s : seq) v.push_back(s.eval(bps[i]));
        t.values.push_back(std::move(v));
    }
    return t;
}

namespace {

struct ScaledTable {
    std::vector<std::vector<long long>> vecs;  // unique value vectors
    std::vector<size_t> first_atom;            // an atom realizing each vector
    long long eps = 0, cap = 0;
    Rational scale = 1;
};

ScaledTable scale_table(const AtomTable& t, const Rational& eps, const Rational& c) {
    BigInt l = 1;
    auto upd = [&](const Rational& q) { l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(q)); };
    upd(eps);
    upd(c);
    for (const auto& v : t.values)
        for (const auto& q : v) upd(q);
    ScaledTable st;
    st.scale = Rational(l);
    const BigInt limit = BigInt(1) << 40;
    auto to_ll = [&](const Rational& q) {
        Rational s = q * st.scale;
        BigInt n = boost::multiprecision::numerator(s);
        if (n > limit || n < -limit) throw Error(ErrorCode::RangeError, "values too large for the enumeration kernel");
        return static_cast<long long>(n);
    };
    st.eps = to_ll(eps);
    st.cap = to_ll(c);
    std::map<std::vector<long long>, size_t> seen;
    for (size_t i = 0; i < t.values.size(); ++i) {
        std::vector<long long> v;
        for (const auto& q : t.values[i]) v.push_back(to_ll(q));
        if (seen.emplace(v, st.vecs.size()).second) {
            st.vecs.push_back(std::move(v));
            st.first_atom.push_back(i);
        }
    }
    return st;
}

long long filtered_sum(const std::vector<long long>& v, std::uint32_t mask, long long eps) {
    long long sum = 0;
    int prev = -1;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (!(mask >> i & 1u)) continue;
        if (prev >= 0) {
            long long d = v[static_cast<size_t>(i)] - v[static_cast<size_t>(prev)];
            if (d < 0) d = -d;
            if (d >= eps) sum += d;
        }
        prev = i;
    }
    return sum;
}

void check_sequence(const std::vector<StepFn>& seq) {
    if (seq.size() > 16) throw Error(ErrorCode::TooLong, std::to_string(seq.size()) + " step functions (max 16)");
    if (seq.empty()) throw Error(ErrorCode::BadParams, "empty sequence");
    for (const auto& p : seq.front().pieces())
        if (p.value != 0) throw Error(ErrorCode::BadParams, "first step function must vanish identically");
}

CriterionResult finish(const std::vector<StepFn>& seq, const AtomTable& t, const ScaledTable& st, std::uint32_t fail_mask,
                       long long worst) {
    CriterionResult r;
    r.atoms = t.atoms.size();
    r.subsequences = std::uint64_t(1) << seq.size();
    r.worst_sum = Rational(worst) / st.scale;
    if (fail_mask == std::numeric_limits<std::uint32_t>::max()) return r;
    r.pass = false;
    for (int i = 0; i < static_cast<int>(seq.size()); ++i)
        if (fail_mask >> i & 1u) r.subsequence.push_back(i);
    for (size_t k = 0; k < st.vecs.size(); ++k)
        if (filtered_sum(st.vecs[k], fail_mask, st.eps) > st.cap) {
            r.atom_lo = t.atoms[st.first_atom[k]].first;
            r.atom_hi = t.atoms[st.first_atom[k]].second;
            break;
        }
    return r;
}

}  // namespace

CriterionResult b14_criterion_check(const std::vector<StepFn>& seq, const Rational& eps, const Rational& c) {
    check_sequence(seq);
    AtomTable t = atom_table(seq);
    ScaledTable st = scale_table(t, eps, c);
    const std::uint32_t n_masks = std::uint32_t(1) << seq.size();
    std::uint32_t fail = std::numeric_limits<std::uint32_t>::max();
    long long worst = 0;
    const long nv = static_cast<long>(st.vecs.size());
#pragma omp parallel for schedule(dynamic, 64) reduction(min : fail) reduction(max : worst)
    for (long m = 0; m < static_cast<long>(n_masks); ++m) {
        auto mask = static_cast<std::uint32_t>(m);
        for (long k = 0; k < nv; ++k) {
            long long s = filtered_sum(st.vecs[static_cast<size_t>(k)], mask, st.eps);
            if (s > worst) worst = s;
            if (s > st.cap && mask < fail) fail = mask;
        }
    }
    return finish(seq, t, st, fail, worst);
}

CriterionResult b14_criterion_check_serial(const std::vector<StepFn>& seq, const Rational& eps, const Rational& c) {
    check_sequence(seq);
    AtomTable t = atom_table(seq);
    ScaledTable st = scale_table(t, eps, c);
    const std::uint32_t n_masks = std::uint32_t(1) << seq.size();
    std::uint32_t fail = std::numeric_limits<std::uint32_t>::max();
    long long worst = 0;
    for (std::uint32_t mask = 0; mask < n_masks; ++mask)
        for (const auto& v : st.vecs) {
            long long s = filtered_sum(v, mask, st.eps);
            worst = std::max(worst, s);
            if (s > st.cap) fail = std::min(fail, mask);
        }
    return finish(seq, t, st, fail, worst);
}

Prop85Result prop85_query(Prop85Mode mode, long m, const Rational& eps) {
    if (m < 1) throw Error(ErrorCode::BadParams, "m must be >= 1");
    Prop85Result r;
    if (mode == Prop85Mode::Chain) {
        Rational s = 0;
        for (long i = 1; i <= m; ++i) s += Rational(2, i);
        r.value = s;
        r.detail = "sum_{i=1}^{" + std::to_string(m) + "} 2/i";
        return r;
    }
    if (eps <= 0 || eps >= 2) throw Error(ErrorCode::BadParams, "need 0 < eps < 2");
    Rational q = Rational(2) / eps;
    BigInt fl = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
    r.nonempty = BigInt(m) <= fl;
    r.value = Rational(fl);
    if (mode == Prop85Mode::Nonempty) {
        r.detail = "r = floor(2/eps) = " + fl.str();
        return r;
    }
    Rational me = eps * m;
    r.holds = !r.nonempty || me <= 2;
    r.detail = r.nonempty ? "m*eps = " + rat_str(me) + " <= 2" : "K_m empty, nothing to check";
    return r;
}

std::string to_string(const IndexTrace& t) {
    std::string out = spec_string(t.spec) + "\n";
    for (const auto& s : t.stages)
        out += "  K_" + to_string(s.index) + (s.limit ? " (limit)" : "") + " = " + to_string(s.set) + "\n";
    out += std::string("  terminal ") + terminal_name(t.terminal) + "(" + to_string(t.at) + ")\n";
    return out;
}

}  // namespace ordlab
