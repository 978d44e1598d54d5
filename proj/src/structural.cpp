#include "ordlab/structural.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace ordlab {

namespace {

using Kind = StructNode::Kind;

struct Ctx {
    Rational scale = 1;
    long label = 1;
    bool far = false;  // label beyond every truncation and every threshold
    long trunc = -1;
};

Ordinal lead_exp(const Ordinal& x) { return x.is_zero() ? Ordinal() : x.terms().front().exp; }

Ordinal pred(const Ordinal& x) {
    std::vector<Ordinal::Term> t = x.terms();
    if (t.empty() || !t.back().exp.is_zero()) throw Error(ErrorCode::Internal, "no predecessor of " + to_string(x));
    if (t.back().coeff == 1) t.pop_back();
    else t.back().coeff -= 1;
    return Ordinal::from_terms(std::move(t));
}

// a * n for natural n
Ordinal mul_nat(const Ordinal& a, long n) {
    if (n <= 0 || a.is_zero()) return Ordinal();
    const auto& t = a.terms().front();
    if (n == 1) return a;
    return Ordinal::omega_pow(t.exp, t.coeff * static_cast<std::uint64_t>(n - 1)) + a;
}

// copies of the template accumulate to w^(e+1)
Ordinal tail_span(const Ordinal& tmpl_ot) { return Ordinal::omega_pow(lead_exp(tmpl_ot).succ()); }

Rational factor(const Scaling& s, const Ctx& c, long j) {
    if (!s.reciprocal) return 1;
    long label = s.from_label ? c.label : 0;
    if (s.from_label && c.far) return 0;
    if (c.trunc >= 0 && label + j > c.trunc) return 0;
    return Rational(s.p, s.q * j + s.r + label);
}

Ctx copy_ctx(const TailRule& t, const Ctx& c, long j) {
    Ctx out = c;
    if (t.scaling.reciprocal) {
        out.scale = c.scale * factor(t.scaling, c, j);
        out.label = 1;
        out.far = false;
    } else if (t.carry) {
        out.label = c.label + j - 1;
    }
    return out;
}

std::pair<Rational, Rational> hull(std::pair<Rational, Rational> a, const std::pair<Rational, Rational>& b) {
    return {std::min(a.first, b.first), std::max(a.second, b.second)};
}

std::pair<Rational, Rational> range_unit(const StructNode& n, const Ctx& c);

using RangeCache = std::map<std::tuple<const StructNode*, long, bool, long>, std::pair<Rational, Rational>>;
thread_local RangeCache* g_cache = nullptr;

// one cache per public call, so node addresses cannot outlive their entries
struct CacheScope {
    RangeCache own;
    bool installed = false;
    CacheScope() {
        if (!g_cache) {
            g_cache = &own;
            installed = true;
        }
    }
    ~CacheScope() {
        if (installed) g_cache = nullptr;
    }
};

// scales are nonnegative, so the range scales linearly; cache the unit-scale range
std::pair<Rational, Rational> range_of(const StructNode& n, const Ctx& c) {
    if (c.scale == 0) return {Rational(0), Rational(0)};
    CacheScope scope;
    RangeCache& cache = *g_cache;
    auto key = std::make_tuple(&n, c.label, c.far, c.trunc);
    auto it = cache.find(key);
    if (it == cache.end()) {
        Ctx unit = c;
        unit.scale = 1;
        it = cache.emplace(key, range_unit(n, unit)).first;
    }
    return {it->second.first * c.scale, it->second.second * c.scale};
}

std::pair<Rational, Rational> range_unit(const StructNode& n, const Ctx& c) {
    std::pair<Rational, Rational> r{n.value * c.scale, n.value * c.scale};
    if (n.kind == Kind::Sum && !n.children.empty()) r = range_of(*n.children.front(), c);
    for (const auto& ch : n.children) r = hull(r, range_of(*ch, c));
    if (n.tail) {
        const TailRule& t = *n.tail;
        if (t.scaling.reciprocal) {
            // decreasing positive factors: the extremes sit at copy 1, with 0 adherent
            Ctx c1 = copy_ctx(t, c, 1);
            r = hull(r, range_of(*t.tmpl, c1));
            r = hull(r, {Rational(0), Rational(0)});
        } else {
            r = hull(r, range_of(*t.tmpl, copy_ctx(t, c, 1)));
            if (t.carry) {
                Ctx far = c;
                far.far = true;
                r = hull(r, range_of(*t.tmpl, far));
            }
        }
    }
    return r;
}

Rational abs_max(const std::pair<Rational, Rational>& r) { return std::max(rat_abs(r.first), rat_abs(r.second)); }

// sup over points of |F - F_k|, where F is evaluated with c.trunc and F_k with k
Rational trunc_err(const StructNode& n, const Ctx& c, long k) {
    Rational e = 0;
    for (const auto& ch : n.children) e = std::max(e, trunc_err(*ch, c, k));
    if (!n.tail) return e;
    const TailRule& t = *n.tail;
    if (t.scaling.reciprocal) {
        long label = t.scaling.from_label ? c.label : 0;
        Ctx unit = c;
        unit.scale = 1;
        unit.label = 1;
        unit.far = false;
        Rational tmax = abs_max(range_of(*t.tmpl, unit));
        long first_drop = std::max<long>(1, k - label + 1);
        e = std::max(e, c.scale * factor(t.scaling, c, first_drop) * tmax);
        if (first_drop > 1) e = std::max(e, trunc_err(*t.tmpl, copy_ctx(t, c, 1), k));
        return e;
    }
    if (!t.carry) return std::max(e, trunc_err(*t.tmpl, copy_ctx(t, c, 1), k));
    // labels beyond k + 1 drop everything and only shrink
    long last = std::max<long>(1, k + 2 - c.label);
    for (long j = 1; j <= last; ++j) e = std::max(e, trunc_err(*t.tmpl, copy_ctx(t, c, j), k));
    return e;
}

Rational mat_sup(const StructNode& n, const Ctx& c, long copies) {
    Rational e = rat_abs(n.value * c.scale);
    for (const auto& ch : n.children) e = std::max(e, mat_sup(*ch, c, copies));
    if (!n.tail) return e;
    const TailRule& t = *n.tail;
    long upto = t.scaling.reciprocal ? copies : (t.carry ? 2 : 1);
    for (long j = 1; j <= upto; ++j) e = std::max(e, mat_sup(*t.tmpl, copy_ctx(t, c, j), copies));
    return e;
}

bool no_copies(const ExpNode& e) {
    if (!e.copies.empty()) return false;
    for (const auto& k : e.kids)
        if (!no_copies(k)) return false;
    return !e.rest || no_copies(*e.rest);
}

constexpr long kMaxCopies = 4096;

ExpNode exp_node(const StructNode& n, const Ctx& c, const Rational& thr) {
    ExpNode e;
    e.kind = n.kind;
    e.value = n.value * c.scale;
    e.lo = e.hi = e.value;
    bool first = n.kind == Kind::Sum;
    Ordinal pos;
    for (const auto& ch : n.children) {
        e.kids.push_back(exp_node(*ch, c, thr));
        const ExpNode& k = e.kids.back();
        if (first) {
            e.lo = k.lo;
            e.hi = k.hi;
            first = false;
        }
        e.lo = std::min(e.lo, k.lo);
        e.hi = std::max(e.hi, k.hi);
        pos = pos + k.ot;
    }
    if (n.kind == Kind::Leaf) {
        e.ot = Ordinal(1);
        return e;
    }
    if (n.kind == Kind::Sum) {
        e.ot = pos;
        return e;
    }
    if (n.tail) {
        const TailRule& t = *n.tail;
        e.tmpl_ot = order_type(*t.tmpl);
        if (t.scaling.reciprocal) {
            e.block_tail = true;
            Ctx unit = c;
            unit.scale = 1;
            unit.label = 1;
            unit.far = false;
            auto tr = range_of(*t.tmpl, unit);
            Rational width = tr.second - tr.first;
            for (long j = 1;; ++j) {
                Rational f = factor(t.scaling, c, j);
                Rational s = c.scale * f;
                if (s == 0) break;
                if (thr > 0 && rat_abs(s) * width < thr) break;
                if (thr == 0 && c.trunc < 0)
                    throw Error(ErrorCode::InfiniteRange, "untruncated reciprocal tail has infinitely many values");
                if (j > kMaxCopies) throw Error(ErrorCode::BudgetExceeded, "too many significant tail copies");
                e.copies.push_back(exp_node(*t.tmpl, copy_ctx(t, c, j), thr));
            }
            Ctx zero = c;
            zero.scale = 0;
            zero.label = 1;
            zero.far = false;
            e.rest = std::make_shared<ExpNode>(exp_node(*t.tmpl, zero, thr));
        } else if (t.carry && !c.far) {
            for (long j = 1;; ++j) {
                if (j > kMaxCopies) throw Error(ErrorCode::BudgetExceeded, "too many significant tail copies");
                ExpNode cp = exp_node(*t.tmpl, copy_ctx(t, c, j), thr);
                if (no_copies(cp)) break;
                e.copies.push_back(std::move(cp));
            }
            Ctx far = c;
            far.far = true;
            e.rest = std::make_shared<ExpNode>(exp_node(*t.tmpl, far, thr));
        } else {
            e.rest = std::make_shared<ExpNode>(exp_node(*t.tmpl, c, thr));
        }
        for (const auto& cp : e.copies) {
            e.lo = std::min(e.lo, cp.lo);
            e.hi = std::max(e.hi, cp.hi);
        }
        e.lo = std::min(e.lo, e.rest->lo);
        e.hi = std::max(e.hi, e.rest->hi);
        pos = pos + tail_span(e.tmpl_ot);
    }
    e.ot = pos.succ();
    return e;
}

Ctx root_ctx(const StructFn& f) {
    Ctx c;
    c.trunc = f.truncation;
    return c;
}

}  // namespace

NodePtr make_leaf(const Rational& v) {
    auto n = std::make_shared<StructNode>();
    n->kind = Kind::Leaf;
    n->value = v;
    return n;
}

NodePtr make_sum(std::vector<NodePtr> children) {
    if (children.empty()) throw Error(ErrorCode::BadParams, "empty sum");
    auto n = std::make_shared<StructNode>();
    n->kind = Kind::Sum;
    n->children = std::move(children);
    return n;
}

NodePtr make_limit(std::vector<NodePtr> prefix, std::optional<TailRule> tail, const Rational& limit_value) {
    if (tail) {
        const Scaling& s = tail->scaling;
        if (!tail->tmpl) throw Error(ErrorCode::BadParams, "tail without template");
        if (s.reciprocal && (s.p <= 0 || s.q <= 0 || s.r <= 0))
            throw Error(ErrorCode::BadParams, "reciprocal scaling needs positive p, q, r");
    }
    auto n = std::make_shared<StructNode>();
    n->kind = Kind::Limit;
    n->children = std::move(prefix);
    n->tail = std::move(tail);
    n->value = limit_value;
    return n;
}

StructFn build_type(long n, long m, long base_depth, Convention conv) {
    if (n < 0 || n > 4) throw Error(ErrorCode::BadParams, "type n must lie in 0..4");
    if (m < 1 || base_depth < 1) throw Error(ErrorCode::BadParams, "type needs m >= 1 and k >= 1");
    Parity one = conv == Convention::Even ? Parity::Even : Parity::Odd;
    auto phi = [&](long r) {
        return rank_parity(Ordinal(static_cast<std::uint64_t>(r))) == one ? Rational(1, base_depth) : Rational(0);
    };
    NodePtr block = n > 0 ? build_type(n - 1, m, base_depth, conv).root : nullptr;
    NodePtr cur;
    if (block) {
        TailRule t{block, Scaling{true, 1, 1, m, true}, false};
        cur = make_limit({}, t, phi(0));
    } else {
        cur = make_leaf(phi(0));
    }
    for (long r = 1; r <= base_depth; ++r) {
        TailRule t{cur, Scaling{}, n > 0};
        cur = make_limit({}, t, phi(r));
    }
    std::ostringstream d;
    d << "type(n=" << n << ", m=" << m << ", k=" << base_depth << "; parity=" << convention_name(conv) << ")";
    return StructFn{cur, d.str(), -1};
}

StructFn truncate(const StructFn& f, long k) {
    if (k < 0) throw Error(ErrorCode::BadParams, "truncation level must be >= 0");
    StructFn out = f;
    out.truncation = k;
    out.descriptor = "truncate(" + f.descriptor + ", " + std::to_string(k) + ")";
    return out;
}

Rational struct_eval(const StructFn& f, const Address& a) {
    const StructNode* n = f.root.get();
    Ctx c = root_ctx(f);
    for (size_t i = 0; i < a.size(); ++i) {
        long idx = a[i];
        if (idx < 1 || n->kind == Kind::Leaf) throw Error(ErrorCode::BadAddress, format_address(a));
        long nk = static_cast<long>(n->children.size());
        if (idx <= nk) {
            n = n->children[static_cast<size_t>(idx - 1)].get();
            continue;
        }
        if (n->kind == Kind::Sum || !n->tail) throw Error(ErrorCode::BadAddress, format_address(a));
        c = copy_ctx(*n->tail, c, idx - nk);
        n = n->tail->tmpl.get();
    }
    if (n->kind == Kind::Sum) throw Error(ErrorCode::BadAddress, format_address(a) + " names a sum, not a point");
    return n->value * c.scale;
}

std::string format_address(const Address& a) {
    if (a.empty()) return "/";
    std::string s;
    for (long i : a) s += "/" + std::to_string(i);
    return s;
}

Address parse_address(const std::string& s) {
    Address a;
    if (s.empty() || s[0] != '/') throw Error(ErrorCode::BadAddress, "address must start with '/': " + s);
    size_t i = 1;
    while (i < s.size()) {
        size_t j = s.find('/', i);
        std::string tok = s.substr(i, j == std::string::npos ? std::string::npos : j - i);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::BadAddress, "bad address component in " + s);
        a.push_back(std::stol(tok));
        if (j == std::string::npos) break;
        i = j + 1;
    }
    return a;
}

Ordinal order_type(const StructNode& n) {
    Ordinal pos;
    for (const auto& ch : n.children) pos = pos + order_type(*ch);
    if (n.kind == Kind::Leaf) return Ordinal(1);
    if (n.kind == Kind::Sum) return pos;
    if (n.tail) pos = pos + tail_span(order_type(*n.tail->tmpl));
    return pos.succ();
}

Ordinal struct_top(const StructFn& f) { return pred(order_type(*f.root)); }

Ordinal address_to_ordinal(const StructFn& f, const Address& a) {
    const StructNode* n = f.root.get();
    Ordinal pos;
    for (long idx : a) {
        if (idx < 1 || n->kind == Kind::Leaf) throw Error(ErrorCode::BadAddress, format_address(a));
        long nk = static_cast<long>(n->children.size());
        if (idx <= nk) {
            for (long i = 0; i < idx - 1; ++i) pos = pos + order_type(*n->children[static_cast<size_t>(i)]);
            n = n->children[static_cast<size_t>(idx - 1)].get();
            continue;
        }
        if (n->kind == Kind::Sum || !n->tail) throw Error(ErrorCode::BadAddress, format_address(a));
        for (const auto& ch : n->children) pos = pos + order_type(*ch);
        pos = pos + mul_nat(order_type(*n->tail->tmpl), idx - nk - 1);
        n = n->tail->tmpl.get();
    }
    if (n->kind == Kind::Sum) throw Error(ErrorCode::BadAddress, format_address(a));
    return pos + pred(order_type(*n));
}

std::pair<Rational, Rational> value_range(const StructFn& f) {
    CacheScope scope;
    return range_of(*f.root, root_ctx(f));
}

Rational truncation_error(const StructFn& f, long k) {
    if (f.truncation >= 0 && f.truncation <= k) return 0;
    CacheScope scope;
    return trunc_err(*f.root, root_ctx(f), k);
}

Rational materialized_sup(const StructFn& f, long n) { return mat_sup(*f.root, root_ctx(f), n); }

ExpNode expand(const StructFn& f, const Rational& threshold) {
    if (threshold < 0) throw Error(ErrorCode::BadParams, "negative threshold");
    CacheScope scope;
    return exp_node(*f.root, root_ctx(f), threshold);
}

bool SSet::operator==(const SSet& o) const {
    if (pt != o.pt || kids != o.kids || copies != o.copies) return false;
    if (!rest || !o.rest) return !rest && !o.rest;
    return *rest == *o.rest;
}

SSet sset_full(const ExpNode& e) {
    SSet s;
    s.pt = e.kind != Kind::Sum;
    for (const auto& k : e.kids) s.kids.push_back(sset_full(k));
    for (const auto& k : e.copies) s.copies.push_back(sset_full(k));
    if (e.rest) s.rest = std::make_shared<SSet>(sset_full(*e.rest));
    return s;
}

bool sset_empty(const SSet& s) {
    if (s.pt) return false;
    for (const auto& k : s.kids)
        if (!sset_empty(k)) return false;
    for (const auto& k : s.copies)
        if (!sset_empty(k)) return false;
    return !s.rest || sset_empty(*s.rest);
}

std::optional<std::pair<Rational, Rational>> sset_extrema(const ExpNode& e, const SSet& s) {
    std::optional<std::pair<Rational, Rational>> r;
    auto add = [&](const std::optional<std::pair<Rational, Rational>>& x) {
        if (!x) return;
        r = r ? hull(*r, *x) : *x;
    };
    if (s.pt) add(std::pair{e.value, e.value});
    for (size_t i = 0; i < e.kids.size(); ++i) add(sset_extrema(e.kids[i], s.kids[i]));
    for (size_t i = 0; i < e.copies.size(); ++i) add(sset_extrema(e.copies[i], s.copies[i]));
    if (e.rest) add(sset_extrema(*e.rest, *s.rest));
    return r;
}

SSet struct_osc_step(const ExpNode& e, const SSet& s, const Rational& delta) {
    SSet out;
    for (size_t i = 0; i < e.kids.size(); ++i) out.kids.push_back(struct_osc_step(e.kids[i], s.kids[i], delta));
    for (size_t i = 0; i < e.copies.size(); ++i) out.copies.push_back(struct_osc_step(e.copies[i], s.copies[i], delta));
    if (e.rest) out.rest = std::make_shared<SSet>(struct_osc_step(*e.rest, *s.rest, delta));
    if (s.pt && e.kind == Kind::Limit && e.rest) {
        // only the representative copies accumulate at the limit point
        auto ex = sset_extrema(*e.rest, *s.rest);
        if (ex) {
            Rational osc = std::max(e.value, ex->second) - std::min(e.value, ex->first);
            out.pt = osc >= delta;
        }
    }
    return out;
}

StructTrace struct_index(const StructFn& f, const TraceSpec& spec, unsigned max_steps) {
    if (spec.kind == TraceKind::Alpha) throw Error(ErrorCode::BadParams, "structural traces support beta and gen");
    Rational dmin = spec.delta;
    if (spec.kind == TraceKind::Gen) {
        if (spec.deltas.empty()) throw Error(ErrorCode::BadParams, "gen needs at least one delta");
        dmin = *std::min_element(spec.deltas.begin(), spec.deltas.end());
    }
    if (dmin <= 0) throw Error(ErrorCode::BadParams, "deltas must be positive");
    StructTrace t;
    t.spec = spec;
    t.exp = expand(f, dmin);
    t.stages.push_back(sset_full(t.exp));
    for (unsigned i = 0;; ++i) {
        if (spec.kind == TraceKind::Gen && i >= spec.deltas.size()) {
            t.terminal = Terminal::ChainEnd;
            t.at = static_cast<long>(i);
            return t;
        }
        if (i >= max_steps) {
            t.terminal = Terminal::BudgetExceeded;
            t.at = static_cast<long>(i);
            return t;
        }
        Rational d = spec.kind == TraceKind::Gen ? spec.deltas[i] : spec.delta;
        t.stages.push_back(struct_osc_step(t.exp, t.stages.back(), d));
        if (sset_empty(t.stages.back())) {
            t.terminal = Terminal::EmptyAt;
            t.at = static_cast<long>(i + 1);
            return t;
        }
    }
}

namespace {

void collect_values(const ExpNode& e, std::vector<Rational>& out) {
    if (e.kind != Kind::Sum) out.push_back(e.value);
    for (const auto& k : e.kids) collect_values(k, out);
    for (const auto& k : e.copies) collect_values(k, out);
    if (e.rest) collect_values(*e.rest, out);
}

void sset_key(const SSet& s, std::string& out) {
    out += s.pt ? '1' : '0';
    out += '(';
    for (const auto& k : s.kids) sset_key(k, out);
    out += '|';
    for (const auto& k : s.copies) sset_key(k, out);
    out += '|';
    if (s.rest) sset_key(*s.rest, out);
    out += ')';
}

}  // namespace

StructChain struct_chain_search(const StructFn& f, const Rational& delta_floor) {
    if (delta_floor <= 0) throw Error(ErrorCode::BadParams, "delta floor must be positive");
    ExpNode e = expand(f, delta_floor);
    std::vector<Rational> vals;
    collect_values(e, vals);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<Rational> gaps;
    for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
            if (vals[j] - vals[i] >= delta_floor) gaps.push_back(vals[j] - vals[i]);
    std::sort(gaps.begin(), gaps.end());
    gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());

    std::map<std::string, std::pair<Rational, std::vector<Rational>>> memo;
    std::function<std::pair<Rational, std::vector<Rational>>(const SSet&)> best = [&](const SSet& s) {
        std::string key;
        sset_key(s, key);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::pair<Rational, std::vector<Rational>> r{Rational(0), {}};
        for (const auto& d : gaps) {
            SSet nx = struct_osc_step(e, s, d);
            if (sset_empty(nx)) continue;
            auto sub = best(nx);
            if (sub.first + d > r.first) {
                r.first = sub.first + d;
                r.second = {d};
                r.second.insert(r.second.end(), sub.second.begin(), sub.second.end());
            }
        }
        memo.emplace(std::move(key), r);
        return r;
    };
    auto [sum, chain] = best(sset_full(e));
    return StructChain{sum, chain, delta_floor};
}

namespace {

using LabelMap = std::map<Rational, std::vector<Cell>>;

void walk(const ExpNode& e, const SSet* s, const Ordinal& start, LabelMap& out);

RankSet rank_only(const ExpNode& e, const std::vector<Cell>& cells) {
    Ordinal top = pred(e.ot);
    CanonicalSet set(top, cells);
    Ordinal lead = lead_exp(top);
    if (!lead.is_finite()) throw Error(ErrorCode::Internal, "structural spaces have finite rank");
    RankSet r;
    for (std::uint64_t rho = 0; rho <= lead.finite_part(); ++rho) {
        RankSet layer = RankSet::exactly(Ordinal(rho));
        if (!set.intersect(CanonicalSet(top, {Cell{Ordinal(), e.ot, layer}})).empty()) r = r.unite(layer);
    }
    if (!set.equals(CanonicalSet(top, {Cell{Ordinal(), e.ot, r}})))
        throw Error(ErrorCode::Internal, "tail representative is not rank-definable");
    return r;
}

void walk(const ExpNode& e, const SSet* s, const Ordinal& start, LabelMap& out) {
    auto label = [&](const ExpNode& n, const SSet* ss) -> Rational {
        if (ss) return ss->pt ? 1 : 0;
        return n.value;
    };
    Ordinal pos = start;
    for (size_t i = 0; i < e.kids.size(); ++i) {
        walk(e.kids[i], s ? &s->kids[i] : nullptr, pos, out);
        pos = pos + e.kids[i].ot;
    }
    if (e.kind == Kind::Leaf) {
        out[label(e, s)].push_back(Cell{start, start.succ(), RankSet::all()});
        return;
    }
    if (e.kind == Kind::Sum) return;
    if (e.rest) {
        for (size_t i = 0; i < e.copies.size(); ++i) {
            walk(e.copies[i], s ? &s->copies[i] : nullptr, pos, out);
            pos = pos + e.tmpl_ot;
        }
        LabelMap local;
        walk(*e.rest, s ? s->rest.get() : nullptr, Ordinal(), local);
        Ordinal span = tail_span(e.tmpl_ot);
        for (const auto& [v, cells] : local) {
            RankSet r = rank_only(*e.rest, cells);
            if (!r.empty()) out[v].push_back(Cell{pos, pos + span, r});
        }
        pos = pos + span;
    }
    out[label(e, s)].push_back(Cell{pos, pos.succ(), RankSet::all()});
}

void collect_blocks(const ExpNode& e, const Ordinal& start, std::vector<std::pair<Ordinal, Ordinal>>& out) {
    Ordinal pos = start;
    for (const auto& k : e.kids) {
        collect_blocks(k, pos, out);
        pos = pos + k.ot;
    }
    for (const auto& cp : e.copies) {
        if (e.block_tail) out.emplace_back(pos, pos + pred(e.tmpl_ot));
        collect_blocks(cp, pos, out);
        pos = pos + e.tmpl_ot;
    }
}

SimpleFn localize(const SimpleFn& f, const Ordinal& lo, const Ordinal& hi) {
    Ordinal ltop = ord_sub(lo, hi);
    CanonicalSet win = CanonicalSet::interval(f.top(), lo, hi);
    std::vector<Part> parts;
    for (const auto& p : f.parts()) {
        CanonicalSet in = p.set.intersect(win);
        if (in.empty()) continue;
        std::vector<Cell> cells;
        for (const auto& c : in.cells()) cells.push_back(Cell{ord_sub(lo, c.lo), ord_sub(lo, c.hi), c.ranks});
        parts.push_back(Part{CanonicalSet(ltop, cells), p.value});
    }
    return SimpleFn(ltop, std::move(parts));
}

}  // namespace

SimpleFn flatten(const StructFn& f) {
    ExpNode e = expand(f, 0);
    LabelMap out;
    walk(e, nullptr, Ordinal(), out);
    Ordinal top = pred(e.ot);
    std::vector<Part> parts;
    for (auto& [v, cells] : out) parts.push_back(Part{CanonicalSet(top, std::move(cells)), v});
    return SimpleFn(top, std::move(parts), "flatten(" + f.descriptor + ")");
}

CanonicalSet flatten_set(const StructFn& f, const ExpNode& e, const SSet& s) {
    (void)f;
    LabelMap out;
    walk(e, &s, Ordinal(), out);
    return CanonicalSet(pred(e.ot), out[Rational(1)]);
}

SimpleFn flatten_blocks(const StructFn& f) {
    SimpleFn flat = flatten(f);
    ExpNode e = expand(f, 0);
    std::vector<std::pair<Ordinal, Ordinal>> blocks;
    collect_blocks(e, Ordinal(), blocks);
    std::sort(blocks.begin(), blocks.end());
    // split [0, top] at every block boundary: pieces between consecutive cut points
    std::vector<Ordinal> cuts{Ordinal()};
    for (const auto& [lo, hi] : blocks) {
        cuts.push_back(lo);
        cuts.push_back(hi.succ());
    }
    cuts.push_back(flat.top().succ());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<PatchItem> items;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Ordinal lo = cuts[i], hi = pred(cuts[i + 1]);
        items.push_back(PatchItem{lo, hi, localize(flat, lo, hi)});
    }
    return patch(flat.top(), items, "blocks(" + f.descriptor + ")");
}

StructFn prop53a_block(long n, Convention conv) { return build_type(n, n + 1, n + 1, conv); }

SimpleFn prop53a(long n_max, Convention conv) {
    if (n_max < 0 || n_max > 4) throw Error(ErrorCode::BadParams, "prop53a depth must lie in 0..4");
    Ordinal top = Ordinal::omega_pow(Ordinal::omega_pow(Ordinal(2)));
    std::vector<PatchItem> items;
    Ordinal pos;
    for (long n = 0; n <= n_max; ++n) {
        SimpleFn b = flatten(truncate(prop53a_block(n, conv), kProp53aTruncation));
        Ordinal hi = pos + b.top();
        items.push_back(PatchItem{pos, hi, b});
        pos = hi.succ();
    }
    SimpleFn f = patch(top, items, "gallery(prop53a, " + std::to_string(n_max) + "; parity=" + convention_name(conv) + ")");
    Family fam = *f.family();
    fam.rule = "prop53a";
    fam.n_max = n_max;
    for (size_t i = 0; i < fam.blocks.size(); ++i) fam.blocks[i].index = static_cast<long>(i);
    f.set_family(std::move(fam));
    return f;
}

}  // namespace ordlab
