#include "ordlab/interval_sets.hpp"

#include <algorithm>
#include <map>

namespace ordlab {

namespace {

Ordinal pred(const Ordinal& x) {
    std::vector<Ordinal::Term> t = x.terms();
    if (t.back().coeff == 1) t.pop_back();
    else t.back().coeff -= 1;
    return Ordinal::from_terms(std::move(t));
}

bool passes(ParityFilter f, const Ordinal& r) {
    if (f == ParityFilter::Any) return true;
    Parity p = rank_parity(r);
    return (f == ParityFilter::Even) == (p == Parity::Even);
}

ParityFilter as_filter(Parity p) { return p == Parity::Even ? ParityFilter::Even : ParityFilter::Odd; }

bool lt_hi(const Ordinal& x, const std::optional<Ordinal>& hi) { return !hi || x < *hi; }

bool single(const RankSeg& s) { return s.hi && *s.hi == s.lo.succ(); }

// parity run a segment can join: its filter, or the parity of its only point
std::optional<ParityFilter> run_parity(const RankSeg& s) {
    if (s.parity != ParityFilter::Any) return s.parity;
    if (single(s)) return as_filter(rank_parity(s.lo));
    return std::nullopt;
}

std::vector<RankSeg> canonical(std::vector<RankSeg> raw) {
    std::vector<RankSeg> shrunk;
    for (auto s : raw) {
        if (s.parity != ParityFilter::Any) {
            if (!passes(s.parity, s.lo)) s.lo = s.lo.succ();
            if (s.hi && kind_of(*s.hi) == PointKind::Successor) {
                Ordinal p = pred(*s.hi);
                if (!passes(s.parity, p)) s.hi = p;
            }
        }
        if (s.hi && !(s.lo < *s.hi)) continue;
        if (single(s)) s.parity = ParityFilter::Any;
        shrunk.push_back(std::move(s));
    }
    std::vector<RankSeg> out;
    for (auto& s : shrunk) {
        if (!out.empty() && out.back().hi) {
            RankSeg& last = out.back();
            const Ordinal& lh = *last.hi;
            if (last.parity == ParityFilter::Any && s.parity == ParityFilter::Any && s.lo == lh) {
                last.hi = s.hi;
                continue;
            }
            auto pl = run_parity(last), pc = run_parity(s);
            if (pl && pc && *pl == *pc) {
                bool adjacent = s.lo == lh;
                bool one_gap = s.lo == lh.succ() && !passes(*pl, lh);
                if (adjacent || one_gap) {
                    last.hi = s.hi;
                    last.parity = *pl;
                    continue;
                }
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

enum class Cov { None, Any, Even, Odd };

Cov coverage(const RankSet& s, const Ordinal& lo) {
    for (const auto& seg : s.segs()) {
        if (seg.lo <= lo && lt_hi(lo, seg.hi)) {
            switch (seg.parity) {
                case ParityFilter::Any: return Cov::Any;
                case ParityFilter::Even: return Cov::Even;
                case ParityFilter::Odd: return Cov::Odd;
            }
        }
    }
    return Cov::None;
}

Cov cov_union(Cov a, Cov b) {
    if (a == Cov::None) return b;
    if (b == Cov::None) return a;
    if (a == Cov::Any || b == Cov::Any || a != b) return Cov::Any;
    return a;
}

Cov cov_inter(Cov a, Cov b) {
    if (a == Cov::None || b == Cov::None) return Cov::None;
    if (a == Cov::Any) return b;
    if (b == Cov::Any) return a;
    return a == b ? a : Cov::None;
}

Cov cov_not(Cov a) {
    switch (a) {
        case Cov::None: return Cov::Any;
        case Cov::Any: return Cov::None;
        case Cov::Even: return Cov::Odd;
        case Cov::Odd: return Cov::Even;
    }
    return Cov::None;
}

template <class Op>
RankSet sweep(const RankSet& a, const RankSet& b, Op op) {
    std::vector<Ordinal> bps{Ordinal()};
    for (const RankSet* s : {&a, &b})
        for (const auto& seg : s->segs()) {
            bps.push_back(seg.lo);
            if (seg.hi) bps.push_back(*seg.hi);
        }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    std::vector<RankSeg> raw;
    for (size_t i = 0; i < bps.size(); ++i) {
        std::optional<Ordinal> hi;
        if (i + 1 < bps.size()) hi = bps[i + 1];
        Cov c = op(coverage(a, bps[i]), coverage(b, bps[i]));
        if (c == Cov::None) continue;
        ParityFilter f = c == Cov::Any ? ParityFilter::Any : (c == Cov::Even ? ParityFilter::Even : ParityFilter::Odd);
        raw.push_back(RankSeg{bps[i], hi, f});
    }
    return RankSet::from_segs(std::move(raw));
}

}  // namespace

const char* filter_name(ParityFilter p) {
    switch (p) {
        case ParityFilter::Any: return "any";
        case ParityFilter::Even: return "even";
        case ParityFilter::Odd: return "odd";
    }
    return "?";
}

RankSet RankSet::all() { return at_least(Ordinal()); }
RankSet RankSet::at_least(const Ordinal& r, ParityFilter p) { return range(r, std::nullopt, p); }
RankSet RankSet::exactly(const Ordinal& r) { return range(r, r.succ()); }
RankSet RankSet::range(const Ordinal& lo, std::optional<Ordinal> hi, ParityFilter p) {
    return from_segs({RankSeg{lo, std::move(hi), p}});
}

RankSet RankSet::from_segs(std::vector<RankSeg> segs) {
    std::sort(segs.begin(), segs.end(), [](const RankSeg& x, const RankSeg& y) { return x.lo < y.lo; });
    for (size_t i = 1; i < segs.size(); ++i) {
        if (!segs[i - 1].hi || segs[i].lo < *segs[i - 1].hi) {
            // overlapping input: resolve through the sweep
            RankSet acc;
            for (auto& s : segs) {
                RankSet one;
                one.segs_ = canonical({s});
                acc = acc.unite(one);
            }
            return acc;
        }
    }
    RankSet r;
    r.segs_ = canonical(std::move(segs));
    return r;
}

bool RankSet::contains(const Ordinal& r) const {
    for (const auto& s : segs_)
        if (s.lo <= r && lt_hi(r, s.hi) && passes(s.parity, r)) return true;
    return false;
}

std::optional<Ordinal> RankSet::min() const {
    if (segs_.empty()) return std::nullopt;
    return segs_.front().lo;
}

RankSet RankSet::unite(const RankSet& o) const { return sweep(*this, o, cov_union); }
RankSet RankSet::intersect(const RankSet& o) const { return sweep(*this, o, cov_inter); }
RankSet RankSet::complement() const {
    return sweep(*this, RankSet(), [](Cov a, Cov) { return cov_not(a); });
}

bool cell_member(const Cell& c, const Ordinal& x) { return c.lo <= x && x < c.hi && c.ranks.contains(rank_of(x)); }

std::optional<Ordinal> cell_min(const Cell& c) {
    std::optional<Ordinal> best;
    for (const auto& seg : c.ranks.segs()) {
        const Ordinal& r = seg.lo;
        Ordinal m = round_up_to_multiple(c.lo, r);
        Ordinal rm = rank_of(m);
        bool ok = seg.lo <= rm && lt_hi(rm, seg.hi) && passes(seg.parity, rm);
        if (!ok) m = m + Ordinal::omega_pow(r);
        if (!(m < c.hi)) continue;
        if (!best || m < *best) best = m;
    }
    return best;
}

Cell make_cell(const Ordinal& lo, const Ordinal& hi_closed, RankSet ranks) {
    return Cell{lo, hi_closed.succ(), std::move(ranks)};
}

std::vector<Cell> grid(const std::vector<Cell>& cells, const Ordinal& end) {
    std::vector<Ordinal> bps{Ordinal(), end};
    for (const auto& c : cells) {
        bps.push_back(std::min(c.lo, end));
        bps.push_back(std::min(c.hi, end));
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    std::vector<Cell> out;
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        RankSet r;
        for (const auto& c : cells)
            if (c.lo <= bps[i] && bps[i + 1] <= c.hi) r = r.unite(c.ranks);
        out.push_back(Cell{bps[i], bps[i + 1], std::move(r)});
    }
    return out;
}

std::vector<Cell> normalize_cells(std::vector<Cell> cells, const Ordinal& end) {
    std::vector<Cell> g = grid(cells, end);
    auto clear_empty = [&] {
        for (auto& c : g)
            if (!c.ranks.empty() && !cell_min(c)) c.ranks = RankSet();
    };
    clear_empty();
    Ordinal zero;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Cell> merged;
        for (auto& c : g) {
            if (!(c.lo < c.hi)) continue;
            if (!merged.empty() && merged.back().ranks == c.ranks) {
                merged.back().hi = c.hi;
                continue;
            }
            merged.push_back(std::move(c));
        }
        g = std::move(merged);
        for (size_t i = 1; i < g.size(); ++i) {
            const Ordinal b = g[i].lo;
            if (b.finite_part() == 0) continue;
            Ordinal p = b.limit_part();
            Ordinal nb = p.is_zero() ? Ordinal() : p.succ();
            nb = std::max(nb, g[i - 1].lo);
            if (!(nb < b)) continue;
            if (g[i - 1].ranks.contains(zero) != g[i].ranks.contains(zero)) continue;
            g[i - 1].hi = nb;
            g[i].lo = nb;
            changed = true;
        }
        if (changed) clear_empty();
    }
    std::vector<Cell> out;
    for (auto& c : g)
        if (!c.ranks.empty() && c.lo < c.hi) out.push_back(std::move(c));
    return out;
}

CanonicalSet::CanonicalSet(Ordinal top) : top_(std::move(top)) {}

CanonicalSet::CanonicalSet(Ordinal top, std::vector<Cell> cells) : top_(std::move(top)) {
    Ordinal e = end();
    for (const auto& c : cells)
        if (e < c.hi) throw Error(ErrorCode::OutOfSpace, "cell " + to_string(c) + " exceeds top " + to_string(top_));
    cells_ = normalize_cells(std::move(cells), e);
}

CanonicalSet CanonicalSet::full(const Ordinal& top) {
    return CanonicalSet(top, {Cell{Ordinal(), top.succ(), RankSet::all()}});
}

CanonicalSet CanonicalSet::interval(const Ordinal& top, const Ordinal& lo, const Ordinal& hi_closed) {
    return CanonicalSet(top, {make_cell(lo, hi_closed, RankSet::all())});
}

CanonicalSet CanonicalSet::points(const Ordinal& top, const std::vector<Ordinal>& pts) {
    std::vector<Cell> cs;
    for (const auto& p : pts) cs.push_back(Cell{p, p.succ(), RankSet::all()});
    return CanonicalSet(top, std::move(cs));
}

void CanonicalSet::check_space(const CanonicalSet& o) const {
    if (!(top_ == o.top_))
        throw Error(ErrorCode::SpaceMismatch, "spaces [0," + to_string(top_) + "] and [0," + to_string(o.top_) + "]");
}

bool CanonicalSet::member(const Ordinal& x) const {
    if (top_ < x) throw Error(ErrorCode::OutOfSpace, to_string(x) + " > " + to_string(top_));
    for (const auto& c : cells_)
        if (cell_member(c, x)) return true;
    return false;
}

std::optional<Ordinal> CanonicalSet::min_elem() const {
    std::optional<Ordinal> best;
    for (const auto& c : cells_) {
        auto m = cell_min(c);
        if (m && (!best || *m < *best)) best = m;
    }
    return best;
}

CanonicalSet CanonicalSet::unite(const CanonicalSet& o) const {
    check_space(o);
    std::vector<Cell> cs = cells_;
    cs.insert(cs.end(), o.cells_.begin(), o.cells_.end());
    return CanonicalSet(top_, std::move(cs));
}

CanonicalSet CanonicalSet::intersect(const CanonicalSet& o) const {
    check_space(o);
    std::vector<Cell> cs;
    for (const auto& a : cells_)
        for (const auto& b : o.cells_) {
            Ordinal lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
            if (!(lo < hi)) continue;
            RankSet r = a.ranks.intersect(b.ranks);
            if (r.empty()) continue;
            cs.push_back(Cell{lo, hi, std::move(r)});
        }
    return CanonicalSet(top_, std::move(cs));
}

CanonicalSet CanonicalSet::complement() const {
    std::vector<Cell> g = grid(cells_, end());
    for (auto& c : g) c.ranks = c.ranks.complement();
    return CanonicalSet(top_, std::move(g));
}

CanonicalSet CanonicalSet::diff(const CanonicalSet& o) const {
    check_space(o);
    return intersect(o.complement());
}

bool CanonicalSet::subset_of(const CanonicalSet& o) const { return diff(o).empty(); }

bool CanonicalSet::equals(const CanonicalSet& o) const { return subset_of(o) && o.subset_of(*this); }

CanonicalSet CanonicalSet::derived() const {
    std::vector<Cell> cs;
    Ordinal e = end();
    for (const auto& c : cells_) {
        auto r = c.ranks.min();
        if (!r) continue;
        Ordinal lo = c.lo.succ();
        Ordinal hi = std::min(c.hi.succ(), e);
        if (!(lo < hi)) continue;
        cs.push_back(Cell{lo, hi, RankSet::at_least(r->succ())});
    }
    return CanonicalSet(top_, std::move(cs));
}

CanonicalSet CanonicalSet::closure() const { return unite(derived()); }

std::string to_string(const RankSet& r) {
    if (r.empty()) return "none";
    std::string out;
    for (const auto& s : r.segs()) {
        if (!out.empty()) out += " | ";
        if (s.hi && *s.hi == s.lo.succ()) {
            out += "rank=" + to_string(s.lo);
        } else {
            out += "rank>=" + to_string(s.lo);
            if (s.hi) out += ", rank<" + to_string(*s.hi);
        }
        if (s.parity != ParityFilter::Any) out += std::string("; parity=") + filter_name(s.parity);
    }
    return out;
}

std::string to_string(const Cell& c) {
    if (kind_of(c.hi) == PointKind::Successor)
        return "cell(" + to_string(c.lo) + ", " + to_string(pred(c.hi)) + "; " + to_string(c.ranks) + ")";
    return "cell(" + to_string(c.lo) + ", <" + to_string(c.hi) + "; " + to_string(c.ranks) + ")";
}

std::string to_string(const CanonicalSet& s) {
    if (s.empty()) return "empty";
    std::string out;
    for (const auto& c : s.cells()) {
        if (!out.empty()) out += " U ";
        out += to_string(c);
    }
    return out;
}

}  // namespace ordlab
