#include "ordlab/fn_core.hpp"

#include <algorithm>
#include <map>

namespace ordlab {

namespace {

std::string ord_interval(const Ordinal& lo, const Ordinal& hi) {
    return "[" + to_string(lo) + ", " + to_string(hi) + "]";
}

bool clopen_left(const Ordinal& lo) { return kind_of(lo) != PointKind::Limit; }

}  // namespace

const char* convention_name(Convention c) { return c == Convention::Even ? "even" : "odd"; }

SimpleFn::SimpleFn(Ordinal top, std::vector<Part> parts, std::string descriptor)
    : top_(std::move(top)), descriptor_(std::move(descriptor)) {
    std::map<Rational, CanonicalSet> by_value;
    for (auto& p : parts) {
        if (!(p.set.top() == top_)) throw Error(ErrorCode::SpaceMismatch, "part outside [0," + to_string(top_) + "]");
        if (p.set.empty()) continue;
        auto it = by_value.find(p.value);
        if (it == by_value.end()) by_value.emplace(p.value, std::move(p.set));
        else it->second = it->second.unite(p.set);
    }
    CanonicalSet covered(top_);
    for (auto& [v, s] : by_value) {
        if (!covered.intersect(s).empty())
            throw Error(ErrorCode::OverlappingSupports, "parts overlap at value " + rat_str(v));
        covered = covered.unite(s);
        parts_.push_back(Part{s, v});
    }
    auto gap = CanonicalSet::full(top_).diff(covered);
    if (!gap.empty()) throw Error(ErrorCode::PartitionGap, "uncovered: " + to_string(gap));
}

SimpleFn SimpleFn::constant(const Ordinal& top, const Rational& c) {
    return SimpleFn(top, {Part{CanonicalSet::full(top), c}}, "const(" + rat_str(c) + ")");
}

Rational SimpleFn::eval(const Ordinal& x) const {
    if (top_ < x) throw Error(ErrorCode::OutOfSpace, to_string(x) + " > " + to_string(top_));
    for (const auto& p : parts_)
        if (p.set.member(x)) return p.value;
    throw Error(ErrorCode::PartitionGap, "no part contains " + to_string(x));
}

CanonicalSet SimpleFn::level_set_le(const Rational& c) const {
    CanonicalSet out(top_);
    for (const auto& p : parts_)
        if (p.value <= c) out = out.unite(p.set);
    return out;
}

CanonicalSet SimpleFn::level_set_ge(const Rational& c) const {
    CanonicalSet out(top_);
    for (const auto& p : parts_)
        if (p.value >= c) out = out.unite(p.set);
    return out;
}

CanonicalSet SimpleFn::level_set_eq(const Rational& c) const {
    for (const auto& p : parts_)
        if (p.value == c) return p.set;
    return CanonicalSet(top_);
}

std::vector<Rational> SimpleFn::values() const {
    std::vector<Rational> v;
    for (const auto& p : parts_) v.push_back(p.value);
    return v;
}

std::vector<Rational> SimpleFn::gaps() const {
    std::vector<Rational> g;
    for (size_t i = 0; i < parts_.size(); ++i)
        for (size_t j = i + 1; j < parts_.size(); ++j) g.push_back(rat_abs(parts_[j].value - parts_[i].value));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

Rational SimpleFn::sup_norm() const {
    Rational m = 0;
    for (const auto& p : parts_) m = std::max(m, rat_abs(p.value));
    return m;
}

std::optional<std::pair<Rational, Rational>> SimpleFn::extrema(const CanonicalSet& s) const {
    std::optional<std::pair<Rational, Rational>> out;
    for (const auto& p : parts_) {
        if (p.set.intersect(s).empty()) continue;
        if (!out) out = std::make_pair(p.value, p.value);
        else {
            out->first = std::min(out->first, p.value);
            out->second = std::max(out->second, p.value);
        }
    }
    return out;
}

std::vector<Rational> SimpleFn::adherent(const CanonicalSet& s, const Ordinal& x) const {
    std::vector<Rational> out;
    for (const auto& p : parts_) {
        CanonicalSet t = p.set.intersect(s);
        if (t.empty()) continue;
        if (t.member(x) || t.derived().member(x)) out.push_back(p.value);
    }
    return out;
}

Rational SimpleFn::osc(const CanonicalSet& s, const Ordinal& x) const {
    if (!s.member(x)) throw Error(ErrorCode::NotInSet, to_string(x));
    auto vs = adherent(s, x);
    auto [lo, hi] = std::minmax_element(vs.begin(), vs.end());
    return *hi - *lo;
}

SimpleFn SimpleFn::scaled(const Rational& c) const {
    std::vector<Part> ps;
    for (const auto& p : parts_) ps.push_back(Part{p.set, p.value * c});
    SimpleFn r(top_, std::move(ps), "scale(" + rat_str(c) + ", " + descriptor_ + ")");
    if (family_) {
        Family f = *family_;
        for (auto& b : f.blocks) b.local = std::make_shared<SimpleFn>(b.local->scaled(c));
        r.family_ = std::move(f);
    }
    return r;
}

std::string stepfn_defect(const Ordinal& top, const std::vector<Piece>& pieces) {
    if (pieces.empty()) return "no pieces";
    if (!pieces.front().lo.is_zero()) return "first piece does not start at 0";
    for (size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        if (p.hi < p.lo) return "reversed piece " + ord_interval(p.lo, p.hi);
        if (!clopen_left(p.lo)) return "piece " + ord_interval(p.lo, p.hi) + " is not clopen";
        if (i > 0 && !(pieces[i - 1].hi.succ() == p.lo)) return "pieces not contiguous at " + to_string(p.lo);
    }
    if (!(pieces.back().hi == top)) return "pieces do not reach the top";
    return "";
}

StepFn::StepFn(Ordinal top, std::vector<Piece> pieces) : top_(std::move(top)), pieces_(std::move(pieces)) {
    std::string d = stepfn_defect(top_, pieces_);
    if (!d.empty()) throw Error(ErrorCode::NotClopen, d);
}

size_t StepFn::locate(const Ordinal& x) const {
    if (top_ < x) throw Error(ErrorCode::OutOfSpace, to_string(x));
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Ordinal& v, const Piece& p) { return v < p.lo; });
    return static_cast<size_t>(it - pieces_.begin()) - 1;
}

Rational StepFn::eval(const Ordinal& x) const { return pieces_[locate(x)].value; }

SimpleFn f_delta(const Ordinal& gamma, Convention conv) {
    Ordinal end = gamma.succ();
    ParityFilter one = conv == Convention::Even ? ParityFilter::Even : ParityFilter::Odd;
    ParityFilter zero = conv == Convention::Even ? ParityFilter::Odd : ParityFilter::Even;
    std::vector<Part> parts{
        Part{CanonicalSet(gamma, {Cell{Ordinal(), end, RankSet::at_least(Ordinal(), one)}}), 1},
        Part{CanonicalSet(gamma, {Cell{Ordinal(), end, RankSet::at_least(Ordinal(), zero)}}), 0},
    };
    return SimpleFn(gamma, std::move(parts),
                    "fdelta(" + to_string(gamma) + "; parity=" + convention_name(conv) + ")");
}

SimpleFn type0(long n, Convention conv) {
    if (n < 1) throw Error(ErrorCode::BadParams, "type0 needs n >= 1");
    SimpleFn f = f_delta(Ordinal::omega_pow(Ordinal(static_cast<std::uint64_t>(n))), conv).scaled(Rational(1, n));
    f.set_descriptor("type0(" + std::to_string(n) + "; parity=" + convention_name(conv) + ")");
    return f;
}

std::vector<Cell> shift_cells(const std::vector<Cell>& cells, const Ordinal& lo) {
    std::vector<Cell> out;
    for (const auto& c : cells) out.push_back(Cell{lo + c.lo, lo + c.hi, c.ranks});
    return out;
}

SimpleFn patch(const Ordinal& top, const std::vector<PatchItem>& items, const std::string& descriptor) {
    std::vector<PatchItem> sorted = items;
    std::sort(sorted.begin(), sorted.end(), [](const PatchItem& a, const PatchItem& b) { return a.lo < b.lo; });
    std::map<Rational, std::vector<Cell>> cells;
    Family fam{"patch", 0, {}};
    CanonicalSet support(top);
    for (size_t i = 0; i < sorted.size(); ++i) {
        const auto& it = sorted[i];
        if (top < it.hi || it.hi < it.lo) throw Error(ErrorCode::BadParams, "support " + ord_interval(it.lo, it.hi));
        if (!clopen_left(it.lo)) throw Error(ErrorCode::NotClopen, "support " + ord_interval(it.lo, it.hi));
        if (i > 0 && !(sorted[i - 1].hi < it.lo))
            throw Error(ErrorCode::OverlappingSupports, ord_interval(sorted[i - 1].lo, sorted[i - 1].hi) + " and " +
                                                            ord_interval(it.lo, it.hi));
        Ordinal local_top = ord_sub(it.lo, it.hi);
        if (!(it.fn.top() == local_top))
            throw Error(ErrorCode::BadParams, "function on [0," + to_string(it.fn.top()) + "] does not fit support " +
                                                  ord_interval(it.lo, it.hi));
        for (const auto& p : it.fn.parts()) {
            auto sh = shift_cells(p.set.cells(), it.lo);
            auto& dst = cells[p.value];
            dst.insert(dst.end(), sh.begin(), sh.end());
        }
        support = support.unite(CanonicalSet::interval(top, it.lo, it.hi));
        fam.blocks.push_back(Block{it.lo, it.hi, std::make_shared<SimpleFn>(it.fn), static_cast<long>(i)});
    }
    CanonicalSet rest = support.complement();
    auto& zero = cells[Rational(0)];
    zero.insert(zero.end(), rest.cells().begin(), rest.cells().end());
    std::vector<Part> parts;
    for (auto& [v, cs] : cells) parts.push_back(Part{CanonicalSet(top, cs), v});
    SimpleFn f(top, std::move(parts), descriptor);
    f.set_family(std::move(fam));
    return f;
}

SimpleFn restrict_extend(const SimpleFn& f, const Ordinal& lo, const Ordinal& hi) {
    if (f.top() < hi || hi < lo) throw Error(ErrorCode::BadParams, "interval " + ord_interval(lo, hi));
    if (!clopen_left(lo)) throw Error(ErrorCode::NotClopen, "interval " + ord_interval(lo, hi));
    CanonicalSet win = CanonicalSet::interval(f.top(), lo, hi);
    std::vector<Part> parts;
    for (const auto& p : f.parts()) parts.push_back(Part{p.set.intersect(win), p.value});
    parts.push_back(Part{win.complement(), 0});
    return SimpleFn(f.top(), std::move(parts),
                    "restrict(" + f.descriptor() + ", " + ord_interval(lo, hi) + ")");
}

SimpleFn prop53b(long n_max, Convention conv) {
    if (n_max < 1) throw Error(ErrorCode::BadParams, "prop53b needs N >= 1");
    Ordinal top = Ordinal::omega_pow(Ordinal::omega());
    std::vector<PatchItem> items;
    Ordinal pos;
    for (long n = 1; n <= n_max; ++n) {
        Ordinal g = Ordinal::omega_pow(Ordinal(static_cast<std::uint64_t>(n * n)));
        SimpleFn blk = f_delta(g, conv).scaled(Rational(1, n));
        Ordinal hi = pos + g;
        items.push_back(PatchItem{pos, hi, blk});
        pos = hi.succ();
    }
    SimpleFn f = patch(top, items, "gallery(prop53b, " + std::to_string(n_max) + "; parity=" + convention_name(conv) + ")");
    Family fam = *f.family();
    fam.rule = "prop53b";
    fam.n_max = n_max;
    for (auto& b : fam.blocks) b.index += 1;
    f.set_family(std::move(fam));
    return f;
}

SimpleFn prop53c(Convention conv) {
    SimpleFn f = f_delta(Ordinal::omega_pow(Ordinal::omega()), conv);
    f.set_descriptor(std::string("gallery(prop53c; parity=") + convention_name(conv) + ")");
    return f;
}

SimpleFn prop53d(Convention conv) {
    SimpleFn f = f_delta(Ordinal::omega(), conv);
    f.set_descriptor(std::string("gallery(prop53d; parity=") + convention_name(conv) + ")");
    return f;
}

}  // namespace ordlab
