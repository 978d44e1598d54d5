#include "ordlab/witness.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>

namespace ordlab {

namespace {

Ordinal lead_exp(const Ordinal& x) { return x.is_zero() ? Ordinal() : x.terms().front().exp; }

Ordinal prefix_of(const std::vector<Ordinal::Term>& t, size_t len) {
    return Ordinal::from_terms(std::vector<Ordinal::Term>(t.begin(), t.begin() + static_cast<long>(len)));
}

const Block* find_block(const SimpleFn& f, const Ordinal& x) {
    if (!f.family()) return nullptr;
    for (const auto& b : f.family()->blocks)
        if (b.lo <= x && x <= b.hi) return &b;
    return nullptr;
}

bool has_blocks(const SimpleFn& f) { return f.family() && !f.family()->blocks.empty(); }

}  // namespace

std::optional<Ordinal> least_simple_above(const Ordinal& x, std::uint64_t n, const Ordinal& cap) {
    if (cap < x) return std::nullopt;
    if (complexity(x) <= n) return x;
    const auto& t = x.terms();
    size_t ok_prefix = 0;  // longest prefix whose terms are individually admissible
    while (ok_prefix < t.size() && t[ok_prefix].coeff <= n && complexity(t[ok_prefix].exp) <= n) ++ok_prefix;
    for (size_t j = t.size(); j >= 1; --j) {
        // y keeps t_1..t_{j-1} and raises the j-th term
        if (j > n || j - 1 > ok_prefix) continue;
        Ordinal prefix = prefix_of(t, j - 1);
        const auto& tj = t[j - 1];
        if (tj.coeff + 1 <= n && complexity(tj.exp) <= n) {
            Ordinal y = prefix + Ordinal::omega_pow(tj.exp, tj.coeff + 1);
            if (cap < y) return std::nullopt;
            return y;
        }
        Ordinal ecap = j > 1 ? t[j - 2].exp : lead_exp(cap);
        auto e2 = least_simple_above(tj.exp.succ(), n, ecap);
        if (e2 && (j == 1 || *e2 < t[j - 2].exp)) {
            Ordinal y = prefix + Ordinal::omega_pow(*e2);
            if (cap < y) return std::nullopt;
            return y;
        }
    }
    return std::nullopt;
}

Ordinal reveal_point(const Ordinal& x, std::uint64_t n, const Ordinal& top) {
    auto y = least_simple_above(x, n, top);
    return y ? *y : top;
}

std::vector<Ordinal> enumerate_simple(std::uint64_t n, const Ordinal& top, size_t cap) {
    std::vector<Ordinal> out;
    std::vector<Ordinal> exps;
    Ordinal lead = lead_exp(top);
    if (!top.is_zero()) {
        if (lead.is_finite()) {
            for (std::uint64_t e = 0; e <= std::min<std::uint64_t>(lead.finite_part(), n); ++e) exps.emplace_back(e);
        } else {
            exps = enumerate_simple(n, lead, cap);
            if (complexity(lead) > n) exps.pop_back();
        }
    }
    std::sort(exps.begin(), exps.end(), std::greater<>());
    std::vector<Ordinal::Term> cur;
    std::function<void(size_t)> dfs = [&](size_t from) {
        Ordinal x = Ordinal::from_terms(cur);
        if (top < x) return;
        out.push_back(x);
        if (out.size() > cap) throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(cap) + " revealed points");
        if (cur.size() >= n) return;
        for (size_t i = from; i < exps.size(); ++i)
            for (std::uint64_t c = 1; c <= n; ++c) {
                cur.push_back(Ordinal::Term{exps[i], c});
                Ordinal y = Ordinal::from_terms(cur);
                bool over = top < y;
                if (!over) dfs(i + 1);
                cur.pop_back();
                if (over) break;
            }
    };
    dfs(0);
    if (complexity(top) > n) out.push_back(top);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StepFn witness_stage(const SimpleFn& f, std::uint64_t k, size_t cap) {
    std::vector<Piece> pieces;
    if (k == 0) return StepFn(f.top(), {Piece{Ordinal(), f.top(), 0}});
    if (has_blocks(f)) {
        Ordinal cur;
        bool started = false;
        auto zero_until = [&](const Ordinal& lo) {
            if ((!started && !lo.is_zero()) || (started && cur < lo)) {
                std::vector<Ordinal::Term> t = lo.terms();
                if (t.back().coeff == 1) t.pop_back();
                else t.back().coeff -= 1;
                pieces.push_back(Piece{cur, Ordinal::from_terms(std::move(t)), 0});
            }
        };
        std::vector<Block> blocks = f.family()->blocks;
        std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.lo < b.lo; });
        for (const auto& b : blocks) {
            zero_until(b.lo);
            StepFn local = witness_stage(*b.local, k, cap);
            for (const auto& p : local.pieces()) pieces.push_back(Piece{b.lo + p.lo, b.lo + p.hi, p.value});
            cur = b.hi.succ();
            started = true;
        }
        if (cur <= f.top()) pieces.push_back(Piece{cur, f.top(), 0});
        return StepFn(f.top(), std::move(pieces));
    }
    std::vector<Ordinal> r = enumerate_simple(k, f.top(), cap);
    Ordinal lo;
    for (const auto& y : r) {
        pieces.push_back(Piece{lo, y, f.eval(y)});
        lo = y.succ();
    }
    return StepFn(f.top(), std::move(pieces));
}

Rational witness_value(const SimpleFn& f, std::uint64_t k, const Ordinal& x) {
    if (k == 0) return 0;
    if (has_blocks(f)) {
        const Block* b = find_block(f, x);
        if (!b) return 0;
        return witness_value(*b->local, k, ord_sub(b->lo, x));
    }
    return f.eval(reveal_point(x, k, f.top()));
}

std::uint64_t stabilization_stage(const SimpleFn& f, const Ordinal& x) {
    if (has_blocks(f)) {
        const Block* b = find_block(f, x);
        if (!b) return 1;
        return stabilization_stage(*b->local, ord_sub(b->lo, x));
    }
    return std::max<std::uint64_t>(complexity(x), 1);
}

Rational witness_variation(const SimpleFn& f, const Ordinal& x) {
    if (has_blocks(f)) {
        const Block* b = find_block(f, x);
        if (!b) return 0;
        return witness_variation(*b->local, ord_sub(b->lo, x));
    }
    std::uint64_t kmax = std::max<std::uint64_t>(complexity(x), 1);
    Rational prev = 0, total = 0;
    for (std::uint64_t k = 1; k <= kmax; ++k) {
        Rational v = f.eval(reveal_point(x, k, f.top()));
        total += rat_abs(v - prev);
        prev = v;
    }
    return total;
}

std::optional<RankProfile> rank_profile(const SimpleFn& f) {
    Ordinal lead = lead_exp(f.top());
    if (!lead.is_finite()) return std::nullopt;
    RankProfile p;
    p.max_rank = lead.finite_part();
    p.top_value = f.eval(f.top());
    for (std::uint64_t r = 0; r <= p.max_rank; ++r) {
        CanonicalSet layer(f.top(), {Cell{Ordinal(), f.top(), RankSet::exactly(Ordinal(r))}});
        if (layer.empty()) {
            p.phi.emplace_back(std::nullopt);
            continue;
        }
        std::optional<Rational> v;
        for (const auto& part : f.parts()) {
            if (part.set.intersect(layer).empty()) continue;
            if (v) return std::nullopt;
            v = part.value;
        }
        p.phi.push_back(v);
    }
    return p;
}

Rational rank_path_bound(const RankProfile& p, bool omega_below_top) {
    // trajectories: top, then strictly decreasing ranks; or starting at 0, 1 (rank 0) or w (rank 1)
    Rational best = rat_abs(p.top_value);
    std::vector<std::optional<Rational>> g(p.phi.size());
    for (size_t i = p.phi.size(); i-- > 0;) {
        if (!p.phi[i]) continue;
        const Rational& v = *p.phi[i];
        Rational here = rat_abs(p.top_value) + rat_abs(v - p.top_value);
        for (size_t j = i + 1; j < p.phi.size(); ++j)
            if (g[j]) here = std::max(here, *g[j] + rat_abs(v - *p.phi[j]));
        g[i] = here;
        best = std::max(best, here);
    }
    if (!p.phi.empty() && p.phi[0]) best = std::max(best, rat_abs(*p.phi[0]));
    if (omega_below_top && p.phi.size() > 1 && p.phi[1]) {
        best = std::max(best, rat_abs(*p.phi[1]));
        if (p.phi[0]) best = std::max(best, rat_abs(*p.phi[1]) + rat_abs(*p.phi[0] - *p.phi[1]));
    }
    return best;
}

namespace {

EnumResult enum_core(const SimpleFn& f, std::uint64_t b, bool parallel) {
    std::vector<Ordinal> pts = enumerate_simple(b, f.top(), 60000);
    std::vector<Rational> vars(pts.size());
    const long n = static_cast<long>(pts.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < n; ++i) vars[static_cast<size_t>(i)] = witness_variation(f, pts[static_cast<size_t>(i)]);
    } else {
        for (long i = 0; i < n; ++i) vars[static_cast<size_t>(i)] = witness_variation(f, pts[static_cast<size_t>(i)]);
    }
    EnumResult r;
    r.points = pts.size();
    for (size_t i = 0; i < pts.size(); ++i)
        if (i == 0 || vars[i] > r.max) {
            r.max = vars[i];
            r.argmax = pts[i];
        }
    return r;
}

}  // namespace

EnumResult max_variation_enum(const SimpleFn& f, std::uint64_t b) { return enum_core(f, b, true); }
EnumResult max_variation_enum_serial(const SimpleFn& f, std::uint64_t b) { return enum_core(f, b, false); }

WitnessBound witness_bound(const SimpleFn& f) {
    WitnessBound w;
    if (f.family() && (f.family()->rule == "prop53b" || f.family()->rule == "prop53a")) {
        for (const auto& b : f.family()->blocks) {
            WitnessBound lb = witness_bound(*b.local);
            if (lb.finite) w.block_bounds[b.index] = lb.bound;
        }
        w.finite = false;
        w.method = f.family()->rule == "prop53b" ? "infinite block family; block bounds grow without bound"
                                                 : "infinite type-n family; not computed";
        return w;
    }
    if (has_blocks(f)) {
        w.method = "clopen sum of block witnesses";
        w.bound = 0;
        w.exact = true;
        for (const auto& b : f.family()->blocks) {
            WitnessBound lb = witness_bound(*b.local);
            w.block_bounds[b.index] = lb.finite ? lb.bound : Rational(-1);
            if (!lb.finite) {
                w.finite = false;
                w.exact = false;
                continue;
            }
            w.exact = w.exact && lb.exact;
            if (lb.bound > w.bound || !w.argmax) {
                if (lb.bound >= w.bound) {
                    w.bound = lb.bound;
                    w.argmax = lb.argmax ? std::optional<Ordinal>(b.lo + *lb.argmax) : std::nullopt;
                }
            }
        }
        if (w.argmax && witness_variation(f, *w.argmax) != w.bound) w.argmax.reset();
        return w;
    }
    auto vals = f.values();
    if (vals.size() == 1) {
        w.bound = rat_abs(vals[0]);
        w.method = "constant";
        w.exact = true;
        w.argmax = f.top();
        return w;
    }
    Ordinal lead = lead_exp(f.top());
    if (!lead.is_finite()) {
        w.finite = false;
        w.method = "infinite rank space; not computed";
        return w;
    }
    bool omega_below = Ordinal::omega() < f.top();
    if (auto prof = rank_profile(f)) {
        w.bound = rank_path_bound(*prof, omega_below);
        w.method = "rank-path bound";
    } else {
        auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
        std::uint64_t layers = lead.finite_part() + 1;
        w.bound = f.sup_norm() + (*mx - *mn) * static_cast<long>(layers);
        w.method = "jump-count bound";
    }
    // small spaces: search for a point attaining the bound
    std::uint64_t b = lead.finite_part() + 3;
    if (lead.finite_part() > 4) return w;
    try {
        EnumResult e = max_variation_enum(f, b);
        if (e.max == w.bound) {
            w.exact = true;
            w.argmax = e.argmax;
        }
    } catch (const Error&) {
    }
    return w;
}

}  // namespace ordlab
