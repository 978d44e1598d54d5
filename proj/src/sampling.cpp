#include "ordlab/sampling.hpp"

#include <algorithm>

namespace ordlab {

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

// exponent drawn below or equal to bound, biased toward small and structurally relevant values
Ordinal random_exponent(const Ordinal& bound, std::mt19937_64& rng, int depth) {
    if (bound.is_finite()) return Ordinal(pick(rng, 0, bound.finite_part()));
    if (depth > 2 || pick(rng, 0, 2) == 0) return Ordinal(pick(rng, 0, 6));
    return random_ordinal(bound, rng);
}

}  // namespace

Ordinal random_ordinal(const Ordinal& top, std::mt19937_64& rng) {
    if (top.is_zero()) return Ordinal();
    const Ordinal& lead = top.terms().front().exp;
    for (int attempt = 0; attempt < 24; ++attempt) {
        std::vector<Ordinal> exps;
        std::uint64_t nterms = pick(rng, 1, 3);
        for (std::uint64_t i = 0; i < nterms; ++i) exps.push_back(random_exponent(lead, rng, 0));
        std::sort(exps.begin(), exps.end(), std::greater<>());
        exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
        std::vector<Ordinal::Term> ts;
        for (auto& e : exps) ts.push_back(Ordinal::Term{e, pick(rng, 1, 7)});
        if (pick(rng, 0, 3) == 0 && !ts.empty()) ts.front().coeff = 1;
        Ordinal x = Ordinal::from_terms(std::move(ts));
        if (pick(rng, 0, 5) == 0) x = Ordinal();
        if (x <= top) return x;
    }
    return top;
}

std::vector<Ordinal> corner_points(const Ordinal& top, const std::vector<Cell>& cells) {
    std::vector<Ordinal> pts{Ordinal(), top};
    auto add = [&](const Ordinal& x) {
        if (x <= top) pts.push_back(x);
    };
    auto around = [&](const Ordinal& x) {
        add(x);
        add(x.succ());
        if (kind_of(x) == PointKind::Successor) {
            std::vector<Ordinal::Term> t = x.terms();
            if (t.back().coeff == 1) t.pop_back();
            else t.back().coeff -= 1;
            add(Ordinal::from_terms(std::move(t)));
        }
        if (kind_of(x) == PointKind::Limit)
            for (std::uint64_t n = 1; n <= 3; ++n) {
                Ordinal f = fundamental_seq(x, n);
                add(f);
                add(f.succ());
            }
    };
    around(top);
    for (const auto& c : cells) {
        around(c.lo);
        around(c.hi);
    }
    return pts;
}

std::vector<Ordinal> sample_points(const Ordinal& top, const std::vector<Cell>& cells, std::mt19937_64& rng,
                                   size_t random_count) {
    std::vector<Ordinal> pts = corner_points(top, cells);
    for (size_t i = 0; i < random_count; ++i) pts.push_back(random_ordinal(top, rng));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace ordlab
