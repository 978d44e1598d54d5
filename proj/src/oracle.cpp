#include "ordlab/oracle.hpp"

#include <algorithm>
#include <vector>

#include "ordlab/sampling.hpp"

namespace ordlab {

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

std::vector<Ordinal> rank_candidates(const CanonicalSet& s, const Ordinal& e, std::uint64_t t) {
    std::vector<Ordinal> c;
    for (std::uint64_t i = 0; i < 5; ++i) c.emplace_back(i);
    for (const auto& cell : s.cells())
        for (const auto& seg : cell.ranks.segs()) {
            c.push_back(seg.lo);
            c.push_back(seg.lo.succ());
            c.push_back(seg.lo.succ().succ());
        }
    if (kind_of(e) == PointKind::Limit) {
        Ordinal f = fundamental_seq(e, t);
        c.push_back(f);
        c.push_back(f.succ());
    }
    std::vector<Ordinal> out;
    for (const auto& r : c)
        if (r < e) out.push_back(r);
    return out;
}

}  // namespace

bool derived_oracle(const CanonicalSet& s, const Ordinal& x) {
    if (kind_of(x) != PointKind::Limit) return false;
    Ordinal bar;  // largest cell boundary below x
    for (const auto& c : s.cells())
        for (const auto& b : {c.lo, c.hi})
            if (b < x && bar < b) bar = b;
    std::uint64_t t0 = 1;
    while (fundamental_seq(x, t0) < bar) ++t0;
    Ordinal e = rank_of(x);
    for (std::uint64_t t = t0; t < t0 + 3; ++t) {
        Ordinal f = fundamental_seq(x, t);
        bool found = false;
        for (const auto& r : rank_candidates(s, e, t)) {
            Ordinal y = f + Ordinal::omega_pow(r);
            if (f < y && y < x && s.member(y)) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

CanonicalSet random_set(const Ordinal& top, std::mt19937_64& rng) {
    std::vector<Cell> cells;
    std::uint64_t n = pick(rng, 0, 3);
    for (std::uint64_t i = 0; i < n; ++i) {
        Ordinal a = random_ordinal(top, rng), b = random_ordinal(top, rng);
        if (b < a) std::swap(a, b);
        // cells start at 0 or a successor so that pieces stay well formed
        if (kind_of(a) == PointKind::Limit) a = a.succ();
        if (top < a) continue;
        if (b < a) b = a;
        std::uint64_t k = pick(rng, 0, 3);
        ParityFilter pf = k == 0 ? ParityFilter::Even : k == 1 ? ParityFilter::Odd : ParityFilter::Any;
        RankSet rs;
        switch (pick(rng, 0, 3)) {
            case 0: rs = RankSet::all(); break;
            case 1: rs = RankSet::at_least(Ordinal(pick(rng, 0, 3)), pf); break;
            case 2: rs = RankSet::exactly(Ordinal(pick(rng, 0, 3))); break;
            default: {
                std::uint64_t lo = pick(rng, 0, 2);
                rs = RankSet::range(Ordinal(lo), Ordinal(lo + pick(rng, 1, 3)), pf);
            }
        }
        cells.push_back(make_cell(a, b, rs));
    }
    return CanonicalSet(top, cells);
}

namespace {

Ordinal random_top(std::mt19937_64& rng) {
    switch (pick(rng, 0, 4)) {
        case 0: return Ordinal::omega_pow(Ordinal(pick(rng, 1, 4)), pick(rng, 1, 3));
        case 1: return Ordinal::omega_pow(Ordinal::omega());
        case 2: return Ordinal::omega_pow(Ordinal::omega()) + Ordinal::omega_pow(Ordinal(2), 2);
        case 3: return Ordinal::omega_pow(Ordinal::omega().succ());
        default: return Ordinal::omega_pow(Ordinal(3)) + Ordinal::omega() + Ordinal(pick(rng, 0, 3));
    }
}

struct Instance {
    size_t checks = 0;
    size_t bad = 0;
    std::string first;
};

Instance run_instance(std::uint64_t seed, size_t i) {
    std::seed_seq sq{seed, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(sq);
    Ordinal top = random_top(rng);
    CanonicalSet a = random_set(top, rng), b = random_set(top, rng);
    std::uint64_t op = pick(rng, 0, 5);
    CanonicalSet r;
    const char* names[] = {"derived", "closure", "union", "intersect", "diff", "complement"};
    switch (op) {
        case 0: r = a.derived(); break;
        case 1: r = a.closure(); break;
        case 2: r = a.unite(b); break;
        case 3: r = a.intersect(b); break;
        case 4: r = a.diff(b); break;
        default: r = a.complement(); break;
    }
    std::vector<Cell> cells = a.cells();
    cells.insert(cells.end(), b.cells().begin(), b.cells().end());
    std::vector<Ordinal> pts = sample_points(top, cells, rng, 20);
    Instance out;
    for (const auto& x : pts) {
        bool want = false;
        switch (op) {
            case 0: want = derived_oracle(a, x); break;
            case 1: want = a.member(x) || derived_oracle(a, x); break;
            case 2: want = a.member(x) || b.member(x); break;
            case 3: want = a.member(x) && b.member(x); break;
            case 4: want = a.member(x) && !b.member(x); break;
            default: want = !a.member(x); break;
        }
        ++out.checks;
        if (r.member(x) != want) {
            if (out.bad++ == 0)
                out.first = std::string(names[op]) + " of " + to_string(a) + " at " + to_string(x) + " (seed " +
                            std::to_string(seed) + ", instance " + std::to_string(i) + ")";
        }
    }
    return out;
}

OracleStats sweep(size_t n, std::uint64_t seed, bool parallel) {
    std::vector<Instance> res(n);
    const long ln = static_cast<long>(n);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < ln; ++i) res[static_cast<size_t>(i)] = run_instance(seed, static_cast<size_t>(i));
    } else {
        for (long i = 0; i < ln; ++i) res[static_cast<size_t>(i)] = run_instance(seed, static_cast<size_t>(i));
    }
    OracleStats s;
    s.instances = n;
    for (const auto& r : res) {
        s.checks += r.checks;
        s.mismatches += r.bad;
        if (r.bad && s.first_mismatch.empty()) s.first_mismatch = r.first;
    }
    return s;
}

}  // namespace

OracleStats oracle_sweep(size_t instances, std::uint64_t seed) { return sweep(instances, seed, true); }
OracleStats oracle_sweep_serial(size_t instances, std::uint64_t seed) { return sweep(instances, seed, false); }

}  // namespace ordlab
