#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordlab/ordinal.hpp"

namespace ordlab {

enum class ParityFilter { Any, Even, Odd };

// Ranks in [lo, hi) whose I-parity passes the filter; hi absent means unbounded.
struct RankSeg {
    Ordinal lo;
    std::optional<Ordinal> hi;
    ParityFilter parity = ParityFilter::Any;
    bool operator==(const RankSeg&) const = default;
};

class RankSet {
public:
    RankSet() = default;
    static RankSet all();
    static RankSet at_least(const Ordinal& r, ParityFilter p = ParityFilter::Any);
    static RankSet exactly(const Ordinal& r);
    static RankSet range(const Ordinal& lo, std::optional<Ordinal> hi, ParityFilter p = ParityFilter::Any);
    static RankSet from_segs(std::vector<RankSeg> segs);

    const std::vector<RankSeg>& segs() const { return segs_; }
    bool empty() const { return segs_.empty(); }
    bool contains(const Ordinal& r) const;
    std::optional<Ordinal> min() const;

    RankSet unite(const RankSet& o) const;
    RankSet intersect(const RankSet& o) const;
    RankSet complement() const;

    bool operator==(const RankSet&) const = default;

private:
    std::vector<RankSeg> segs_;
};

// Points x in [lo, hi) with rank(x) in ranks.
struct Cell {
    Ordinal lo;
    Ordinal hi;
    RankSet ranks;
    bool operator==(const Cell&) const = default;
};

bool cell_member(const Cell& c, const Ordinal& x);
std::optional<Ordinal> cell_min(const Cell& c);

// Cell with closed interval [lo, hi] as written in the text form.
Cell make_cell(const Ordinal& lo, const Ordinal& hi_closed, RankSet ranks);

class CanonicalSet {
public:
    CanonicalSet() = default;
    explicit CanonicalSet(Ordinal top);
    CanonicalSet(Ordinal top, std::vector<Cell> cells);
    static CanonicalSet full(const Ordinal& top);
    static CanonicalSet interval(const Ordinal& top, const Ordinal& lo, const Ordinal& hi_closed);
    static CanonicalSet points(const Ordinal& top, const std::vector<Ordinal>& pts);

    const Ordinal& top() const { return top_; }
    Ordinal end() const { return top_.succ(); }
    const std::vector<Cell>& cells() const { return cells_; }

    bool empty() const { return cells_.empty(); }
    bool member(const Ordinal& x) const;
    std::optional<Ordinal> min_elem() const;

    CanonicalSet unite(const CanonicalSet& o) const;
    CanonicalSet intersect(const CanonicalSet& o) const;
    CanonicalSet diff(const CanonicalSet& o) const;
    CanonicalSet complement() const;
    bool equals(const CanonicalSet& o) const;
    bool subset_of(const CanonicalSet& o) const;

    CanonicalSet derived() const;
    CanonicalSet closure() const;

    // syntactic identity of normalized forms
    bool operator==(const CanonicalSet& o) const { return top_ == o.top_ && cells_ == o.cells_; }

private:
    Ordinal top_;
    std::vector<Cell> cells_;
    void check_space(const CanonicalSet& o) const;
};

// Partition of [0, end) into elementary intervals carrying the union of the covering rank sets.
std::vector<Cell> grid(const std::vector<Cell>& cells, const Ordinal& end);
std::vector<Cell> normalize_cells(std::vector<Cell> cells, const Ordinal& end);

std::string to_string(const RankSet& r);
std::string to_string(const Cell& c);
std::string to_string(const CanonicalSet& s);
const char* filter_name(ParityFilter p);

}  // namespace ordlab
