#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/interval_sets.hpp"

namespace ordlab {

struct Part {
    CanonicalSet set;
    Rational value;
};

class SimpleFn;

// A clopen block [lo, hi] carrying a function in local coordinates y -> lo + y.
struct Block {
    Ordinal lo;
    Ordinal hi;
    std::shared_ptr<const SimpleFn> local;
    long index = 0;
};

// Block layout of a patch or of a gallery family truncated at depth n_max.
struct Family {
    std::string rule;
    long n_max = 0;
    std::vector<Block> blocks;
};

class SimpleFn {
public:
    SimpleFn() = default;
    // parts must be pairwise disjoint and cover [0, top]; equal values are merged
    SimpleFn(Ordinal top, std::vector<Part> parts, std::string descriptor = "");
    static SimpleFn constant(const Ordinal& top, const Rational& c);

    const Ordinal& top() const { return top_; }
    const std::vector<Part>& parts() const { return parts_; }
    const std::string& descriptor() const { return descriptor_; }
    const std::optional<Family>& family() const { return family_; }
    void set_family(Family f) { family_ = std::move(f); }
    void set_descriptor(std::string d) { descriptor_ = std::move(d); }

    Rational eval(const Ordinal& x) const;
    CanonicalSet level_set_le(const Rational& c) const;
    CanonicalSet level_set_ge(const Rational& c) const;
    CanonicalSet level_set_eq(const Rational& c) const;
    std::vector<Rational> values() const;
    std::vector<Rational> gaps() const;
    Rational sup_norm() const;

    // exact inf/sup of F over S; nullopt when S is empty
    std::optional<std::pair<Rational, Rational>> extrema(const CanonicalSet& s) const;
    // values adherent to S at x, i.e. v with x in closure(S n [F = v])
    std::vector<Rational> adherent(const CanonicalSet& s, const Ordinal& x) const;
    Rational osc(const CanonicalSet& s, const Ordinal& x) const;

    SimpleFn scaled(const Rational& c) const;

private:
    Ordinal top_;
    std::vector<Part> parts_;
    std::string descriptor_;
    std::optional<Family> family_;
};

struct Piece {
    Ordinal lo;
    Ordinal hi;  // closed
    Rational value;
};

// Continuous locally constant function: clopen pieces [lo, hi] with lo = 0 or a successor.
class StepFn {
public:
    StepFn() = default;
    StepFn(Ordinal top, std::vector<Piece> pieces);
    const Ordinal& top() const { return top_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    Rational eval(const Ordinal& x) const;
    // index of the piece containing x
    size_t locate(const Ordinal& x) const;

private:
    Ordinal top_;
    std::vector<Piece> pieces_;
};

// invariants check reused by the verifier: returns an empty string when valid
std::string stepfn_defect(const Ordinal& top, const std::vector<Piece>& pieces);

enum class Convention { Even, Odd };

SimpleFn f_delta(const Ordinal& gamma, Convention conv = Convention::Even);
SimpleFn type0(long n, Convention conv = Convention::Even);
SimpleFn prop53b(long n_max, Convention conv = Convention::Even);
SimpleFn prop53c(Convention conv = Convention::Even);
SimpleFn prop53d(Convention conv = Convention::Even);

struct PatchItem {
    Ordinal lo;
    Ordinal hi;  // closed
    SimpleFn fn;
};

SimpleFn patch(const Ordinal& top, const std::vector<PatchItem>& items, const std::string& descriptor = "");
SimpleFn restrict_extend(const SimpleFn& f, const Ordinal& lo, const Ordinal& hi);
// translate a set on [0, local_top] into position lo (lo = 0 or a successor)
std::vector<Cell> shift_cells(const std::vector<Cell>& cells, const Ordinal& lo);

const char* convention_name(Convention c);

}  // namespace ordlab
