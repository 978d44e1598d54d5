#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/fn_core.hpp"

namespace ordlab {

enum class TraceKind { Beta, Alpha, Gen };

struct TraceSpec {
    TraceKind kind = TraceKind::Beta;
    Rational delta = 1;
    Rational a = 0, b = 1;
    std::vector<Rational> deltas;

    static TraceSpec beta(const Rational& d) { return TraceSpec{TraceKind::Beta, d, 0, 1, {}}; }
    static TraceSpec alpha(const Rational& a, const Rational& b) { return TraceSpec{TraceKind::Alpha, 1, a, b, {}}; }
    static TraceSpec gen(std::vector<Rational> ds) { return TraceSpec{TraceKind::Gen, 1, 0, 1, std::move(ds)}; }
};

struct Stage {
    Ordinal index;
    CanonicalSet set;
    bool limit = false;
};

enum class Terminal { EmptyAt, BudgetExceeded, ChainEnd };

struct IndexTrace {
    TraceSpec spec;
    std::vector<Stage> stages;
    Terminal terminal = Terminal::EmptyAt;
    Ordinal at;

    // last nonempty stage index, if any
    std::optional<Ordinal> last_nonempty() const;
    const CanonicalSet* stage_set(const Ordinal& idx) const;
};

struct RunOptions {
    Ordinal budget = Ordinal::omega_pow(Ordinal(1), 4);
    unsigned max_finite_steps = 400;
    std::uint64_t seed = 7;
    size_t oracle_samples = 60;
};

// one successor step of the oscillation filter or of the two-closure intersection
CanonicalSet osc_step(const SimpleFn& f, const CanonicalSet& k, const Rational& delta);
CanonicalSet alpha_step(const SimpleFn& f, const CanonicalSet& k, const Rational& a, const Rational& b);

IndexTrace index_run(const SimpleFn& f, const TraceSpec& spec, const RunOptions& opt = {});

struct BetaSup {
    Ordinal value;
    bool lower_bound_only = false;
    Rational delta;  // a delta realizing the value
    IndexTrace trace;
};

BetaSup beta_sup(const SimpleFn& f, const RunOptions& opt = {});

struct NormValue {
    bool diverges = false;
    Rational value;                       // exact when finite
    std::map<long, Rational> family;      // block index -> chain sum for diverging families
    std::string closed_form;              // description of the diverging family
    std::vector<Rational> chain;          // realizing chain for finite values
};

struct INorms {
    NormValue i_prime;
    NormValue i_value;
};

// best chain sum over gen chains with deltas drawn from the gap set; nullopt if some beta is infinite
struct ChainSearch {
    bool diverges = false;
    Rational best_sum;
    std::vector<Rational> chain;
    Rational best_m_delta;
    long best_m = 0;
    Rational best_delta;
    Rational diverging_delta;
};

ChainSearch chain_search(const SimpleFn& f, const RunOptions& opt = {});
INorms i_norms(const SimpleFn& f, const RunOptions& opt = {});

struct CriterionResult {
    bool pass = true;
    std::vector<int> subsequence;  // failing subsequence indices
    Ordinal atom_lo, atom_hi;      // failing atom
    Rational worst_sum;            // largest filtered sum observed
    size_t atoms = 0;
    std::uint64_t subsequences = 0;
};

// atoms of the common refinement and the value vector on each
struct AtomTable {
    std::vector<std::pair<Ordinal, Ordinal>> atoms;
    std::vector<std::vector<Rational>> values;  // values[atom][stage]
};

AtomTable atom_table(const std::vector<StepFn>& seq);
CriterionResult b14_criterion_check(const std::vector<StepFn>& seq, const Rational& eps, const Rational& c);
// serial reference of the enumeration kernel
CriterionResult b14_criterion_check_serial(const std::vector<StepFn>& seq, const Rational& eps, const Rational& c);

struct Prop85Result {
    bool holds = true;
    bool nonempty = false;
    Rational value;
    std::string detail;
};

enum class Prop85Mode { Nonempty, Chain, IPrimeCheck };
Prop85Result prop85_query(Prop85Mode mode, long m, const Rational& eps);

std::string to_string(const IndexTrace& t);
const char* terminal_name(Terminal t);
std::string spec_string(const TraceSpec& s);

}  // namespace ordlab
