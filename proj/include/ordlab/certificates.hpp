#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ordlab/fn_core.hpp"
#include "ordlab/indices.hpp"
#include "ordlab/structural.hpp"

namespace ordlab {

enum class CertKind {
    WitnessUpper,
    ChainLower,
    SeparationD,
    Approximant,
    PSDecomposition,
    IndependentFamily,
    BetaTrace,
    FamilyApproximant,
};

struct WitnessUpperData {
    std::string rule;
    std::vector<StepFn> stages;  // f_0 .. f_K
    bool finite = true;
    Rational bound;
    std::string method;
    bool exact = false;
    std::optional<Ordinal> argmax;
    std::map<long, Rational> block_bounds;
    std::map<long, Ordinal> block_argmax;  // global coordinates
};

struct ChainLowerData {
    std::vector<Rational> chain;
    IndexTrace trace;
    Rational chain_sum;
    Rational sup_norm;
    Rational bound;
    bool diverges = false;
    std::string closed_form;
    std::map<long, Rational> family;                  // block -> chain sum
    std::map<long, std::vector<Rational>> family_chains;
};

struct SeparationTerm {
    CanonicalSet c1;  // closure(K_{i-1} n [F <= a])
    CanonicalSet c2;  // closure(K_{i-1} n [F >= b])
};

struct SeparationData {
    Rational a, b;
    IndexTrace alpha;
    std::vector<SeparationTerm> terms;
    CanonicalSet d;
};

struct ApproximantData {
    long m = 0;
    std::vector<CanonicalSet> d;  // D_1 .. D_m
    // separation terms at threshold pair ((i-1)/m, i/m); D_i is the meet of the complements of the first i
    std::vector<std::vector<SeparationTerm>> terms;
    std::shared_ptr<const SimpleFn> g;
    Rational sup_error;
    bool d_finite = true;
    Rational d_bound;
    // affine normalization F' = (F - shift) * scale applied before approximating
    Rational shift = 0, scale = 1;
};

struct PSData {
    long n = 0;
    std::vector<std::vector<Ordinal>> k;  // k[j-1] = K_j
    std::vector<Ordinal> samples;
};

struct IndependentData {
    Rational a, b, a2, b2;
    long m = 0;
    std::vector<std::uint64_t> stages;  // n_1 .. n_m
    std::vector<Ordinal> witnesses;     // indexed by pattern bits: bit i set <=> point in A_{i+1}
    std::vector<std::pair<CanonicalSet, CanonicalSet>> pairs;  // present when the stages are small
};

struct BetaTraceData {
    std::string claim;  // "empty_at", "k1_empty", "k1_nonempty", "family_finite"
    Rational delta;
    IndexTrace trace;
    std::map<long, IndexTrace> blocks;
};

struct FamilyEntry {
    long n = 0, k = 0, m = 0;
    Rational sup_error;
    Rational error_bound;  // 1/(k+m)
    Rational witness_bound;
};

struct FamilyApproxData {
    long n_max = 0;
    Convention conv = Convention::Even;
    std::vector<FamilyEntry> entries;
    Rational uniform_bound;
};

using CertData = std::variant<WitnessUpperData, ChainLowerData, SeparationData, ApproximantData, PSData,
                              IndependentData, BetaTraceData, FamilyApproxData>;

struct Certificate {
    std::string id;
    CertKind kind = CertKind::WitnessUpper;
    std::string subject;
    std::shared_ptr<const SimpleFn> fn;
    CertData data;
    std::vector<std::string> notes;
};

Certificate witness_upper(const SimpleFn& f);
Certificate dnorm_lower(const SimpleFn& f, const RunOptions& opt = {});
Certificate separate_by_D(const SimpleFn& f, const Rational& a, const Rational& b, const RunOptions& opt = {});
Certificate b14_approximant(const SimpleFn& f, long m, const RunOptions& opt = {});
Certificate ps_decomposition(const SimpleFn& f, long n, std::uint64_t seed = 7);
Certificate independent_family(const SimpleFn& f, const Rational& a, const Rational& b, const Rational& a2,
                               const Rational& b2, long m, const RunOptions& opt = {});
Certificate beta_certificate(const SimpleFn& f, const std::string& claim, const Rational& delta,
                             const RunOptions& opt = {});
Certificate family_approximant(long n_max, Convention conv, long k_max = 2);

struct VerifyResult {
    bool ok = true;
    std::string detail;
};

VerifyResult verify(const Certificate& c);

const char* cert_kind_name(CertKind k);

}  // namespace ordlab
