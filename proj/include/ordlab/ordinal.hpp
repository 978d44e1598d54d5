#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ordlab/common.hpp"

namespace ordlab {

// Ordinal below epsilon_0 in Cantor normal form.
class Ordinal {
public:
    struct Term;

    Ordinal() = default;
    explicit Ordinal(std::uint64_t n);
    // terms must already be canonical: strictly decreasing exponents, coefficients >= 1
    static Ordinal from_terms(std::vector<Term> terms);
    static Ordinal omega();
    static Ordinal omega_pow(const Ordinal& e, std::uint64_t c = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const;
    // coefficient of the omega^0 term
    std::uint64_t finite_part() const;
    // the ordinal with its finite part removed
    Ordinal limit_part() const;
    std::uint64_t as_nat() const;
    int depth() const;

    std::strong_ordering operator<=>(const Ordinal& o) const;
    bool operator==(const Ordinal& o) const;

    Ordinal operator+(const Ordinal& o) const;
    Ordinal succ() const;

    static int max_depth();
    static void set_max_depth(int d);

private:
    std::vector<Term> terms_;
};

struct Ordinal::Term {
    Ordinal exp;
    std::uint64_t coeff = 1;
    bool operator==(const Term& o) const { return coeff == o.coeff && exp == o.exp; }
};

// d with a + d = b; requires a <= b
Ordinal ord_sub(const Ordinal& a, const Ordinal& b);

enum class PointKind { Zero, Successor, Limit };
enum class Parity { Even, Odd };

struct PointClass {
    Ordinal rank;
    PointKind kind;
    Parity parity;
};

Ordinal rank_of(const Ordinal& x);
PointKind kind_of(const Ordinal& x);
// parity of the subscript 1+rank of the I-set containing points of this rank
Parity rank_parity(const Ordinal& rank);
PointClass classify_point(const Ordinal& x);

Ordinal fundamental_seq(const Ordinal& x, std::uint64_t n);

std::uint64_t complexity(const Ordinal& x);

// least multiple of omega^r that is >= x (r >= 1 gives nonzero result)
Ordinal round_up_to_multiple(const Ordinal& x, const Ordinal& r);

Ordinal parse_ordinal(const std::string& text);
std::string to_string(const Ordinal& x);
const char* kind_name(PointKind k);
const char* parity_name(Parity p);

}  // namespace ordlab
