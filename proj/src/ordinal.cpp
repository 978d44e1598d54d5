#include "ordlab/ordinal.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <limits>

namespace ordlab {

namespace {

std::atomic<int> g_max_depth{8};

void check_depth(const Ordinal& x) {
    if (x.depth() > Ordinal::max_depth())
        throw Error(ErrorCode::DepthExceeded, "nesting depth " + std::to_string(x.depth()));
}

std::uint64_t add_coeff(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) throw Error(ErrorCode::RangeError, "coefficient overflow");
    return a + b;
}

}  // namespace

int Ordinal::max_depth() { return g_max_depth.load(); }
void Ordinal::set_max_depth(int d) { g_max_depth.store(d); }

Ordinal::Ordinal(std::uint64_t n) {
    if (n > 0) terms_.push_back(Term{Ordinal(), n});
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    for (size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coeff == 0) throw Error(ErrorCode::NonCanonical, "zero coefficient");
        if (i > 0 && !(terms[i].exp < terms[i - 1].exp))
            throw Error(ErrorCode::NonCanonical, "exponents not strictly decreasing");
    }
    Ordinal r;
    r.terms_ = std::move(terms);
    check_depth(r);
    return r;
}

Ordinal Ordinal::omega() { return omega_pow(Ordinal(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& e, std::uint64_t c) {
    if (c == 0) return Ordinal();
    Ordinal r;
    r.terms_.push_back(Term{e, c});
    check_depth(r);
    return r;
}

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.is_zero()); }

std::uint64_t Ordinal::finite_part() const {
    if (terms_.empty() || !terms_.back().exp.is_zero()) return 0;
    return terms_.back().coeff;
}

Ordinal Ordinal::limit_part() const {
    Ordinal r = *this;
    if (!r.terms_.empty() && r.terms_.back().exp.is_zero()) r.terms_.pop_back();
    return r;
}

std::uint64_t Ordinal::as_nat() const {
    if (!is_finite()) throw Error(ErrorCode::RangeError, "not a natural number: " + to_string(*this));
    return finite_part();
}

int Ordinal::depth() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp.depth());
    return terms_.empty() ? 0 : d + 1;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& o) const {
    size_t n = std::min(terms_.size(), o.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        auto c = terms_[i].exp <=> o.terms_[i].exp;
        if (c != 0) return c;
        if (terms_[i].coeff != o.terms_[i].coeff) return terms_[i].coeff <=> o.terms_[i].coeff;
    }
    return terms_.size() <=> o.terms_.size();
}

bool Ordinal::operator==(const Ordinal& o) const { return terms_ == o.terms_; }

Ordinal Ordinal::operator+(const Ordinal& o) const {
    if (o.is_zero()) return *this;
    const Ordinal& e = o.terms_[0].exp;
    Ordinal r;
    size_t i = 0;
    while (i < terms_.size() && terms_[i].exp > e) r.terms_.push_back(terms_[i++]);
    Term head = o.terms_[0];
    if (i < terms_.size() && terms_[i].exp == e) head.coeff = add_coeff(head.coeff, terms_[i].coeff);
    r.terms_.push_back(head);
    for (size_t j = 1; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Ordinal Ordinal::succ() const { return *this + Ordinal(1); }

Ordinal ord_sub(const Ordinal& a, const Ordinal& b) {
    if (b < a) throw Error(ErrorCode::RangeError, "left subtraction needs a <= b");
    const auto& at = a.terms();
    const auto& bt = b.terms();
    size_t i = 0;
    while (i < at.size() && at[i] == bt[i]) ++i;
    std::vector<Ordinal::Term> rest;
    if (i == at.size()) {
        rest.assign(bt.begin() + static_cast<long>(i), bt.end());
    } else if (at[i].exp == bt[i].exp) {
        rest.push_back(Ordinal::Term{bt[i].exp, bt[i].coeff - at[i].coeff});
        rest.insert(rest.end(), bt.begin() + static_cast<long>(i) + 1, bt.end());
    } else {
        rest.assign(bt.begin() + static_cast<long>(i), bt.end());
    }
    return Ordinal::from_terms(std::move(rest));
}

Ordinal rank_of(const Ordinal& x) {
    if (x.is_zero()) return Ordinal();
    return x.terms().back().exp;
}

PointKind kind_of(const Ordinal& x) {
    if (x.is_zero()) return PointKind::Zero;
    return x.terms().back().exp.is_zero() ? PointKind::Successor : PointKind::Limit;
}

Parity rank_parity(const Ordinal& rank) {
    std::uint64_t k = rank.finite_part();
    if (rank.is_finite()) return (k % 2 == 1) ? Parity::Even : Parity::Odd;
    return (k % 2 == 0) ? Parity::Even : Parity::Odd;
}

PointClass classify_point(const Ordinal& x) {
    Ordinal r = rank_of(x);
    return PointClass{r, kind_of(x), rank_parity(r)};
}

Ordinal fundamental_seq(const Ordinal& x, std::uint64_t n) {
    if (kind_of(x) != PointKind::Limit) throw Error(ErrorCode::NotLimit, to_string(x));
    if (n == 0) throw Error(ErrorCode::BadParams, "fundamental sequence index starts at 1");
    std::vector<Ordinal::Term> t = x.terms();
    Ordinal::Term last = t.back();
    t.pop_back();
    if (last.coeff > 1) t.push_back(Ordinal::Term{last.exp, last.coeff - 1});
    Ordinal prefix = Ordinal::from_terms(std::move(t));
    const Ordinal& e = last.exp;
    Ordinal tail;
    if (kind_of(e) == PointKind::Successor) {
        std::vector<Ordinal::Term> et = e.terms();
        if (et.back().coeff == 1) et.pop_back();
        else et.back().coeff -= 1;
        tail = Ordinal::omega_pow(Ordinal::from_terms(std::move(et)), n);
    } else {
        tail = Ordinal::omega_pow(fundamental_seq(e, n));
    }
    return prefix + tail;
}

std::uint64_t complexity(const Ordinal& x) {
    if (x.is_zero()) return 0;
    std::uint64_t c = x.terms().size();
    for (const auto& t : x.terms()) c = std::max({c, t.coeff, complexity(t.exp)});
    return c;
}

Ordinal round_up_to_multiple(const Ordinal& x, const Ordinal& r) {
    if (r.is_zero()) return x;
    if (x.is_zero()) return Ordinal::omega_pow(r);
    std::vector<Ordinal::Term> keep;
    bool cut = false;
    for (const auto& t : x.terms()) {
        if (t.exp >= r) keep.push_back(t);
        else cut = true;
    }
    Ordinal p = Ordinal::from_terms(std::move(keep));
    return cut ? p + Ordinal::omega_pow(r) : p;
}

namespace {

class OrdParser {
public:
    explicit OrdParser(const std::string& s) {
        for (char ch : s)
            if (!std::isspace(static_cast<unsigned char>(ch))) src_ += ch;
    }

    Ordinal parse_all() {
        Ordinal r = ord();
        if (pos_ != src_.size()) fail("trailing input");
        return r;
    }

private:
    std::string src_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw Error(ErrorCode::Parse, why + " at offset " + std::to_string(pos_) + " in '" + src_ + "'");
    }
    bool eat(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::uint64_t nat() {
        size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            unsigned d = static_cast<unsigned>(src_[pos_] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("number too large");
            v = v * 10 + d;
            ++pos_;
        }
        if (pos_ == start) fail("expected number");
        return v;
    }
    // w^w^2 reads as w^(w^2); a coefficient after an exponent tower applies to the whole power
    Ordinal exponent() {
        if (eat('(')) {
            Ordinal e = ord();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (eat('w')) return Ordinal::omega_pow(eat('^') ? exponent() : Ordinal(1));
        return Ordinal(nat());
    }
    Ordinal::Term term() {
        if (eat('w')) {
            Ordinal e(1);
            if (eat('^')) e = exponent();
            std::uint64_t c = 1;
            if (eat('*')) c = nat();
            return Ordinal::Term{e, c};
        }
        return Ordinal::Term{Ordinal(), nat()};
    }
    Ordinal ord() {
        std::vector<Ordinal::Term> ts;
        ts.push_back(term());
        while (eat('+')) ts.push_back(term());
        if (ts.size() == 1 && ts[0].exp.is_zero() && ts[0].coeff == 0) return Ordinal();
        return Ordinal::from_terms(std::move(ts));
    }
};

}  // namespace

Ordinal parse_ordinal(const std::string& text) { return OrdParser(text).parse_all(); }

std::string to_string(const Ordinal& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& t : x.terms()) {
        if (!out.empty()) out += " + ";
        if (t.exp.is_zero()) {
            out += std::to_string(t.coeff);
            continue;
        }
        out += "w";
        if (t.exp.is_finite()) {
            if (t.exp.finite_part() != 1) out += "^" + std::to_string(t.exp.finite_part());
        } else {
            out += "^(" + to_string(t.exp) + ")";
        }
        if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
    }
    return out;
}

const char* kind_name(PointKind k) {
    switch (k) {
        case PointKind::Zero: return "zero";
        case PointKind::Successor: return "successor";
        case PointKind::Limit: return "limit";
    }
    return "?";
}

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

}  // namespace ordlab
