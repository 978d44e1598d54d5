#include <doctest.h>

#include <algorithm>
#include <random>

#include "ordlab/sampling.hpp"
#include "ordlab/witness.hpp"

using namespace ordlab;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }

// every w^2*a + w*b + c below top with at most n nonzero terms and coefficients <= n
std::vector<Ordinal> brute_simple(std::uint64_t n, const Ordinal& top) {
    std::vector<Ordinal> out;
    for (std::uint64_t a = 0; a <= n; ++a)
        for (std::uint64_t b = 0; b <= n; ++b)
            for (std::uint64_t c = 0; c <= n; ++c) {
                if ((a > 0) + (b > 0) + (c > 0) > static_cast<int>(n)) continue;
                if (a > 0 && n < 2) continue;  // the exponent 2 has complexity 2
                Ordinal x = Ordinal::omega_pow(Ordinal(2), a) + Ordinal::omega_pow(Ordinal(1), b) + Ordinal(c);
                if (a == 0) x = Ordinal::omega_pow(Ordinal(1), b) + Ordinal(c);
                if (a == 0 && b == 0) x = Ordinal(c);
                if (x <= top) out.push_back(x);
            }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Ordinal brute_reveal(const Ordinal& x, std::uint64_t n, const Ordinal& top) {
    for (const auto& y : brute_simple(n, top))
        if (y >= x) return y;
    return top;
}

Rational brute_variation(const SimpleFn& f, const Ordinal& x) {
    Rational prev = 0, sum = 0;
    for (std::uint64_t k = 1; k <= complexity(x) + 1; ++k) {
        Rational v = f.eval(brute_reveal(x, k, f.top()));
        sum += rat_abs(v - prev);
        prev = v;
    }
    return sum;
}
}  // namespace

TEST_CASE("reveal points against brute enumeration") {
    std::mt19937_64 rng(9);
    Ordinal top = O("w^2*3 + w");
    for (int i = 0; i < 300; ++i) {
        Ordinal x = random_ordinal(top, rng);
        for (std::uint64_t n = 1; n <= 4; ++n) REQUIRE(reveal_point(x, n, top) == brute_reveal(x, n, top));
    }
    CHECK(enumerate_simple(3, O("w^2")) == brute_simple(3, O("w^2")));
}

TEST_CASE("witness stages") {
    SimpleFn f = f_delta(O("w"));
    CHECK(witness_value(f, 0, Ordinal(7)) == 0);
    CHECK(witness_value(f, 1, Ordinal(7)) == 1);  // revealed at w
    CHECK(witness_value(f, 7, Ordinal(7)) == 0);
    StepFn s = witness_stage(f, 2);
    for (std::uint64_t x = 0; x < 6; ++x) CHECK(s.eval(Ordinal(x)) == witness_value(f, 2, Ordinal(x)));
}

TEST_CASE("variation against brute recomputation") {
    std::mt19937_64 rng(13);
    std::vector<SimpleFn> fns = {f_delta(O("w^2")), f_delta(O("w^2"), Convention::Odd), type0(2),
                                 SimpleFn::constant(O("w^2"), parse_rational("-2/3"))};
    for (const auto& f : fns) {
        for (int i = 0; i < 100; ++i) {
            Ordinal x = random_ordinal(f.top(), rng);
            REQUIRE(witness_variation(f, x) == brute_variation(f, x));
            // stage 0 is identically zero, so even complexity-0 points need one stage
            CHECK(stabilization_stage(f, x) <= std::max<std::uint64_t>(1, complexity(x)));
            CHECK(witness_value(f, stabilization_stage(f, x), x) == f.eval(x));
        }
    }
}

TEST_CASE("witness bounds") {
    CHECK(witness_bound(f_delta(O("w"))).bound == 2);
    CHECK(witness_bound(f_delta(O("w"), Convention::Odd)).bound == 1);
    CHECK(witness_bound(SimpleFn::constant(O("w^3"), parse_rational("-5/7"))).bound == parse_rational("5/7"));
    WitnessBound b = witness_bound(f_delta(O("w^2")));
    REQUIRE(b.finite);
    CHECK(max_variation_enum(f_delta(O("w^2")), 4).max <= b.bound);
}

TEST_CASE("parallel and serial variation kernels agree") {
    for (const SimpleFn& f : {f_delta(O("w^3")), type0(3), prop53d()}) {
        EnumResult p = max_variation_enum(f, 3), s = max_variation_enum_serial(f, 3);
        CHECK(p.max == s.max);
        CHECK(p.points == s.points);
    }
}
