#include <doctest.h>

#include "ordlab/ordinal.hpp"

using namespace ordlab;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
Ordinal w() { return Ordinal::omega(); }
}  // namespace

TEST_CASE("parse and print") {
    Ordinal x = O("w^2*3 + w + 4");
    REQUIRE(x.terms().size() == 3);
    CHECK(x.terms()[0].exp == Ordinal(2));
    CHECK(x.terms()[0].coeff == 3);
    CHECK(x.terms()[1].exp == Ordinal(1));
    CHECK(x.terms()[2].coeff == 4);
    CHECK(O("w^(w)").terms().front().exp == w());
    CHECK(O("w^w") == O("w^(w)"));
    CHECK(O("w^w^2") == Ordinal::omega_pow(Ordinal::omega_pow(Ordinal(2))));
    CHECK(O("w^w*2 + 1") == Ordinal::omega_pow(w(), 2) + Ordinal(1));
    CHECK(O("0").is_zero());
    for (const char* s : {"w^2*3 + w + 4", "w^(w + 1) + w^(w)*2", "17", "w^(w^(w))"}) CHECK(O(to_string(O(s)).c_str()) == O(s));
}

TEST_CASE("parse errors") {
    auto code = [](const char* s) {
        try {
            parse_ordinal(s);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Internal;
    };
    CHECK(code("w + w^2") == ErrorCode::NonCanonical);
    CHECK(code("w+") == ErrorCode::Parse);
    CHECK(code("w^(2") == ErrorCode::Parse);
    CHECK(code("x") == ErrorCode::Parse);
    CHECK(code("w^w^w^w^w^w^w^w^w^w") == ErrorCode::DepthExceeded);
}

TEST_CASE("arithmetic and comparison") {
    CHECK(Ordinal(1) + w() == w());
    CHECK(O("w^2 + w") + O("w + 1") == O("w^2 + w*2 + 1"));
    CHECK(O("w^(w)") > O("w^3*9 + w"));
    CHECK(O("w*2") > O("w + 100"));
    CHECK(ord_sub(O("w + 1"), O("w^2")) == O("w^2"));
    CHECK(ord_sub(O("w*2"), O("w*3 + 5")) == O("w + 5"));
    CHECK(O("w*2") + ord_sub(O("w*2"), O("w*3 + 5")) == O("w*3 + 5"));
}

TEST_CASE("point classes") {
    PointClass a = classify_point(Ordinal(17));
    CHECK(a.rank == Ordinal());
    CHECK(a.kind == PointKind::Successor);
    CHECK(a.parity == Parity::Odd);
    PointClass b = classify_point(O("w^2*3 + w*5"));
    CHECK(b.rank == Ordinal(1));
    CHECK(b.kind == PointKind::Limit);
    CHECK(b.parity == Parity::Even);
    PointClass c = classify_point(O("w^(w)"));
    CHECK(c.rank == w());
    CHECK(c.parity == Parity::Even);
    CHECK(classify_point(O("w^2")).parity == Parity::Odd);
    CHECK(classify_point(O("w^(w+1)")).parity == Parity::Odd);
    CHECK(kind_of(Ordinal()) == PointKind::Zero);
}

TEST_CASE("fundamental sequences") {
    CHECK(fundamental_seq(w(), 4) == Ordinal(4));
    CHECK(fundamental_seq(O("w^2"), 3) == O("w*3"));
    CHECK(fundamental_seq(O("w^(w)"), 4) == O("w^4"));
    CHECK(fundamental_seq(O("w^2 + w"), 2) == O("w^2 + 2"));
    CHECK_THROWS_AS(fundamental_seq(Ordinal(3), 1), Error);
    // strictly increasing with supremum x: every smaller ordinal is eventually passed
    Ordinal x = O("w^3*2");
    for (std::uint64_t n = 1; n < 6; ++n) CHECK(fundamental_seq(x, n) < fundamental_seq(x, n + 1));
    CHECK(fundamental_seq(x, 8) > O("w^3 + w^2*7"));
}

TEST_CASE("complexity") {
    CHECK(complexity(O("w*7 + 2")) == 7);
    CHECK(complexity(O("w^2*3 + w + 4")) == 4);
    CHECK(complexity(O("w^(w)")) == 1);
    CHECK(complexity(O("w^(w*3)")) == 3);
    CHECK(complexity(O("w^5 + w^4 + w^3")) == 5);
    CHECK(complexity(Ordinal()) == 0);
}

TEST_CASE("round up to multiples") {
    CHECK(round_up_to_multiple(O("w + 1"), Ordinal(2)) == O("w^2"));
    CHECK(round_up_to_multiple(O("w^2"), Ordinal(2)) == O("w^2"));
    CHECK(round_up_to_multiple(O("w*3 + 1"), Ordinal(1)) == O("w*4"));
}
