#include <doctest.h>

#include "ordlab/dsl.hpp"

using namespace ordlab;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }

ErrorCode code_of(const char* text) {
    try {
        parse_function(text);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}
}  // namespace

TEST_CASE("simple forms") {
    SimpleFn f = as_simple(parse_function("fdelta(w^2; parity=odd)"));
    CHECK(f.top() == O("w^2"));
    CHECK(f.eval(Ordinal(3)) == 1);
    CHECK(as_simple(parse_function("fdelta(w^2)", Convention::Odd)).eval(Ordinal(3)) == 1);
    CHECK(as_simple(parse_function("type0(3)")).sup_norm() == Rational(1, 3));
    CHECK(as_simple(parse_function("scale(1/3, fdelta(w))")).eval(O("w")) == Rational(1, 3));
    SimpleFn c = as_simple(parse_function("const(1/2, w^2)"));
    CHECK(c.top() == O("w^2"));
    CHECK(c.eval(O("w*5")) == Rational(1, 2));
}

TEST_CASE("patch and gallery forms") {
    SimpleFn p = as_simple(parse_function("patch([0,w] -> const(1, w), [w+1,w^2] -> fdelta(w^2))"));
    CHECK(p.top() == O("w^2"));
    CHECK(p.eval(Ordinal(2)) == 1);
    CHECK(p.eval(O("w*2")) == 1);
    CHECK(p.eval(O("w + 3")) == 0);
    SimpleFn b = as_simple(parse_function("gallery(prop53b, 4)"));
    REQUIRE(b.family().has_value());
    CHECK(b.top() == prop53b(4).top());
    CHECK(as_simple(parse_function("gallery(prop53c)")).top() == O("w^(w)"));
}

TEST_CASE("structural forms") {
    AnyFn t = parse_function("type(n=1, m=8, k=2)");
    CHECK(std::holds_alternative<StructFn>(t));
    CHECK_THROWS_AS(as_simple(t), Error);
    AnyFn tr = parse_function("truncate(type(n=1, m=8, k=2), 1)");
    CHECK(std::get<StructFn>(tr).truncation == 1);
    SimpleFn fl = as_simple(parse_function("flatten(type(n=0, m=1, k=2))"));
    CHECK(fl.top() == type0(2).top());
}

TEST_CASE("errors") {
    CHECK(code_of("fdelta(w+") == ErrorCode::Parse);
    CHECK(code_of("fdelta(w + w^2)") == ErrorCode::NonCanonical);
    CHECK(code_of("gallery(nope)") == ErrorCode::UnknownGallery);
    CHECK(code_of("unknown(3)") == ErrorCode::Parse);
    CHECK(code_of("patch([0,w] -> const(1, w), [1,w] -> const(1, w))") == ErrorCode::OverlappingSupports);
    CHECK(code_of("patch([0,w] -> const(1, w), [w,w*2] -> const(1, w))") == ErrorCode::NotClopen);
}
