#include <doctest.h>

#include "ordlab/classify.hpp"

using namespace ordlab;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }

void check_nested(const ClassReport& r) {
    const ClassEntry* chain[] = {&r.continuous, &r.dbsc, &r.b14, &r.b12, &r.b1};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            if (chain[i]->verdict == Verdict::CertifiedYes) CHECK(chain[j]->verdict != Verdict::CertifiedNo);
            if (chain[j]->verdict == Verdict::CertifiedNo) CHECK(chain[i]->verdict != Verdict::CertifiedYes);
        }
}
}  // namespace

TEST_CASE("constant") {
    ClassReport r = classify(SimpleFn::constant(O("w^2"), 0));
    for (const ClassEntry* e : {&r.continuous, &r.dbsc, &r.b14, &r.b12, &r.b1}) CHECK(e->verdict == Verdict::CertifiedYes);
    CHECK(r.beta_sup == "1");
}

TEST_CASE("F_delta") {
    ClassReport r = classify(f_delta(O("w^2")));
    CHECK(r.continuous.verdict == Verdict::CertifiedNo);
    CHECK(r.dbsc.verdict == Verdict::CertifiedYes);
    CHECK(r.beta_sup == "3");
    check_nested(r);
    for (const auto& c : r.certificates) CHECK(verify(c).ok);
}

TEST_CASE("prop53c is Baire-1 but not in B_{1/2}") {
    ClassReport r = classify(prop53c());
    CHECK(r.b12.verdict == Verdict::CertifiedNo);
    CHECK(r.b1.verdict == Verdict::CertifiedYes);
    CHECK(r.beta_sup == "w + 1");
    check_nested(r);
}

TEST_CASE("prop53d") {
    ClassReport r = classify(prop53d());
    CHECK(r.dbsc.verdict == Verdict::CertifiedYes);
    CHECK(r.continuous.verdict == Verdict::CertifiedNo);
    check_nested(r);
}

TEST_CASE("prop53b separates B_{1/2} from B_{1/4}") {
    ClassReport r = classify(prop53b(5));
    CHECK(r.b12.verdict == Verdict::CertifiedYes);
    CHECK(r.b14.verdict == Verdict::CertifiedNo);
    CHECK(r.dbsc.verdict == Verdict::CertifiedNo);
    check_nested(r);
    for (const auto& c : r.certificates) CHECK(verify(c).ok);
}

TEST_CASE("descriptor conventions") {
    CHECK(descriptor_convention("prop53b(3; parity=odd)") == Convention::Odd);
    CHECK(descriptor_convention("fdelta(w^2)") == Convention::Even);
    CHECK(std::string(verdict_name(Verdict::PaperCited)).size() > 0);
}
