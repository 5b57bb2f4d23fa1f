#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lipsat/parse.hpp"
#include "lipsat/puiseux.hpp"

using namespace lipsat;

namespace {
const char* kCorpus[] = {"x*y",       "x^2-y^3",        "x^2+y^5",
                         "x^3+y^4",   "x^3-y^7",        "(x^2-y^3)*(x^2+y^5)"};
}

TEST_CASE("squarefree part") {
    CHECK(squarefree_part(parse_poly("x^2+y^5")) == parse_poly("x^2+y^5"));
    CHECK(squarefree_part(parse_poly("x^2*y")) == parse_poly("x*y"));
    CHECK(squarefree_part(parse_poly("(x+y)^2")) == parse_poly("x+y"));
    CHECK(squarefree_part(parse_poly("(x^2-y^3)^2*(x+y)")) == parse_poly("(x^2-y^3)*(x+y)"));
    CHECK_THROWS_AS((void)squarefree_part(parse_poly("x+1")), Error);
}

TEST_CASE("axes factor into coordinate branches") {
    auto bs = puiseux_branches(parse_poly("x*y"));
    REQUIRE(bs.size() == 2);
    // one branch per axis, both smooth
    bool seen_x0 = false, seen_y0 = false;
    for (const auto& b : bs) {
        CHECK(b.mult == 1);
        if (b.comps[0].is_exact_zero()) seen_x0 = true;
        if (b.comps[1].is_exact_zero()) seen_y0 = true;
    }
    CHECK(seen_x0);
    CHECK(seen_y0);
}

TEST_CASE("cusp x^2 - y^3") {
    auto bs = puiseux_branches(parse_poly("x^2-y^3"));
    REQUIRE(bs.size() == 1);
    const Branch& b = bs[0];
    CHECK(b.comps[0] == PSeries::monomial(CycRat::one(), rat(3)));
    CHECK(b.comps[1] == PSeries::monomial(CycRat::one(), rat(2)));
    CHECK(b.mult == 2);
    // substitution oracle: t^6 - t^6 = 0
    PSeries res = poly_substitute(parse_poly("x^2-y^3"), b.assignment());
    CHECK(res.is_exact_zero());
}

TEST_CASE("cusp curve x^2 + y^5") {
    auto bs = puiseux_branches(parse_poly("x^2+y^5"));
    REQUIRE(bs.size() == 1);
    const Branch& b = bs[0];
    // (t^5, -t^2) up to reparametrization; our canonical form is exactly that
    CHECK(b.comps[0] == PSeries::monomial(CycRat::one(), rat(5)));
    CHECK(b.comps[1] == PSeries::monomial(CycRat(rat(-1)), rat(2)));
    CHECK(b.mult == 2);
    CHECK(b.str() == "(t^5, -t^2)");
    CHECK(poly_substitute(parse_poly("x^2+y^5"), b.assignment()).is_exact_zero());
}

TEST_CASE("quasi-homogeneous x^a + y^b gives gcd(a,b) branches with orders (b/d, a/d)") {
    struct Case { const char* f; long a, b; };
    for (const Case& c : {Case{"x^3+y^4", 3, 4}, Case{"x^2+y^4", 2, 4}, Case{"x^2+y^6", 2, 6},
                          Case{"x^3-y^7", 3, 7}, Case{"x^4+y^6", 4, 6}}) {
        Poly f = parse_poly(c.f);
        auto bs = puiseux_branches(f);
        long d = gcd_long(c.a, c.b);
        REQUIRE(bs.size() == (size_t)d);
        for (const auto& b : bs) {
            CHECK(b.comps[0].order() == rat(c.b / d));
            CHECK(b.comps[1].order() == rat(c.a / d));
            CHECK(verify_branch(f, b, default_truncation(f)));
        }
    }
}

TEST_CASE("branch multiplicities sum to the curve order on the corpus") {
    for (const char* s : kCorpus) {
        Poly f = parse_poly(s);
        auto bs = puiseux_branches(f);
        long sum = 0;
        for (const auto& b : bs) sum += b.mult;
        CHECK(sum == f.order_at_origin());
    }
}

TEST_CASE("every corpus branch passes verify_branch at twice default truncation") {
    for (const char* s : kCorpus) {
        Poly f = parse_poly(s);
        Rat T2 = default_truncation(f) * 2;
        auto bs = puiseux_branches(f, T2);
        for (const auto& b : bs) CHECK(verify_branch(f, b, T2));
    }
}

TEST_CASE("verify_branch rejects a wrong parametrization") {
    Poly f = parse_poly("x^2+y^5");
    Branch good = puiseux_branches(f)[0];
    Branch bad = good;
    bad.comps[1] = PSeries::monomial(CycRat::one(), rat(2)); // (t^5, +t^2): residual 2t^10
    CHECK(verify_branch(f, good, rat(40)));
    CHECK(!verify_branch(f, bad, rat(40)));
    PSeries res = poly_substitute(f, bad.assignment());
    CHECK(res.order() == rat(10));
    CHECK(res.lead_coeff() == CycRat(rat(2)));
}

TEST_CASE("non-squarefree input is rejected") {
    CHECK_THROWS_AS((void)puiseux_branches(parse_poly("(x+y)^2")), Error);
    CHECK_THROWS_AS((void)puiseux_branches(parse_poly("x^2*y")), Error);
}

TEST_CASE("unit at origin is rejected") {
    CHECK_THROWS_AS((void)puiseux_branches(parse_poly("x^2+y^5+1")), Error);
}

TEST_CASE("non-cyclotomic extension fails cleanly") {
    // leading coefficients need a cube root of 2
    Poly f = parse_poly("x^3-2*y^3");
    CHECK_THROWS_WITH_AS((void)puiseux_branches(f), doctest::Contains("UnsupportedExtension"),
                         Error);
}

TEST_CASE("dense expansion: tacnode-like fiber x^2 + y^4*(w0 + y)") {
    for (long w0 : {1L, 2L, 3L}) {
        Poly f = parse_poly("x^2 + " + std::to_string(w0) + "*y^4 + y^5");
        auto bs = puiseux_branches(f);
        REQUIRE(bs.size() == 2);
        for (const auto& b : bs) {
            CHECK(b.mult == 1);
            CHECK(b.comps[1].order() == rat(1)); // smooth branches tangent to x=0
            CHECK(b.comps[0].order() == rat(2));
            CHECK(verify_branch(f, b, default_truncation(f)));
        }
    }
}

TEST_CASE("node with rational tangents x^2 - y^2 - y^3") {
    Poly f = parse_poly("x^2 - y^2 - y^3");
    auto bs = puiseux_branches(f);
    REQUIRE(bs.size() == 2);
    for (const auto& b : bs) {
        CHECK(b.mult == 1);
        CHECK(verify_branch(f, b, default_truncation(f)));
    }
}

TEST_CASE("higher ramification at a deeper recursion level") {
    // (x^2 - y^3)^2 = x^7 has branches with second-stage ramification
    Poly f = parse_poly("(x^2-y^3)^2 - x^7");
    auto bs = puiseux_branches(f);
    CHECK(!bs.empty());
    long sum = 0;
    for (const auto& b : bs) {
        CHECK(verify_branch(f, b, default_truncation(f)));
        sum += b.mult;
    }
    CHECK(sum == f.order_at_origin());
}

TEST_CASE("univariate roots with multiplicities") {
    // (C-1)^2 (C+2)
    UPoly p{CycRat(rat(2)), CycRat(rat(-3)), CycRat(rat(0)), CycRat::one()};
    auto roots = upoly_roots(p);
    REQUIRE(roots.size() == 2);
    for (auto& [r, m] : roots) {
        if (r == CycRat::one()) CHECK(m == 2);
        else CHECK((r == CycRat(rat(-2)) && m == 1));
    }
    // C^5 + 1: all five 5th roots of -1, one of them rational
    UPoly b5{CycRat::one(), CycRat::zero(), CycRat::zero(), CycRat::zero(), CycRat::zero(),
             CycRat::one()};
    auto r5 = upoly_roots(b5);
    CHECK(r5.size() == 5);
    for (auto& [r, m] : r5) {
        CHECK(m == 1);
        CHECK(r.pow(5) == CycRat(rat(-1)));
    }
}
