#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lipsat/parse.hpp"
#include "lipsat/poly.hpp"
#include "lipsat/pseries.hpp"

using namespace lipsat;

namespace {

CycRat random_cycrat(std::mt19937_64& rng, bool allow_zeta = true) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4), pick(0, 3);
    CycRat x(rat(num(rng), den(rng)));
    if (allow_zeta && pick(rng) == 0) x *= CycRat::root_of_unity(5, 1 + num(rng) % 3);
    if (allow_zeta && pick(rng) == 1) x += CycRat::root_of_unity(3);
    return x;
}

} // namespace

TEST_CASE("cyclotomic root-of-unity orders") {
    CycRat z5 = CycRat::root_of_unity(5);
    CycRat acc = CycRat::one();
    for (int i = 0; i < 5; ++i) acc *= z5;
    CHECK(acc == CycRat::one());

    CycRat z3 = CycRat::root_of_unity(3);
    CHECK((CycRat::one() + z3 + z3 * z3).is_zero());

    CHECK(CycRat(rat(2)).inv() == CycRat(rat(1, 2)));
    CHECK_THROWS_AS((void)CycRat::zero().inv(), Error);
}

TEST_CASE("cyclotomic field axioms on random triples") {
    std::mt19937_64 rng(20260808);
    for (int i = 0; i < 60; ++i) {
        CycRat a = random_cycrat(rng), b = random_cycrat(rng), c = random_cycrat(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inv() == CycRat::one());
    }
}

TEST_CASE("mixed-level arithmetic embeds into the lcm field") {
    CycRat z4 = CycRat::root_of_unity(4);
    CycRat z6 = CycRat::root_of_unity(6);
    CycRat prod = z4 * z6;          // zeta_12^(3+2)
    CHECK(prod == CycRat::root_of_unity(12, 5));
    CHECK(z4.pow(2) == CycRat(rat(-1)));
    CHECK(z6.pow(3) == CycRat(rat(-1)));
}

TEST_CASE("conjugation and norm") {
    CycRat z5 = CycRat::root_of_unity(5);
    CHECK(z5.conj() == z5.pow(4));
    CHECK(z5.norm_squared() == CycRat::one());
    CycRat x = CycRat(rat(3, 2)) * z5.pow(2);
    CHECK(x.norm_squared() == CycRat(rat(9, 4)));
}

TEST_CASE("gauss-sum square roots") {
    for (long n : {2L, 3L, 5L, 6L, 7L, 10L, 12L, 49L}) {
        CycRat r = cyc_sqrt(rat(n));
        CHECK(r * r == CycRat(rat(n)));
    }
    CycRat rneg = cyc_sqrt(rat(-2));
    CHECK(rneg * rneg == CycRat(rat(-2)));
    CycRat rq = cyc_sqrt(rat(9, 4));
    CHECK(rq == CycRat(rat(3, 2)));
}

TEST_CASE("rational-times-root-of-unity decomposition") {
    CycRat x = CycRat(rat(3, 2)) * CycRat::root_of_unity(5, 2);
    auto form = as_rational_times_root_of_unity(x);
    REQUIRE(form.has_value());
    CHECK(form->r == rat(3, 2));
    CHECK(CycRat(form->r) * CycRat::root_of_unity(form->order, form->power) == x);

    auto none = as_rational_times_root_of_unity(CycRat::one() + CycRat::root_of_unity(5));
    CHECK(!none.has_value());
}

TEST_CASE("cyclotomic d-th roots") {
    auto roots = cyc_roots(CycRat(rat(-1)), 5);
    REQUIRE(roots.has_value());
    CHECK(roots->size() == 5);
    bool has_rational = false;
    for (const auto& r : *roots) {
        CHECK(r.pow(5) == CycRat(rat(-1)));
        if (r == CycRat(rat(-1))) has_rational = true;
    }
    CHECK(has_rational);

    // cube root of 2 is not cyclotomic
    CHECK(!cyc_roots(CycRat(rat(2)), 3).has_value());

    // square roots of rationals always exist
    auto sq = cyc_roots(CycRat(rat(-1, 2)), 2);
    REQUIRE(sq.has_value());
    CHECK((*sq)[0] * (*sq)[0] == CycRat(rat(-1, 2)));
}

TEST_CASE("series basics and order bookkeeping") {
    PSeries t2 = PSeries::monomial(CycRat::one(), rat(2));
    PSeries t3 = PSeries::monomial(CycRat::one(), rat(3));
    CHECK((t2 * t3).order() == rat(5));

    PSeries s = PSeries::monomial(CycRat(rat(3)), rat(7)) - PSeries::monomial(CycRat::one(), rat(9));
    CHECK(s.order() == rat(7));

    PSeries z = PSeries::zero_truncated(rat(12));
    CHECK(!z.order().has_value());
    CHECK(z.trunc() == rat(12));

    // (1 - c) t^2 with c = zeta_5 has order 2: the coefficient is nonzero
    CycRat c = CycRat::root_of_unity(5);
    PSeries tw = PSeries::monomial(CycRat::one() - c, rat(2));
    CHECK(tw.order() == rat(2));
}

TEST_CASE("series compose and derive") {
    PSeries t3 = PSeries::monomial(CycRat::one(), rat(3));
    PSeries t2 = PSeries::monomial(CycRat::one(), rat(2));
    CHECK(t3.compose(t2).order() == rat(6));

    PSeries t5 = PSeries::monomial(CycRat::one(), rat(5));
    PSeries d = t5.derive();
    CHECK(d.order() == rat(4));
    CHECK(d.lead_coeff() == CycRat(rat(5)));

    PSeries unit = PSeries::constant(CycRat::one()) + PSeries::var();
    CHECK_THROWS_AS((void)t3.compose(unit), Error);
}

TEST_CASE("series multiplication respects truncation") {
    PSeries a = (PSeries::monomial(CycRat::one(), rat(2))).truncated(rat(10));
    PSeries b = (PSeries::monomial(CycRat::one(), rat(3))).truncated(rat(10));
    PSeries p = a * b;
    CHECK(p.order() == rat(5));
    REQUIRE(p.trunc().has_value());
    CHECK(*p.trunc() == rat(12)); // min(10+3, 10+2)

    // order additivity when both orders are visible
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> e(1, 4), c(1, 5);
    for (int i = 0; i < 30; ++i) {
        PSeries x = PSeries::monomial(CycRat(rat(c(rng))), rat(e(rng))) +
                    PSeries::monomial(CycRat(rat(c(rng))), rat(e(rng) + 4));
        PSeries y = PSeries::monomial(CycRat(rat(c(rng))), rat(e(rng))) +
                    PSeries::monomial(CycRat(rat(c(rng))), rat(e(rng) + 3));
        PSeries xy = x * y;
        REQUIRE(x.order().has_value());
        REQUIRE(y.order().has_value());
        CHECK(xy.order() == *x.order() + *y.order());
    }
}

TEST_CASE("series division") {
    // (t^2 + t^3) / (1 + t) = t^2 exactly
    PSeries num = PSeries::monomial(CycRat::one(), rat(2)) + PSeries::monomial(CycRat::one(), rat(3));
    PSeries den = PSeries::constant(CycRat::one()) + PSeries::var();
    PSeries q = PSeries::divide(num, den);
    CHECK(q.exact());
    CHECK(q == PSeries::monomial(CycRat::one(), rat(2)));

    // non-terminating exact division needs a cap
    PSeries one = PSeries::constant(CycRat::one());
    PSeries g = PSeries::divide(one, den, rat(5));
    REQUIRE(g.trunc().has_value());
    CHECK(*g.trunc() == rat(5));
    // 1/(1+t) = 1 - t + t^2 - ...
    CHECK(g.coeff(rat(3)) == CycRat(rat(-1)));
    PSeries check = g * den; // 1 + O(t^5)
    CHECK(check.coeff(rat(0)) == CycRat::one());
    CHECK(check.coeff(rat(1)).is_zero());
    CHECK(check.coeff(rat(4)).is_zero());
}

TEST_CASE("poly arithmetic and partials") {
    Poly f = parse_poly("x^2+y^5");
    CHECK(f.partial("x") == parse_poly("2*x"));
    CHECK(f.partial("y") == parse_poly("5*y^4"));
    CHECK(parse_poly("x+y") * parse_poly("x-y") == parse_poly("x^2-y^2"));
    CHECK_THROWS_AS((void)f.partial("w"), Error);
}

TEST_CASE("poly substitution is the pullback") {
    Poly f = parse_poly("x^2+y^5");
    std::map<std::string, PSeries> phi{
        {"x", PSeries::monomial(CycRat::one(), rat(5))},
        {"y", PSeries::monomial(CycRat(rat(-1)), rat(2))},
    };
    PSeries pull = poly_substitute(f, phi);
    CHECK(pull.is_exact_zero()); // t^10 + (-t^2)^5 cancels exactly

    CHECK(poly_substitute(parse_poly("y^3"), phi).order() == rat(6));
    std::map<std::string, PSeries> one{{"x", PSeries::monomial(CycRat::one(), rat(5))},
                                       {"y", PSeries::var()}};
    CHECK(poly_substitute(parse_poly("x"), one).order() == rat(5));

    std::map<std::string, PSeries> missing{{"x", PSeries::var()}};
    CHECK_THROWS_AS((void)poly_substitute(f, missing), Error);
}

TEST_CASE("poly substitution is a ring homomorphism") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> cf(-3, 3), ex(0, 3);
    auto random_poly = [&]() {
        Poly p;
        for (int terms = 0; terms < 4; ++terms) {
            Poly mono = Poly::constant(CycRat(rat(cf(rng))));
            mono *= Poly::variable("x").pow(ex(rng));
            mono *= Poly::variable("y").pow(ex(rng));
            p += mono;
        }
        return p;
    };
    for (int i = 0; i < 20; ++i) {
        Poly f = random_poly(), g = random_poly();
        std::map<std::string, PSeries> phi{
            {"x", PSeries::monomial(CycRat(rat(cf(rng))), rat(1)) +
                      PSeries::monomial(CycRat::one(), rat(3))},
            {"y", PSeries::monomial(CycRat(rat(cf(rng))), rat(2))},
        };
        CHECK(poly_substitute(f * g, phi) == poly_substitute(f, phi) * poly_substitute(g, phi));
        CHECK(poly_substitute(f + g, phi) == poly_substitute(f, phi) + poly_substitute(g, phi));
    }
}

TEST_CASE("parser grammar") {
    CHECK(parse_poly("3/2*x^2*y + (z5)*y^4").coeff({"x", "y"}, {2, 1}) == CycRat(rat(3, 2)));
    CHECK(parse_poly("(z5)*y^4").coeff({"y"}, {4}) == CycRat::root_of_unity(5));
    CHECK(parse_poly("x'*y - x").vars() == std::vector<std::string>{"x", "x'", "y"});
    CHECK(parse_poly("(x+y)^2") == parse_poly("x^2+2*x*y+y^2"));
    CHECK(parse_cycrat("(z8)^2") == CycRat::root_of_unity(4));
    CHECK_THROWS_AS((void)parse_poly("x^"), Error);
    CHECK_THROWS_AS((void)parse_poly("x + + $"), Error);
    // round trip through str()
    Poly p = parse_poly("x^2 - 2*x*y + (z5)^3*y^2 + 1/3");
    CHECK(parse_poly(p.str()) == p);
}
