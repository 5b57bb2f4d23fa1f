#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lipsat/doubling.hpp"
#include "lipsat/parse.hpp"

using namespace lipsat;

namespace {

PairCurve twisted_curve(long p) {
    // Phi = (t^p, -t^2, t^p, -c t^2) with c = zeta_p: both sides the canonical
    // branch of x^2+y^p, side 2 twisted by u2 = zeta_p * t
    PairCurve pc;
    pc.b1 = 0;
    pc.b2 = 0;
    pc.u1 = PSeries::var();
    pc.u2 = PSeries::monomial(CycRat::root_of_unity(p), rat(1));
    return pc;
}

} // namespace

TEST_CASE("double_ideal generator shape") {
    // single generator, single coordinate: {(x,x'), ((x-x')x, 0), (0, (x-x')x')}
    DoubledModule M1 = double_ideal({parse_poly("x")}, {"x"});
    REQUIRE(M1.genList.size() == 3);
    CHECK(M1.genList[0].first == parse_poly("x"));
    CHECK(M1.genList[0].second == parse_poly("x'"));
    CHECK(M1.genList[1].first == parse_poly("(x-x')*x"));
    CHECK(M1.genList[1].second.is_zero());
    CHECK(M1.genList[2].second == parse_poly("(x-x')*x'"));

    // J(x^2+y^5): 2 doubled + 8 one-sided
    DoubledModule M = double_ideal({parse_poly("2*x"), parse_poly("5*y^4")}, {"x", "y"});
    CHECK(M.genList.size() == 10);
    int doubled = 0, left = 0, right = 0;
    for (const auto& [a, b] : M.genList) {
        if (!a.is_zero() && !b.is_zero()) ++doubled;
        if (!a.is_zero() && b.is_zero()) ++left;
        if (a.is_zero() && !b.is_zero()) ++right;
    }
    CHECK(doubled == 2);
    CHECK(left == 4);
    CHECK(right == 4);
    CHECK_THROWS_AS((void)double_ideal({}, {"x"}), Error);
}

TEST_CASE("the finite generator list spans all h_D (monomial multiples up to degree 3)") {
    // oracle: (a f)_D = a * (f, f') + (0, (a' - a) f') and a' - a telescopes
    // over the coordinate differences, so every h_D is an explicit combination
    DoubledModule M = double_ideal({parse_poly("2*x"), parse_poly("5*y^4")}, {"x", "y"});
    Poly x = parse_poly("x"), y = parse_poly("y"), xp = parse_poly("x'"), yp = parse_poly("y'");
    for (int i = 0; i + 0 <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) {
            if (i + j == 0) continue;
            Poly a = x.pow(i) * y.pow(j);
            Poly ap = M.prime(a);
            // a' - a = x'^i (y'^j - y^j) + y^j (x'^i - x^i)
            auto tele = [](const Poly& u, const Poly& v, int k) {
                Poly s; // (u^k - v^k)/(u - v) = sum u^l v^(k-1-l)
                for (int l = 0; l < k; ++l) s += u.pow(l) * v.pow(k - 1 - l);
                return s;
            };
            Poly cy = xp.pow(i) * tele(yp, y, j); // coefficient of (y' - y)
            Poly cx = y.pow(j) * tele(xp, x, i);  // coefficient of (x' - x)
            CHECK(ap - a == cy * (yp - y) + cx * (xp - x));
            for (const auto& f : M.baseGens) {
                Poly af = a * f;
                Poly fp = M.prime(f);
                // (af)_D reproduced from the generator list exactly
                Poly slot0 = a * f;
                Poly slot1 = a * fp + (ap - a) * fp;
                CHECK(slot0 == af);
                CHECK(slot1 == M.prime(af));
                // and (0, (a'-a) f') is a combination of the (0, Delta_j f'):
                // -cx * (0, Delta_x f') - cy * (0, Delta_y f')
                Poly dxa = M.diag[0] * fp, dya = M.diag[1] * fp;
                CHECK((ap - a) * fp == -cx * dxa - cy * dya);
            }
        }
}

TEST_CASE("contraction (1,-1) of the doubled Jacobian") {
    DoubledModule M = double_ideal({parse_poly("2*x"), parse_poly("5*y^4")}, {"x", "y"});
    auto contr = contraction({CycRat::one(), CycRat(rat(-1))}, M);
    REQUIRE(contr.size() == M.genList.size());
    CHECK(contr[0] == parse_poly("2*x-2*x'"));
    CHECK(contr[1] == parse_poly("5*y^4-5*y'^4"));
    // one-sided elements keep their sign structure: (x-x')*2x and -(x-x')*2x'
    bool has_left = false, has_right = false;
    for (const auto& c : contr) {
        if (c == parse_poly("(x-x')*2*x")) has_left = true;
        if (c == -parse_poly("(x-x')*2*x'")) has_right = true;
    }
    CHECK(has_left);
    CHECK(has_right);

    auto proj = contraction({CycRat::one(), CycRat::zero()}, M);
    CHECK(proj[0] == parse_poly("2*x"));

    DoubledModule Mx = double_ideal({parse_poly("x")}, {"x"});
    auto cx = contraction({CycRat::one(), CycRat(rat(-1))}, Mx);
    CHECK(cx[0] == parse_poly("x-x'"));
    CHECK(cx[1] == parse_poly("(x-x')*x"));
    CHECK(cx[2] == -parse_poly("(x-x')*x'"));
}

TEST_CASE("relative mode doubles only fiber coordinates") {
    // F = x^2 + y^5 + w*x, m_Y J_z(F) with w the shared parameter
    Poly F = parse_poly("x^2+y^5+w*x");
    std::vector<Poly> gens;
    for (const char* z : {"x", "y"})
        for (const char* zi : {"x", "y"}) gens.push_back(parse_poly(zi) * F.partial(z));
    DoubledModule M = double_ideal(gens, {"x", "y"}, {"w"});
    CHECK(M.diag.size() == 2);
    CHECK(M.genList.size() == gens.size() * 5);
    for (const auto& [a, b] : M.genList)
        for (const auto& p : {a, b})
            for (const auto& v : p.vars()) CHECK(v != "w'");
    // w is never differenced: no generator involves w - w'
    CHECK_THROWS_AS((void)double_ideal(gens, {"x", "y"}, {"x"}), Error);
}

TEST_CASE("pullback of the doubled module along the twisted pair-curve") {
    Poly f = parse_poly("x^2+y^5");
    IdealOnCurve J = IdealOnCurve::jacobian(f);
    DoubledModule M = double_ideal(J.gens, {"x", "y"});
    PairCurve pc = twisted_curve(5);
    validate_pair_curve(pc, J.branches);
    DvrMatrix X = pullback_doubled(M, pc, J.branches, rat(40));
    REQUIRE(X.cols.size() == 10);
    // profile: doubled columns at orders (5,5) and (8,8); one-sided y-difference
    // columns at order 7 in a single row; x-difference columns vanish exactly
    int ord55 = 0, ord88 = 0, oneSided7 = 0, exactZero = 0;
    for (const auto& col : X.cols) {
        auto o0 = col[0].order(), o1 = col[1].order();
        if (o0 && o1 && *o0 == 5 && *o1 == 5) ++ord55;
        if (o0 && o1 && *o0 == 8 && *o1 == 8) ++ord88;
        if ((o0 && !o1 && *o0 == 7 && col[1].is_exact_zero()) ||
            (o1 && !o0 && *o1 == 7 && col[0].is_exact_zero()))
            ++oneSided7;
        if (col[0].is_exact_zero() && col[1].is_exact_zero()) ++exactZero;
    }
    CHECK(ord55 == 1);
    CHECK(ord88 == 1);
    CHECK(oneSided7 == 2); // (Delta_y 2x, 0) and (0, Delta_y 2x')
    CHECK(exactZero == 4); // all Delta_x columns: x o phi1 == x o phi2

    // identical sides: every Delta column vanishes, matrix is the doubled diagonal
    PairCurve diag;
    diag.b1 = diag.b2 = 0;
    DvrMatrix D = pullback_doubled(M, diag, J.branches, rat(40));
    int nonzero = 0;
    for (const auto& col : D.cols)
        if (!col[0].is_exact_zero() || !col[1].is_exact_zero()) ++nonzero;
    CHECK(nonzero == 2);

    // zero second side: second row is identically zero
    PairCurve oneSided;
    oneSided.b1 = 0;
    oneSided.b2 = -1;
    DvrMatrix O = pullback_doubled(M, oneSided, J.branches, rat(40));
    for (const auto& col : O.cols) CHECK(col[1].is_exact_zero());
}

TEST_CASE("closure membership along the twisted curve") {
    Poly f = parse_poly("x^2+y^5");
    IdealOnCurve J = IdealOnCurve::jacobian(f);
    DoubledModule M = double_ideal(J.gens, {"x", "y"});
    PairCurve pc = twisted_curve(5);
    Rat T(40);

    // y^3: target rows (6,6); the module cannot reach below order 7 in row 2
    Verdict no = closure_membership_on_curve(parse_poly("y^3"), M, pc, J.branches, T);
    CHECK(no.no());
    CHECK(no.targetOrder == rat(6));
    CHECK(no.residualOrder == rat(6));
    REQUIRE(no.pivots.size() == 2);
    CHECK(no.pivots[0] == rat(5));
    CHECK(no.pivots[1] == rat(7));

    // a generator is a member along any curve
    CHECK(closure_membership_on_curve(parse_poly("2*x"), M, pc, J.branches, T).yes());

    // y^4: target orders (8,8), inside
    Verdict yes = closure_membership_on_curve(parse_poly("y^4"), M, pc, J.branches, T);
    CHECK(yes.yes());
    CHECK(yes.targetOrder == rat(8));
}

TEST_CASE("twist necessity: untwisted curve accepts y^3, the zeta_5 twist refutes") {
    Poly f = parse_poly("x^2+y^5");
    IdealOnCurve J = IdealOnCurve::jacobian(f);
    DoubledModule M = double_ideal(J.gens, {"x", "y"});
    PairCurve untwisted;
    untwisted.b1 = untwisted.b2 = 0;
    CHECK(closure_membership_on_curve(parse_poly("y^3"), M, untwisted, J.branches, rat(40)).yes());
    CHECK(closure_membership_on_curve(parse_poly("y^3"), M, twisted_curve(5), J.branches, rat(40)).no());
}

TEST_CASE("contraction valuation along the twisted curve is exactly p+2") {
    for (long p : {5L, 7L, 9L}) {
        Poly f = parse_poly("x^2+y^" + std::to_string(p));
        IdealOnCurve J = IdealOnCurve::jacobian(f);
        DoubledModule M = double_ideal(J.gens, {"x", "y"});
        Verdict v = closure_membership_on_curve(Poly::variable("y").pow((p + 1) / 2), M,
                                                twisted_curve(p), J.branches, rat(40));
        CHECK(v.contractionModuleOrder == rat(p + 2));
        CHECK(v.contractionTargetOrder == rat(p + 1));
        CHECK(v.no());
    }
}

TEST_CASE("saturation membership: the golden example") {
    for (long p : {5L, 7L}) {
        long q = (p + 1) / 2;
        Poly f = parse_poly("x^2+y^" + std::to_string(p));
        IdealOnCurve J = IdealOnCurve::jacobian(f);
        SearchBound B;
        B.root = 2 * p;
        Verdict v = saturation_membership(Poly::variable("y").pow(q), J, B);
        REQUIRE(v.no());
        REQUIRE(v.witness.has_value());
        // the sharpest witness: same branch, unit exponents, twist a primitive
        // p-th root of unity
        CHECK(v.witness->b1 == 0);
        CHECK(v.witness->b2 == 0);
        CHECK(v.witness->u1 == PSeries::var());
        CHECK(v.witness->u2 == PSeries::monomial(CycRat::root_of_unity(p), rat(1)));
        // contraction pullback ideal has valuation exactly p+2; target 2q
        CHECK(v.contractionModuleOrder == rat(p + 2));
        CHECK(v.contractionTargetOrder == rat(2 * q));
        CHECK(v.targetOrder == rat(2 * q));
        // order gap: residual at 2q below the row pivot p+2
        CHECK(v.residualOrder == rat(2 * q));
    }
}

TEST_CASE("opposite-sheet curves refute y^5 in J(x^2+y^7)_S") {
    // Same-sheet zeta_7 twists stop obstructing once 2q >= p+2, but the pair
    // ((t^7,-t^2), (-t^7,-t^2)) has identical y and opposite x: the quotient
    // y^5/(2x) differs by ~t^3 across sheets while the points differ by ~t^7.
    Poly f7 = parse_poly("x^2+y^7");
    IdealOnCurve J7 = IdealOnCurve::jacobian(f7);
    SearchBound B;
    B.root = 14;
    Verdict v = saturation_membership(parse_poly("y^5"), J7, B);
    REQUIRE(v.no());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->u2 == PSeries::monomial(CycRat(rat(-1)), rat(1)));
    CHECK(v.residualOrder == rat(10));
    CHECK(v.pivots.back() == rat(12));

    // y^4 against J(x^2+y^5) is a rational multiple of the generator 5y^4, so
    // the division path certifies it outright
    Poly f5 = parse_poly("x^2+y^5");
    IdealOnCurve J5 = IdealOnCurve::jacobian(f5);
    SearchBound B5;
    B5.root = 10;
    Verdict y4 = saturation_membership(parse_poly("y^4"), J5, B5);
    CHECK(y4.yes());
    CHECK(!y4.polyCertificate.empty());
}

TEST_CASE("saturation membership: bounded search reports NoObstructionUpToBound") {
    // (x + x^2, y^4) on the cusp curve: locally this ideal is (x, y^4), so x
    // lies in its Lipschitz saturation, but no polynomial division shows it
    // and no curve can refute a true member
    Poly f = parse_poly("x^2+y^5");
    IdealOnCurve I = IdealOnCurve::make({parse_poly("x+x^2"), parse_poly("y^4")}, f);
    SearchBound B;
    B.root = 10;
    Verdict v = saturation_membership(parse_poly("x"), I, B);
    CHECK(v.kind == VerdictKind::NoObstructionUpToBound);
    REQUIRE(v.bound.has_value());
    CHECK(v.detail.find("no refuting pair-curve") != std::string::npos);
}

TEST_CASE("saturation membership: failing the curve criterion short-circuits") {
    Poly f = parse_poly("x^2+y^5");
    IdealOnCurve J = IdealOnCurve::jacobian(f);
    SearchBound B;
    Verdict v = saturation_membership(parse_poly("y^2"), J, B);
    CHECK(v.no());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->b2 == -1); // one-sided witness
    CHECK(v.detail.find("integral closure") != std::string::npos);
}

TEST_CASE("saturation membership: a generator is certified with a division certificate") {
    Poly f = parse_poly("x^2+y^5");
    IdealOnCurve J = IdealOnCurve::jacobian(f);
    SearchBound B;
    Verdict v = saturation_membership(parse_poly("2*x"), J, B);
    CHECK(v.yes());
    CHECK(!v.polyCertificate.empty());
}

TEST_CASE("monotonicity: enlarging the bounds never flips CertifiedNo") {
    Poly f = parse_poly("x^2+y^5");
    IdealOnCurve J = IdealOnCurve::jacobian(f);
    Poly h = parse_poly("y^3");
    SearchBound small{2, 6, 2};
    SearchBound big{4, 12, 4};
    Verdict a = saturation_membership(h, J, small);
    Verdict b = saturation_membership(h, J, big);
    CHECK(a.no());
    CHECK(b.no());
    CHECK(a.contractionModuleOrder == b.contractionModuleOrder);
}

TEST_CASE("refutation soundness: the witness replays to the same gap") {
    Poly f = parse_poly("x^2+y^7");
    IdealOnCurve J = IdealOnCurve::jacobian(f);
    SearchBound B;
    B.root = 14;
    Poly h = parse_poly("y^4");
    Verdict v = saturation_membership(h, J, B);
    REQUIRE(v.no());
    REQUIRE(v.witness.has_value());
    DoubledModule M = double_ideal(J.gens, {"x", "y"});
    Verdict replay = closure_membership_on_curve(h, M, *v.witness, J.branches, rat(60));
    CHECK(replay.no());
    CHECK(replay.residualOrder == v.residualOrder);
    CHECK(replay.pivots == v.pivots);
    // the residual valuation is strictly below every pivot in its row
    REQUIRE(replay.residualOrder.has_value());
    CHECK(*replay.residualOrder < replay.pivots.back());
}

TEST_CASE("containment chain: saturation yes implies closure yes") {
    Poly f = parse_poly("x^2+y^5");
    IdealOnCurve J = IdealOnCurve::jacobian(f);
    for (const char* hs : {"2*x", "5*y^4", "x+y^3"}) {
        Poly h = parse_poly(hs);
        Verdict sat = saturation_membership(h, J, SearchBound{});
        if (sat.yes()) CHECK(ic_membership(h, J).yes());
    }
}

TEST_CASE("symbolic module membership basics") {
    // x^2+y^2 in (x, y) with linear coefficients
    auto cert = symbolic_module_membership({parse_poly("x^2+y^2")},
                                           {{parse_poly("x")}, {parse_poly("y")}}, 3);
    REQUIRE(cert.has_value());
    CHECK((*cert)[0] * parse_poly("x") + (*cert)[1] * parse_poly("y") == parse_poly("x^2+y^2"));
    // 1 is not in (x, y)
    CHECK(!symbolic_module_membership({parse_poly("1")},
                                      {{parse_poly("x")}, {parse_poly("y")}}, 4)
               .has_value());
    // y^4 is not in (x, y^5) with polynomial coefficients
    CHECK(!symbolic_module_membership({parse_poly("y^4")},
                                      {{parse_poly("x")}, {parse_poly("y^5")}}, 5)
               .has_value());
}
