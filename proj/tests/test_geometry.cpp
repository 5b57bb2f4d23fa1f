#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lipsat/geometry.hpp"
#include "lipsat/parse.hpp"

using namespace lipsat;

namespace {
using C = std::complex<double>;

Hyperplane random_plane(std::mt19937_64& rng, int dim) {
    // coefficient 0 dominates, so every pair shares normIndex 0 as in the
    // distance lemma's hypothesis
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<C> c = {C(1.0, 0.0)};
    for (int i = 1; i < dim; ++i) c.push_back(0.9 * C(u(rng), u(rng)) / std::sqrt(2.0));
    return Hyperplane::make(std::move(c));
}
} // namespace

TEST_CASE("hyperplane distance basics") {
    Hyperplane A = Hyperplane::make(std::vector<C>{C(1), C(0)});
    CHECK(hyperplane_distance(A, A, DistanceMethod::SupFormula) == doctest::Approx(0.0));
    Hyperplane B = Hyperplane::make(std::vector<C>{C(1), C(1)});
    // |a1/a0 - b1/b0| = |0 - 1| = 1; B's normIndex stays 0 on ties
    CHECK(hyperplane_distance(A, B, DistanceMethod::SupFormula) == doctest::Approx(1.0));
    CHECK(hyperplane_distance(A, B, DistanceMethod::InnerProductDef) == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)Hyperplane::make(std::vector<C>{C(0), C(0)}), Error);
    // the lemma needs a shared sup-norm index
    Hyperplane D = Hyperplane::make(std::vector<C>{C(0.1), C(1)});
    CHECK_THROWS_AS((void)hyperplane_distance(A, D, DistanceMethod::SupFormula), Error);
}

TEST_CASE("the two distance formulas agree on random normalized pairs") {
    std::mt19937_64 rng(20260808);
    for (int dim = 2; dim <= 5; ++dim)
        for (int it = 0; it < 250; ++it) {
            Hyperplane A = random_plane(rng, dim);
            Hyperplane B = random_plane(rng, dim);
            double s = hyperplane_distance(A, B, DistanceMethod::SupFormula);
            double i = hyperplane_distance(A, B, DistanceMethod::InnerProductDef);
            CHECK(std::abs(s - i) < 1e-10);
        }
}

TEST_CASE("product inequality has no violations") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<std::array<C, 2>> h, g;
    for (int i = 0; i < 100000; ++i) {
        h.push_back({C(u(rng), u(rng)), C(u(rng), u(rng))});
        g.push_back({C(u(rng), u(rng)), C(u(rng), u(rng))});
    }
    auto rep = product_inequality_probe(h, g, 1e-12);
    CHECK(rep.samples == 100000);
    CHECK(rep.violations == 0);

    // exact rational mode, including adversarial near-cancellations
    std::uniform_int_distribution<long> n(-50, 50);
    std::vector<std::array<Rat, 2>> hr, gr;
    for (int i = 0; i < 1000; ++i) {
        hr.push_back({rat(n(rng), 7), rat(n(rng), 7)});
        gr.push_back({rat(n(rng), 11), rat(n(rng), 11)});
    }
    // equality cases p1 == p2
    hr.push_back({rat(3, 2), rat(3, 2)});
    gr.push_back({rat(5, 7), rat(5, 7)});
    // near-cancellation: h(p1)g(p1) ~ h(p2)g(p2)
    hr.push_back({rat(1000000, 1), rat(999999, 1)});
    gr.push_back({rat(999999, 1), rat(1000000, 1)});
    auto repx = product_inequality_probe(hr, gr);
    CHECK(repx.violations == 0);
}

TEST_CASE("tangent commensurability probe on the corpus family") {
    Family fam = family_ideals(parse_poly("x^2+y^5+w*y^4"), {"x", "y"}, {"w"});
    auto samples = tangent_commensurability_probe(fam, {rat(1)}, 50, 12345);
    CHECK(samples.size() >= 25); // degenerate pairs may be skipped
    for (const auto& s : samples) {
        CHECK(s.totalTangentDist >= 0);
        CHECK(s.pointDist > 0);
        CHECK(std::isfinite(s.ratio));
    }
}

TEST_CASE("lipschitz exponent along the zeta_5-twisted witness curve") {
    Poly f = parse_poly("x^2+y^5");
    IdealOnCurve J = IdealOnCurve::jacobian(f);
    PairCurve pc;
    pc.b1 = pc.b2 = 0;
    pc.u2 = PSeries::monomial(CycRat::root_of_unity(5), rat(1));
    // y^3: quotient orders 6-5 on each side, difference order 1, coordinate
    // difference order 2: exponent -1 flags the Lipschitz failure
    auto e3 = lipschitz_exponent_probe(parse_poly("y^3"), J, pc);
    REQUIRE(e3.has_value());
    CHECK(*e3 == rat(-1));
    // y^4 passes on this curve
    auto e4 = lipschitz_exponent_probe(parse_poly("y^4"), J, pc);
    REQUIRE(e4.has_value());
    CHECK(*e4 >= 0);
    // a generator: quotient is constant, difference vanishes
    auto eg = lipschitz_exponent_probe(parse_poly("2*x"), J, pc);
    CHECK((!eg.has_value() || *eg >= 0));
    // identical sides are degenerate
    PairCurve diag;
    diag.b1 = diag.b2 = 0;
    CHECK_THROWS_AS((void)lipschitz_exponent_probe(parse_poly("y^3"), J, diag), Error);
}

TEST_CASE("sign coherence between the probe and saturation verdicts") {
    for (long p : {5L, 7L}) {
        Poly f = parse_poly("x^2+y^" + std::to_string(p));
        IdealOnCurve J = IdealOnCurve::jacobian(f);
        SearchBound B;
        B.root = 2 * p;
        Poly h = Poly::variable("y").pow((p + 1) / 2);
        Verdict v = saturation_membership(h, J, B);
        REQUIRE(v.no());
        REQUIRE(v.witness.has_value());
        auto e = lipschitz_exponent_probe(h, J, *v.witness);
        REQUIRE(e.has_value());
        CHECK(*e < 0);
    }
}
