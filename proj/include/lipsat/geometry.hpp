#ifndef LIPSAT_GEOMETRY_HPP
#define LIPSAT_GEOMETRY_HPP

#include "lipsat/conditions.hpp"

namespace lipsat {

// Numeric probes of the metric statements. Floating point is confined to this
// module; the Lipschitz-exponent probe stays exact.

struct Hyperplane {
    std::vector<std::complex<double>> coeffs;
    int normIndex = 0; // index achieving the maximal modulus

    static Hyperplane make(std::vector<std::complex<double>> coeffs);
    static Hyperplane make(const std::vector<CycRat>& coeffs);
};

enum class DistanceMethod { SupFormula, InnerProductDef };

// Distance between hyperplanes through the origin. Both methods assume the
// sup-norm is achieved at a shared index (the planes are permuted so that
// index is 0); DegenerateInput otherwise.
double hyperplane_distance(const Hyperplane& A, const Hyperplane& B, DistanceMethod method);

struct ProductProbeReport {
    long samples = 0;
    long violations = 0;
    double maxSlack = 0; // max over samples of LHS - RHS (<= 0 when clean)
};

// |(hg)(p1)-(hg)(p2)| <= |h(p1)||g(p1)-g(p2)| + |g(p2)||h(p1)-h(p2)|
ProductProbeReport product_inequality_probe(
    const std::vector<std::array<std::complex<double>, 2>>& hVals,
    const std::vector<std::array<std::complex<double>, 2>>& gVals, double tol = 1e-12);

// exact rational mode: values are rationals, the check is exact
ProductProbeReport product_inequality_probe(const std::vector<std::array<Rat, 2>>& hVals,
                                            const std::vector<std::array<Rat, 2>>& gVals);

struct ProbeSample {
    std::vector<std::complex<double>> p1, p2; // fiber points (with parameter appended)
    double totalTangentDist = 0;
    double fiberTangentDist = 0;
    double pointDist = 0;
    double ratio = 0; // total / max(fiber, point)
};

// Samples pairs of smooth points on the fiber at y0 through the branch
// parametrizations and compares tangent distances of the total space against
// fiber tangent distances and point distances.
std::vector<ProbeSample> tangent_commensurability_probe(const Family& fam,
                                                        const std::vector<Rat>& y0, int nSamples,
                                                        unsigned long seed);

// ord_t((h/f)o phi1 - (h/f)o phi2) - ord_t(coordinate difference) along a
// pair-curve, computed exactly; negative values witness a Lipschitz failure.
// nullopt means the quotient difference vanishes identically (no failure).
std::optional<Rat> lipschitz_exponent_probe(const Poly& h, const IdealOnCurve& I,
                                            const PairCurve& Phi);

} // namespace lipsat

#endif
