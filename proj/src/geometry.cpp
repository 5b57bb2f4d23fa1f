#include "lipsat/geometry.hpp"

#include <algorithm>
#include <random>

namespace lipsat {

Hyperplane Hyperplane::make(std::vector<std::complex<double>> coeffs) {
    Hyperplane h;
    h.coeffs = std::move(coeffs);
    double best = -1;
    for (size_t i = 0; i < h.coeffs.size(); ++i)
        if (std::abs(h.coeffs[i]) > best) {
            best = std::abs(h.coeffs[i]);
            h.normIndex = (int)i;
        }
    if (best <= 0) fail(ErrorCode::DegenerateInput, "zero coefficient vector");
    return h;
}

Hyperplane Hyperplane::make(const std::vector<CycRat>& coeffs) {
    std::vector<std::complex<double>> c;
    for (const auto& x : coeffs) c.push_back(x.to_complex());
    return make(std::move(c));
}

double hyperplane_distance(const Hyperplane& A, const Hyperplane& B, DistanceMethod method) {
    if (A.coeffs.size() != B.coeffs.size())
        fail(ErrorCode::DegenerateInput, "dimension mismatch");
    if (A.normIndex != B.normIndex)
        fail(ErrorCode::DegenerateInput,
             "sup-norm indices differ; the distance lemma needs a shared leading coordinate");
    size_t n = A.coeffs.size();
    // permute the shared index to position 0
    std::vector<std::complex<double>> a = A.coeffs, b = B.coeffs;
    std::swap(a[0], a[A.normIndex]);
    std::swap(b[0], b[B.normIndex]);
    if (std::abs(a[0]) == 0 || std::abs(b[0]) == 0)
        fail(ErrorCode::DegenerateInput, "zero leading coefficient after permutation");
    if (method == DistanceMethod::SupFormula) {
        double best = 0;
        for (size_t i = 1; i < n; ++i) best = std::max(best, std::abs(a[i] / a[0] - b[i] / b[0]));
        return best;
    }
    // sup over the basis a_0 e_i - a_i e_0 of A against the normal of B, with
    // sup-norm normalization
    double best = 0;
    double bnorm = 0;
    for (const auto& z : b) bnorm = std::max(bnorm, std::abs(z));
    for (size_t i = 1; i < n; ++i) {
        // v = a_0 e_i - a_i e_0; (v, conj(b)) = a_0 b_i - a_i b_0
        std::complex<double> inner = a[0] * b[i] - a[i] * b[0];
        double vnorm = std::max(std::abs(a[0]), std::abs(a[i]));
        best = std::max(best, std::abs(inner) / (vnorm * bnorm));
    }
    return best;
}

ProductProbeReport product_inequality_probe(
    const std::vector<std::array<std::complex<double>, 2>>& hVals,
    const std::vector<std::array<std::complex<double>, 2>>& gVals, double tol) {
    if (hVals.size() != gVals.size()) fail(ErrorCode::DegenerateInput, "sample size mismatch");
    ProductProbeReport rep;
    for (size_t i = 0; i < hVals.size(); ++i) {
        const auto& [h1, h2] = hVals[i];
        const auto& [g1, g2] = gVals[i];
        double lhs = std::abs(h1 * g1 - h2 * g2);
        double rhs = std::abs(h1) * std::abs(g1 - g2) + std::abs(g2) * std::abs(h1 - h2);
        double slack = lhs - rhs;
        rep.maxSlack = std::max(rep.maxSlack, slack);
        if (slack > tol) rep.violations++;
        rep.samples++;
    }
    return rep;
}

ProductProbeReport product_inequality_probe(const std::vector<std::array<Rat, 2>>& hVals,
                                            const std::vector<std::array<Rat, 2>>& gVals) {
    if (hVals.size() != gVals.size()) fail(ErrorCode::DegenerateInput, "sample size mismatch");
    ProductProbeReport rep;
    for (size_t i = 0; i < hVals.size(); ++i) {
        const auto& [h1, h2] = hVals[i];
        const auto& [g1, g2] = gVals[i];
        Rat lhs = abs(h1 * g1 - h2 * g2);
        Rat rhs = abs(h1) * abs(g1 - g2) + abs(g2) * abs(h1 - h2);
        if (lhs > rhs) rep.violations++;
        rep.maxSlack = std::max(rep.maxSlack, Rat(lhs - rhs).get_d());
        rep.samples++;
    }
    return rep;
}

std::vector<ProbeSample> tangent_commensurability_probe(const Family& fam,
                                                        const std::vector<Rat>& y0, int nSamples,
                                                        unsigned long seed) {
    Poly fiber = fam.fiber(y0);
    std::vector<Branch> branches = puiseux_branches(squarefree_part(fiber));
    auto y0map = fam.param_point(y0);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> den(6, 40), pickBranch(0, (long)branches.size() - 1);
    std::vector<ProbeSample> out;
    auto eval_point = [&](const Branch& b, const Rat& t) {
        std::map<std::string, std::complex<double>> p;
        for (size_t i = 0; i < b.vars.size(); ++i) {
            std::complex<double> v(0, 0);
            for (const auto& [e, c] : b.comps[i].terms())
                v += c.to_complex() * std::pow(Rat(t).get_d(), Rat(e).get_d());
            p[b.vars[i]] = v;
        }
        for (const auto& [k, v] : y0map) p[k] = v.to_complex();
        return p;
    };
    int guard = 0;
    while ((int)out.size() < nSamples && guard++ < nSamples * 20) {
        const Branch& b1 = branches[pickBranch(rng)];
        const Branch& b2 = branches[pickBranch(rng)];
        Rat t1 = rat(1, den(rng)), t2 = rat(1, den(rng));
        auto p1 = eval_point(b1, t1), p2 = eval_point(b2, t2);
        // skip coincident points
        double pointDist = 0;
        for (const auto& z : fam.fiberVars)
            pointDist = std::max(pointDist, std::abs(p1.at(z) - p2.at(z)));
        if (pointDist < 1e-12) continue;
        // gradients
        std::vector<std::complex<double>> gradTotal1, gradTotal2, gradFiber1, gradFiber2;
        bool singular = false;
        for (const auto& v : fam.F.vars()) {
            Poly d = fam.F.partial(v);
            gradTotal1.push_back(d.eval_complex(p1));
            gradTotal2.push_back(d.eval_complex(p2));
        }
        for (const auto& z : fam.fiberVars) {
            Poly d = fiber.degree_in(z) > 0 ? fiber.partial(z) : Poly();
            gradFiber1.push_back(d.eval_complex(p1));
            gradFiber2.push_back(d.eval_complex(p2));
        }
        auto norm = [](const std::vector<std::complex<double>>& v) {
            double m = 0;
            for (const auto& z : v) m = std::max(m, std::abs(z));
            return m;
        };
        if (norm(gradTotal1) < 1e-12 || norm(gradTotal2) < 1e-12 || norm(gradFiber1) < 1e-12 ||
            norm(gradFiber2) < 1e-12)
            singular = true;
        if (singular) continue;
        ProbeSample s;
        try {
            Hyperplane T1 = Hyperplane::make(gradTotal1);
            Hyperplane T2 = Hyperplane::make(gradTotal2);
            Hyperplane F1 = Hyperplane::make(gradFiber1);
            Hyperplane F2 = Hyperplane::make(gradFiber2);
            if (T1.normIndex != T2.normIndex || F1.normIndex != F2.normIndex) continue;
            s.totalTangentDist = hyperplane_distance(T1, T2, DistanceMethod::SupFormula);
            s.fiberTangentDist = hyperplane_distance(F1, F2, DistanceMethod::SupFormula);
        } catch (const Error&) {
            continue; // degenerate sample: skipped with note
        }
        s.pointDist = pointDist;
        for (const auto& v : fam.F.vars()) {
            s.p1.push_back(p1.at(v));
            s.p2.push_back(p2.at(v));
        }
        double denm = std::max(s.fiberTangentDist, s.pointDist);
        s.ratio = denm > 0 ? s.totalTangentDist / denm : 0;
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<Rat> lipschitz_exponent_probe(const Poly& h, const IdealOnCurve& I,
                                            const PairCurve& Phi) {
    if (I.branches.empty()) fail(ErrorCode::DegenerateInput, "no branches");
    auto side_assignment = [&](int bi, const PSeries& u) {
        if (bi < 0) {
            std::map<std::string, PSeries> a;
            for (const auto& v : I.branches[0].vars) a[v] = PSeries();
            return a;
        }
        return I.branches[bi].assignment(u);
    };
    auto s1 = side_assignment(Phi.b1, Phi.u1);
    auto s2 = side_assignment(Phi.b2, Phi.u2);
    for (const auto& [k, v] : Phi.params) {
        s1[k] = PSeries::constant(v);
        s2[k] = PSeries::constant(v);
    }
    // coordinate difference order
    std::optional<Rat> coordOrd;
    for (const auto& [k, v] : s1) {
        PSeries diff = v - s2.at(k);
        auto o = diff.order();
        if (o && (!coordOrd || *o < *coordOrd)) coordOrd = o;
    }
    if (!coordOrd) fail(ErrorCode::DegenerateCurve, "both sides coincide: zero coordinate difference");
    // local generator of the pulled-back ideal: the generator of minimal order
    // on side 1 (the pullback is principal there)
    std::optional<Rat> best;
    const Poly* gmin = nullptr;
    for (const auto& g : I.gens) {
        auto o = poly_substitute(g, s1).order();
        if (o && (!best || *o < *best)) {
            best = o;
            gmin = &g;
        }
    }
    if (!gmin) fail(ErrorCode::NotFiniteColength, "ideal pulls back to zero on side 1");
    PSeries A1 = poly_substitute(h, s1), A2 = poly_substitute(h, s2);
    PSeries B1 = poly_substitute(*gmin, s1), B2 = poly_substitute(*gmin, s2);
    auto oB1 = B1.order(), oB2 = B2.order();
    if (!oB1 || !oB2)
        fail(ErrorCode::NotFiniteColength, "local generator vanishes on a side");
    // (A1/B1 - A2/B2) = (A1 B2 - A2 B1) / (B1 B2)
    PSeries cross = A1 * B2 - A2 * B1;
    auto oc = cross.order();
    if (!oc) return std::nullopt; // quotient difference invisible: no failure
    Rat quotientOrd = *oc - *oB1 - *oB2;
    return quotientOrd - *coordOrd;
}

} // namespace lipsat
