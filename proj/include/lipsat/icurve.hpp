#ifndef LIPSAT_ICURVE_HPP
#define LIPSAT_ICURVE_HPP

#include "lipsat/verdict.hpp"

namespace lipsat {

// An ideal on a curve germ, presented by ambient generators together with the
// normalization of the curve. Membership in the integral closure is decided
// along the branches (sound and complete on curves).
struct IdealOnCurve {
    std::vector<Poly> gens;
    std::vector<Branch> branches;

    static IdealOnCurve make(std::vector<Poly> gens, const Poly& curve, const Rat& T);
    static IdealOnCurve make(std::vector<Poly> gens, const Poly& curve);
    // the Jacobian ideal of f on {f = 0}
    static IdealOnCurve jacobian(const Poly& f, const Rat& T);
    static IdealOnCurve jacobian(const Poly& f);
};

struct PullbackResult {
    std::vector<PSeries> pulls;
    Rat minOrder;
};

// Generator pullbacks along one branch and the valuation of the pulled-back
// (principal) ideal. NotFiniteColength if the ideal vanishes identically on
// the branch; TruncationInsufficient if that cannot be told apart from deep
// vanishing.
PullbackResult pullback_ideal(const IdealOnCurve& I, const Branch& b);

// Curve criterion for h in the integral closure of I.
Verdict ic_membership(const Poly& h, const IdealOnCurve& I);

// Multiplicity of an ideal of finite colength on the curve: the sum over
// branches of the pullback valuations.
long ideal_multiplicity(const IdealOnCurve& I);

// Columns generate a submodule of R^rows over the series ring R; trunc is the
// working truncation for decisions. Entries may individually be exact.
struct DvrMatrix {
    int rows = 2;
    std::vector<std::vector<PSeries>> cols;
    Rat trunc = Rat(0);

    // filled by dvr_reduce on its output
    std::vector<int> pivotRows;
    std::vector<Rat> pivots;
    std::vector<Rat> droppedTrunc; // truncations of inexact columns that vanished

    static DvrMatrix make(int rows, std::vector<std::vector<PSeries>> cols, const Rat& trunc);
};

// Column-echelon form over the series ring: monic pivots with one pivot row
// each, earlier pivot columns reduced modulo later pivots (canonical Hermite
// shape), span preserved below the truncation.
DvrMatrix dvr_reduce(const DvrMatrix& M);

// Membership of v in the span of M, with an explicit series combination on
// yes and the residual vector on no.
Verdict dvr_membership(const std::vector<PSeries>& v, const DvrMatrix& M);

// Colength of span(M) inside span(N) (multiplicity of the pair at DVR level):
// the sum of pivot-valuation differences. NotNested if span(M) is not
// contained in span(N); NotFiniteColength if ranks differ.
long pair_multiplicity_dvr(const DvrMatrix& M, const DvrMatrix& N);

// Safety margin required between the largest pivot valuation and the working
// truncation before a membership decision is accepted.
inline const Rat kDvrMargin = Rat(4);

} // namespace lipsat

#endif
