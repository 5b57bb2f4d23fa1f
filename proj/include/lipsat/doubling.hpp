#ifndef LIPSAT_DOUBLING_HPP
#define LIPSAT_DOUBLING_HPP

#include "lipsat/icurve.hpp"

namespace lipsat {

// The doubled module I_D on the product space X x X (or X x_Y X in relative
// mode): for generators f_i of I and coordinate differences D_j = z_j - z_j',
// the finite generator list
//   {(f_i, f_i')} u {(D_j f_i, 0)} u {(0, D_j f_i')}
// spans the same module as {h_D : h in I} over the product ring, via the
// identity (a f)_D = (a o pi1) f_D + (0, (a o pi2 - a o pi1)(f o pi2)).
struct DoubledModule {
    std::vector<Poly> baseGens;
    std::vector<std::string> coordVars;    // doubled coordinates
    std::vector<std::string> relativeVars; // shared parameters (X x_Y X)
    std::vector<Poly> diag;                // D_j = z_j - z_j'
    std::vector<std::pair<Poly, Poly>> genList;

    std::string primed(const std::string& v) const { return v + "'"; }
    Poly prime(const Poly& f) const; // rename coordVars to primed copies
};

DoubledModule double_ideal(const std::vector<Poly>& gens,
                           const std::vector<std::string>& coordVars,
                           const std::vector<std::string>& relativeVars = {});

// Apply a weight covector to every generator, e.g. (1,-1) gives the ideal
// generated by g o pi1 - g o pi2.
std::vector<Poly> contraction(const std::array<CycRat, 2>& weights, const DoubledModule& M);

// The two side assignments (unprimed and primed variables) of a pair-curve
// over the given branch list, with shared parameters frozen. `clip` truncates
// inexact branch components to the working precision before composing (exact
// components are kept exact so diagonal cancellations stay certified).
std::map<std::string, PSeries> pair_curve_assignment(const DoubledModule& M, const PairCurve& Phi,
                                                     const std::vector<Branch>& branches,
                                                     std::optional<Rat> clip = std::nullopt);

// Checks the PairCurve invariants: positive-order reparametrizations and both
// nonzero sides landing on the curve.
void validate_pair_curve(const PairCurve& Phi, const std::vector<Branch>& branches);

// 2-row matrix of the generator pullbacks along Phi.
DvrMatrix pullback_doubled(const DoubledModule& M, const PairCurve& Phi,
                           const std::vector<Branch>& branches, const Rat& T);

// Membership of h_D o Phi in the pulled-back doubled module along one curve.
// CertifiedNo here certifies h not in I_S (one curve refutes).
Verdict closure_membership_on_curve(const Poly& h, const DoubledModule& M, const PairCurve& Phi,
                                    const std::vector<Branch>& branches, const Rat& T);

// Bounded search over the pair-curve family (ordered branch pairs, coprime
// exponent pairs up to B.exp, root-of-unity twists up to order B.root and one
// generic rational, one-sided zero curves); candidates are ranked by the
// valuation of the (1,-1)-contraction pullback, highest first, so the
// reported witness is the sharpest one. CertifiedYes only through an explicit
// polynomial division within degree B.div.
Verdict saturation_membership(const Poly& h, const IdealOnCurve& I, const SearchBound& B,
                              const std::map<std::string, CycRat>& params = {},
                              const Rat& truncCeiling = Rat(4096));

// Exact polynomial-module membership by degree-bounded linear algebra: find
// slot-wise polynomial coefficients with sum_k g_k * gens_k == target, all
// deg(g_k) <= degree. The cell budget caps the dense system size; the reached
// degree is reported through *reachedDegree.
std::optional<std::vector<Poly>> symbolic_module_membership(
    const std::vector<Poly>& target, const std::vector<std::vector<Poly>>& gens, long degreeCap,
    long* reachedDegree = nullptr, long cellBudget = 200000);

} // namespace lipsat

#endif
