#ifndef LIPSAT_PUISEUX_HPP
#define LIPSAT_PUISEUX_HPP

#include <vector>

#include "lipsat/poly.hpp"

namespace lipsat {

// Exact parametrization t -> (x(t), y(t)) of one branch of a plane-curve germ
// at the origin. Components have integer exponents in t (the ramification is
// folded into the parameter) and the parametrization is primitive.
struct Branch {
    std::vector<std::string> vars; // ambient coordinate names, sorted
    std::vector<PSeries> comps;    // one series per coordinate
    long mult = 0;                 // order of the minimal-order component
    Poly source;                   // the defining equation

    std::map<std::string, PSeries> assignment() const;
    // assignment with each component reparametrized by u (t -> u(t))
    std::map<std::string, PSeries> assignment(const PSeries& u) const;
    std::string str() const; // "(t^5, -t^2)"
};

// Default working truncation for branch expansions of f.
Rat default_truncation(const Poly& f);

// f divided by its repeated factors (exact subresultant-style gcd arithmetic).
// Requires f nonzero with f(0,0) = 0; NoSingularPoint otherwise.
Poly squarefree_part(const Poly& f);

// All branches of {f = 0} at the origin, for squarefree f in two variables.
// Branch expansions are exact in cyclotomic numbers; a genuinely non-cyclotomic
// leading-coefficient equation raises UnsupportedExtension and names the
// polynomial that would need solving.
std::vector<Branch> puiseux_branches(const Poly& f, const Rat& T);
std::vector<Branch> puiseux_branches(const Poly& f);

// Certifies that substituting b into f vanishes to order >= T.
bool verify_branch(const Poly& f, const Branch& b, const Rat& T);

// Univariate polynomials over CycRat (coefficient of C^i at index i); used by
// the Newton-polygon solver and exposed for tests.
using UPoly = std::vector<CycRat>;

UPoly upoly_trim(UPoly p);
UPoly upoly_derive(const UPoly& p);
std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b);
UPoly upoly_gcd(UPoly a, UPoly b); // monic
CycRat upoly_eval(const UPoly& p, const CycRat& x);

// Roots of p in cyclotomic numbers with multiplicities, in a deterministic
// order; UnsupportedExtension if a non-cyclotomic extension would be needed.
std::vector<std::pair<CycRat, int>> upoly_roots(const UPoly& p);

} // namespace lipsat

#endif
