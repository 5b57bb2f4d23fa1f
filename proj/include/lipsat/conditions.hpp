#ifndef LIPSAT_CONDITIONS_HPP
#define LIPSAT_CONDITIONS_HPP

#include "lipsat/doubling.hpp"

namespace lipsat {

// A family of isolated hypersurface singularities F(z, y) over the parameter
// axis Y = {z = 0}. m_Y is the ideal of Y, generated by the fiber coordinates
// (they restrict to generators of the maximal ideals of the fibers).
struct Family {
    Poly F;
    std::vector<std::string> fiberVars;
    std::vector<std::string> paramVars;
    std::vector<Poly> Jz; // dF/dz_i
    std::vector<Poly> JY; // dF/dy_j
    std::vector<Poly> mY; // fiber coordinates as ideal generators

    std::map<std::string, CycRat> param_point(const std::vector<Rat>& y0) const;
    Poly fiber(const std::vector<Rat>& y0) const;
};

// Splits variables and validates that Y lies in the singular locus
// (NotAFamilyOverY otherwise).
Family family_ideals(const Poly& F, const std::vector<std::string>& fiberVars,
                     const std::vector<std::string>& paramVars);

// Infinitesimal Lipschitz condition iL_A at the parameter point y0:
// J(F)_Y c (J_z(F))_S, probed fiberwise (sound CertifiedNo; CertifiedYes only
// through an ambient division certificate).
Verdict check_ilA(const Family& fam, const std::vector<Rat>& y0, const SearchBound& B);

// iL_{m_Y}: J(F)_Y c (m_Y J_z(F))_S, same scheme with the smaller module.
Verdict check_ilmY(const Family& fam, const std::vector<Rat>& y0, const SearchBound& B);

// Verdier's condition W: J(F)_Y c closure(m_Y J_z(F)), undoubled curve
// criterion on the fiber.
Verdict check_W(const Family& fam, const std::vector<Rat>& y0, const SearchBound& B);

// Exact rank (0, 1, 2) of the doubled generator matrix evaluated at a point
// pair (x, x', y) on X x_Y X. useMY selects (m_Y J_z(F))_D over J_z(F)_D.
int cosupport_rank(const Family& fam, const std::map<std::string, CycRat>& point,
                   bool useMY = true);

struct SweepRow {
    std::vector<Rat> y0;
    std::optional<Verdict> ilA, ilmY, W;
    std::string error; // nonempty if the sample failed outright
    std::string signature() const;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::string majority;
    std::vector<size_t> exceptional;
};

SweepReport parameter_sweep(const Family& fam, const std::vector<std::vector<Rat>>& samples,
                            const SearchBound& B);

// The Grassmann-modification chart G = F o beta with
// beta(z, a) = (z_1, ..., z_{n-1}, sum a_i z_i) in the chart where coordinate
// `chart` is dependent; dGda and JzG are verified symbolically against the
// chain rule identity dG/da_i = z_i * (dF/dz_n o beta).
struct GrassmannChart {
    Poly G;
    std::vector<Poly> dGda;
    std::vector<Poly> JzG;
    std::vector<std::string> aVars;
    std::string dependentVar;
};

GrassmannChart grassmann_chart(const Poly& F, int chart);

// Fiberwise falsifier for the Cor.-4.5 genericity condition of a hyperplane
// H = {sum H_i z_i = 0} through an isolated hypersurface singularity in 3
// variables: parametrizes X n H and runs saturation membership of the test
// elements z_i dF/dz_n o beta against J_z(G) on the section.
Verdict hyperplane_section_check(const Poly& F, const std::vector<Rat>& H, const SearchBound& B);

} // namespace lipsat

#endif
