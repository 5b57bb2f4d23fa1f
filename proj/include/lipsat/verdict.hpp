#ifndef LIPSAT_VERDICT_HPP
#define LIPSAT_VERDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "lipsat/puiseux.hpp"

namespace lipsat {

// A map of a disc into X x X (or X x_Y X): two branch parametrizations with
// reparametrizations, or the constant-zero map on one side. Twists are folded
// into the reparametrization coefficients. `params` freezes shared parameter
// coordinates (the relative, fiberwise setting). Plain data, replayable.
struct PairCurve {
    int b1 = 0, b2 = 0; // indices into the branch list; -1 = constant-zero side
    PSeries u1 = PSeries::var();
    PSeries u2 = PSeries::var();
    std::map<std::string, CycRat> params;

    std::string str() const;
};

struct SearchBound {
    long exp = 6;   // max reparametrization exponent
    long root = 10; // max twist root-of-unity order
    long div = 10;  // max degree in the symbolic-division verifier
    std::string str() const;
};

enum class VerdictKind { CertifiedYes, CertifiedNo, NoObstructionUpToBound };

const char* verdict_kind_name(VerdictKind k);

// Three-valued outcome shared by all membership engines. CertifiedNo carries a
// replayable witness; CertifiedYes carries the explicit combination when one
// was computed; NoObstructionUpToBound records the exhausted bounds and is
// never silently upgraded.
struct Verdict {
    VerdictKind kind = VerdictKind::NoObstructionUpToBound;
    std::string detail;

    // per-branch order table (curve-criterion checks)
    struct OrderRow {
        int branch = 0;
        std::optional<Rat> target; // nullopt: vanishes to truncation
        std::optional<Rat> ideal;
    };
    std::vector<OrderRow> orders;
    std::optional<int> witnessBranch;

    // module-level data (dvr/doubled checks)
    std::optional<Rat> residualOrder;
    std::vector<Rat> pivots;
    std::vector<PSeries> residual;
    std::vector<PSeries> combination;
    std::vector<Poly> polyCertificate; // symbolic-division certificate

    // pair-curve witness and the valuations that make it replayable
    std::optional<PairCurve> witness;
    std::optional<Rat> targetOrder;
    std::optional<Rat> contractionModuleOrder; // (1,-1) pullback ideal valuation
    std::optional<Rat> contractionTargetOrder;

    std::optional<SearchBound> bound;

    bool yes() const { return kind == VerdictKind::CertifiedYes; }
    bool no() const { return kind == VerdictKind::CertifiedNo; }
};

} // namespace lipsat

#endif
