/* Integral-closure membership and multiplicities on curve germs, plus the
 * valuation-pivot echelon reduction over the one-variable series ring. */

#include "lipsat/icurve.hpp"

#include <algorithm>
#include <sstream>

namespace lipsat {

const char* verdict_kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::CertifiedYes: return "CertifiedYes";
        case VerdictKind::CertifiedNo: return "CertifiedNo";
        case VerdictKind::NoObstructionUpToBound: return "NoObstructionUpToBound";
    }
    return "?";
}

std::string SearchBound::str() const {
    std::ostringstream os;
    os << "exp<=" << exp << ", root<=" << root << ", div<=" << div;
    return os.str();
}

std::string PairCurve::str() const {
    std::ostringstream os;
    auto side = [&](int b, const PSeries& u) {
        if (b < 0) return std::string("0");
        return "branch[" + std::to_string(b) + "] o (" + u.str() + ")";
    };
    os << "Phi = (" << side(b1, u1) << ", " << side(b2, u2) << ")";
    if (!params.empty()) {
        os << " at ";
        bool first = true;
        for (const auto& [k, v] : params) {
            if (!first) os << ", ";
            first = false;
            os << k << "=" << v.str();
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// ideals on curves

IdealOnCurve IdealOnCurve::make(std::vector<Poly> gens, const Poly& curve, const Rat& T) {
    for (const auto& g : gens)
        if (!g.constant_term().is_zero())
            fail(ErrorCode::DegenerateInput, "ideal generator does not vanish at the origin");
    IdealOnCurve I;
    I.gens = std::move(gens);
    I.branches = puiseux_branches(curve, T);
    return I;
}

IdealOnCurve IdealOnCurve::make(std::vector<Poly> gens, const Poly& curve) {
    return make(std::move(gens), curve, default_truncation(curve));
}

IdealOnCurve IdealOnCurve::jacobian(const Poly& f, const Rat& T) {
    std::vector<Poly> gens;
    for (const auto& v : f.vars()) gens.push_back(f.partial(v));
    return make(std::move(gens), f, T);
}

IdealOnCurve IdealOnCurve::jacobian(const Poly& f) {
    return jacobian(f, default_truncation(f));
}

PullbackResult pullback_ideal(const IdealOnCurve& I, const Branch& b) {
    if (I.gens.empty()) fail(ErrorCode::EmptyIdeal, "ideal has no generators");
    PullbackResult out;
    std::optional<Rat> best;
    bool all_exact_zero = true;
    std::optional<Rat> worstTrunc;
    auto a = b.assignment();
    for (const auto& g : I.gens) {
        PSeries p = poly_substitute(g, a);
        auto o = p.order();
        if (o && (!best || *o < *best)) best = o;
        if (!p.is_exact_zero()) all_exact_zero = false;
        if (!o && !p.exact()) {
            if (!worstTrunc || *p.trunc() < *worstTrunc) worstTrunc = p.trunc();
        }
        out.pulls.push_back(std::move(p));
    }
    if (!best) {
        if (all_exact_zero)
            fail(ErrorCode::NotFiniteColength,
                 "ideal vanishes identically on branch " + b.str());
        fail(ErrorCode::TruncationInsufficient,
             "all generator pullbacks vanish to truncation on branch " + b.str());
    }
    out.minOrder = *best;
    return out;
}

Verdict ic_membership(const Poly& h, const IdealOnCurve& I) {
    if (!h.constant_term().is_zero())
        fail(ErrorCode::DegenerateInput, "test element does not vanish at the origin");
    Verdict v;
    v.kind = VerdictKind::CertifiedYes;
    for (size_t bi = 0; bi < I.branches.size(); ++bi) {
        const Branch& b = I.branches[bi];
        PullbackResult pull = pullback_ideal(I, b);
        PSeries hp = poly_substitute(h, b.assignment());
        auto ho = hp.order();
        Verdict::OrderRow row{(int)bi, ho, pull.minOrder};
        v.orders.push_back(row);
        if (!ho) {
            if (hp.exact()) continue; // h vanishes identically on this branch
            if (*hp.trunc() >= pull.minOrder) continue;
            fail(ErrorCode::TruncationInsufficient,
                 "pullback of h invisible below the ideal valuation on branch " + b.str());
        }
        if (*ho < pull.minOrder && !v.no()) {
            v.kind = VerdictKind::CertifiedNo;
            v.witnessBranch = (int)bi;
            std::ostringstream os;
            os << "order " << rat_str(*ho) << " < ideal valuation " << rat_str(pull.minOrder)
               << " on branch " << b.str();
            v.detail = os.str();
        }
    }
    if (v.yes()) v.detail = "pullback order >= ideal valuation on every branch";
    return v;
}

long ideal_multiplicity(const IdealOnCurve& I) {
    Rat sum(0);
    for (const auto& b : I.branches) sum += pullback_ideal(I, b).minOrder;
    if (!is_integer(sum))
        fail(ErrorCode::InternalError, "non-integral multiplicity; branch not primitive?");
    return to_long(sum);
}

// ---------------------------------------------------------------------------
// DVR echelon reduction and membership

namespace {

std::optional<Rat> effective_trunc(const std::vector<PSeries>& col) {
    std::optional<Rat> t;
    for (const auto& e : col)
        if (!e.exact() && (!t || *e.trunc() < *t)) t = e.trunc();
    return t;
}

bool col_visible(const std::vector<PSeries>& col) {
    return std::any_of(col.begin(), col.end(),
                       [](const PSeries& e) { return !e.terms().empty(); });
}

bool col_exact_zero(const std::vector<PSeries>& col) {
    return std::all_of(col.begin(), col.end(),
                       [](const PSeries& e) { return e.is_exact_zero(); });
}

std::vector<PSeries> col_axpy(const std::vector<PSeries>& col, const PSeries& q,
                              const std::vector<PSeries>& pivot) {
    std::vector<PSeries> out;
    out.reserve(col.size());
    for (size_t i = 0; i < col.size(); ++i) {
        if (pivot[i].is_exact_zero() || q.is_exact_zero())
            out.push_back(col[i]);
        else
            out.push_back(col[i] - q * pivot[i]);
    }
    return out;
}

} // namespace

DvrMatrix DvrMatrix::make(int rows, std::vector<std::vector<PSeries>> cols, const Rat& trunc) {
    DvrMatrix M;
    M.rows = rows;
    M.trunc = trunc;
    for (const auto& c : cols)
        if ((int)c.size() != rows) fail(ErrorCode::InternalError, "column arity mismatch");
    M.cols = std::move(cols);
    return M;
}

DvrMatrix dvr_reduce(const DvrMatrix& M) {
    DvrMatrix E;
    E.rows = M.rows;
    E.trunc = M.trunc;
    std::vector<std::vector<PSeries>> work;
    auto retire = [&](const std::vector<PSeries>& col) {
        if (col_exact_zero(col)) return; // genuinely dependent, drop
        auto t = effective_trunc(col);
        E.droppedTrunc.push_back(t ? *t : M.trunc);
    };
    for (const auto& c : M.cols) {
        if (col_visible(c)) work.push_back(c);
        else retire(c);
    }
    std::vector<std::vector<PSeries>> echelon;
    std::vector<int> pivotRows;
    std::vector<Rat> pivots;
    for (int row = 0; row < M.rows; ++row) {
        int best = -1;
        Rat bestOrd;
        for (size_t j = 0; j < work.size(); ++j) {
            auto o = work[j][row].order();
            if (o && (best < 0 || *o < bestOrd)) {
                best = (int)j;
                bestOrd = *o;
            }
        }
        if (best < 0) continue;
        if (bestOrd >= M.trunc)
            fail(ErrorCode::TruncationInsufficient,
                 "pivot valuation " + rat_str(bestOrd) + " >= truncation " + rat_str(M.trunc));
        std::vector<PSeries> pivot = work[best];
        work.erase(work.begin() + best);
        // monic pivot: divide the column by the unit pivotEntry * t^-v
        PSeries unit = pivot[row].mul_monomial(CycRat::one(), -bestOrd);
        for (auto& e : pivot) e = PSeries::divide(e, unit, M.trunc);
        // eliminate this row from the remaining columns
        for (auto& col : work) {
            if (col[row].terms().empty()) continue;
            PSeries q = PSeries::divide(col[row], pivot[row], M.trunc);
            col = col_axpy(col, q, pivot);
        }
        // Hermite shape: earlier pivot columns keep only sub-v terms in this row
        for (size_t k = 0; k < echelon.size(); ++k) {
            PSeries& e = echelon[k][row];
            if (e.terms().empty()) continue;
            auto o = e.order();
            if (*o < bestOrd) {
                // strip the >= v part only
                PSeries high;
                for (const auto& [ex, c] : e.terms())
                    if (ex >= bestOrd) high = high + PSeries::monomial(c, ex);
                if (!e.exact()) high = high.truncated(*e.trunc());
                if (high.terms().empty()) continue;
                PSeries q = PSeries::divide(high, pivot[row], M.trunc);
                echelon[k] = col_axpy(echelon[k], q, pivot);
            } else {
                PSeries q = PSeries::divide(e, pivot[row], M.trunc);
                echelon[k] = col_axpy(echelon[k], q, pivot);
            }
        }
        echelon.push_back(std::move(pivot));
        pivotRows.push_back(row);
        pivots.push_back(bestOrd);
    }
    for (const auto& col : work) retire(col); // leftovers are dependent below trunc
    E.cols = std::move(echelon);
    E.pivotRows = std::move(pivotRows);
    E.pivots = std::move(pivots);
    return E;
}

Verdict dvr_membership(const std::vector<PSeries>& v, const DvrMatrix& M) {
    DvrMatrix E = M.pivotRows.empty() && !M.cols.empty() ? dvr_reduce(M) : M;
    if ((int)v.size() != E.rows) fail(ErrorCode::InternalError, "vector arity mismatch");
    for (const Rat& p : E.pivots)
        if (E.trunc < p + kDvrMargin)
            fail(ErrorCode::TruncationInsufficient,
                 "truncation " + rat_str(E.trunc) + " below pivot " + rat_str(p) + " + margin");
    Verdict out;
    out.pivots = E.pivots;
    std::vector<PSeries> r = v;
    std::vector<PSeries> comb(E.cols.size());
    for (auto& c : comb) c = PSeries();
    auto pivot_for_row = [&](int row) -> int {
        for (size_t k = 0; k < E.pivotRows.size(); ++k)
            if (E.pivotRows[k] == row) return (int)k;
        return -1;
    };
    auto refute = [&](int row, const Rat& o) {
        // hidden dropped columns cannot span a residual below their truncation
        for (const Rat& dt : E.droppedTrunc)
            if (o >= dt)
                fail(ErrorCode::TruncationInsufficient,
                     "residual order " + rat_str(o) + " not below a vanished column's truncation " +
                         rat_str(dt));
        out.kind = VerdictKind::CertifiedNo;
        out.residual = r;
        out.residualOrder = o;
        std::ostringstream os;
        os << "residual of order " << rat_str(o) << " in row " << row + 1;
        int k = pivot_for_row(row);
        if (k < 0)
            os << " (no pivot in that row)";
        else
            os << " below pivot valuation " << rat_str(E.pivots[k]);
        out.detail = os.str();
    };
    for (int row = 0; row < E.rows; ++row) {
        int k = pivot_for_row(row);
        auto o = r[row].order();
        if (!o) {
            if (r[row].exact()) continue;
            Rat tr = *r[row].trunc();
            if (k >= 0 && tr >= E.pivots[k]) continue; // hidden tail is spanned by the pivot
            if (k < 0 && tr >= E.trunc) continue;      // nothing hidden below the working window
            fail(ErrorCode::TruncationInsufficient,
                 "row " + std::to_string(row + 1) + " vanishes to " + rat_str(tr) +
                     " but a decision needs more");
        }
        if (k < 0) { refute(row, *o); return out; }
        if (*o < E.pivots[k]) { refute(row, *o); return out; }
        PSeries q = PSeries::divide(r[row], E.cols[k][row], E.trunc);
        comb[k] = comb[k] + q;
        for (int i = 0; i < E.rows; ++i) r[i] = r[i] - q * E.cols[k][i];
    }
    out.kind = VerdictKind::CertifiedYes;
    out.combination = comb;
    out.detail = "explicit series combination over the echelon basis";
    return out;
}

long pair_multiplicity_dvr(const DvrMatrix& M, const DvrMatrix& N) {
    DvrMatrix EM = dvr_reduce(M), EN = dvr_reduce(N);
    if (!EM.droppedTrunc.empty() || !EN.droppedTrunc.empty())
        fail(ErrorCode::TruncationInsufficient,
             "a generator vanished to truncation; pivot structure incomplete");
    for (const auto& col : M.cols) {
        if (col_exact_zero(col)) continue;
        Verdict w = dvr_membership(col, EN);
        if (!w.yes())
            fail(ErrorCode::NotNested, "a column of M is not in span(N): " + w.detail);
    }
    if (EM.pivotRows != EN.pivotRows)
        fail(ErrorCode::NotFiniteColength, "pivot rows differ; colength is not finite");
    Rat sum(0);
    for (size_t k = 0; k < EM.pivots.size(); ++k) {
        Rat d = EM.pivots[k] - EN.pivots[k];
        if (d < 0) fail(ErrorCode::NotNested, "pivot of M below pivot of N in the same row");
        sum += d;
    }
    if (!is_integer(sum)) fail(ErrorCode::InternalError, "non-integral pair multiplicity");
    return to_long(sum);
}

} // namespace lipsat
