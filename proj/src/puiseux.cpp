/* Newton-Puiseux expansion of plane-curve germs, rational-parametrization
 * style: substitutions x = lambda*X^p, y = X^q*(c + Y) keep leading
 * coefficients inside the cyclotomic field generated by the edge-polynomial
 * roots, so no root extractions beyond those roots are ever needed. */

#include "lipsat/puiseux.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lipsat {

// ---------------------------------------------------------------------------
// univariate helpers

UPoly upoly_trim(UPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

UPoly upoly_derive(const UPoly& p) {
    UPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * CycRat(rat((long)i)));
    return upoly_trim(std::move(d));
}

std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b) {
    if (b.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
    UPoly r = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, CycRat::zero());
    CycRat ilead = b.back().inv();
    while (r.size() >= b.size()) {
        r = upoly_trim(std::move(r));
        if (r.size() < b.size()) break;
        CycRat c = r.back() * ilead;
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
        r.pop_back();
    }
    return {upoly_trim(std::move(q)), upoly_trim(std::move(r))};
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    a = upoly_trim(std::move(a));
    b = upoly_trim(std::move(b));
    while (!b.empty()) {
        auto [q, r] = upoly_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        CycRat ilead = a.back().inv();
        for (auto& c : a) c *= ilead;
    }
    return a;
}

CycRat upoly_eval(const UPoly& p, const CycRat& x) {
    CycRat acc = CycRat::zero();
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

namespace {

std::string upoly_str(const UPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << p[i].str() << ")";
        if (i > 0) os << "*C^" << i;
    }
    if (first) os << "0";
    return os.str();
}

bool upoly_all_rational(const UPoly& p) {
    return std::all_of(p.begin(), p.end(), [](const CycRat& c) { return c.is_rational(); });
}

// rational roots of a rational-coefficient polynomial, by the rational root
// theorem after clearing denominators
std::vector<CycRat> rational_roots(const UPoly& p) {
    std::vector<CycRat> out;
    mpz_class denlcm = 1;
    for (const auto& c : p) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), denlcm.get_mpz_t(), c.rat_value().get_den().get_mpz_t());
        denlcm = l;
    }
    std::vector<mpz_class> z;
    for (const auto& c : p) z.push_back(c.rat_value().get_num() * (denlcm / c.rat_value().get_den()));
    size_t lo = 0;
    while (lo < z.size() && z[lo] == 0) ++lo; // roots at 0 are not wanted here
    if (lo >= z.size()) return out;
    auto divisors = [](const mpz_class& n) {
        std::vector<mpz_class> d{1};
        for (auto& [p2, e] : factor_integer(n)) {
            size_t sz = d.size();
            mpz_class pk = 1;
            for (unsigned i = 0; i < e; ++i) {
                pk *= p2;
                for (size_t j = 0; j < sz; ++j) d.push_back(d[j] * pk);
            }
        }
        return d;
    };
    for (const auto& dn : divisors(z[lo])) {
        for (const auto& dl : divisors(z.back())) {
            for (int sign : {1, -1}) {
                CycRat cand{rat_of(sign * dn, dl)};
                if (upoly_eval(upoly_trim(UPoly(p)), cand).is_zero()) {
                    if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
                }
            }
        }
    }
    return out;
}

} // namespace

std::vector<std::pair<CycRat, int>> upoly_roots(const UPoly& p_in) {
    UPoly p = upoly_trim(p_in);
    if (p.empty()) fail(ErrorCode::InternalError, "roots of the zero polynomial");
    // squarefree part; multiplicities recovered afterwards by division
    UPoly sf = p;
    if (p.size() > 2) {
        UPoly g = upoly_gcd(p, upoly_derive(p));
        if (g.size() > 1) sf = upoly_divmod(p, g).first;
    }
    std::vector<CycRat> roots;
    UPoly rem = sf;
    // strip roots at 0
    while (rem.size() > 1 && rem.front().is_zero()) {
        roots.push_back(CycRat::zero());
        rem.erase(rem.begin());
    }
    while (rem.size() > 1) {
        if (rem.size() == 2) {
            roots.push_back(-rem[0] * rem[1].inv());
            rem = {rem[1]};
            continue;
        }
        bool binomial = true;
        for (size_t i = 1; i + 1 < rem.size(); ++i)
            if (!rem[i].is_zero()) { binomial = false; break; }
        if (binomial) {
            auto rs = cyc_roots(-rem[0] * rem.back().inv(), (long)rem.size() - 1);
            if (!rs) fail(ErrorCode::UnsupportedExtension,
                          "roots of " + upoly_str(rem) + " generate a non-cyclotomic extension");
            for (const auto& r : *rs) roots.push_back(r);
            rem = {rem.back()};
            continue;
        }
        if (rem.size() == 3) {
            CycRat a = rem[2], b = rem[1], c = rem[0];
            CycRat disc = b * b - CycRat(rat(4)) * a * c;
            auto sq = cyc_roots(disc, 2);
            if (!sq) fail(ErrorCode::UnsupportedExtension,
                          "discriminant of " + upoly_str(rem) + " has no cyclotomic square root");
            CycRat half = CycRat(rat(1, 2)) * a.inv();
            for (const auto& s : *sq) roots.push_back((-b + s) * half);
            rem = {rem.back()};
            continue;
        }
        if (upoly_all_rational(rem)) {
            auto rr = rational_roots(rem);
            if (!rr.empty()) {
                for (const auto& r : rr) {
                    roots.push_back(r);
                    UPoly lin{-r, CycRat::one()};
                    rem = upoly_divmod(rem, lin).first;
                }
                continue;
            }
        }
        fail(ErrorCode::UnsupportedExtension,
             "cannot solve " + upoly_str(rem) + " in cyclotomic numbers");
    }
    std::sort(roots.begin(), roots.end(),
              [](const CycRat& x, const CycRat& y) { return CycRat::compare(x, y) < 0; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    std::vector<std::pair<CycRat, int>> out;
    for (const auto& r : roots) {
        UPoly lin{-r, CycRat::one()};
        int mult = 0;
        UPoly cur = p;
        while (true) {
            auto [q, rr] = upoly_divmod(cur, lin);
            if (!rr.empty()) break;
            ++mult;
            cur = std::move(q);
        }
        if (mult > 0) out.push_back({r, mult});
    }
    return out;
}

// ---------------------------------------------------------------------------
// bivariate gcd and squarefree part

namespace {

// f as a polynomial in yvar with UPoly-in-xvar coefficients
std::vector<UPoly> to_biv(const Poly& f, const std::string& xvar, const std::string& yvar) {
    Poly a = f.aligned_to({std::min(xvar, yvar), std::max(xvar, yvar)});
    size_t xi = xvar < yvar ? 0 : 1, yi = 1 - xi;
    std::vector<UPoly> out;
    for (const auto& [e, c] : a.terms()) {
        size_t ye = e[yi], xe = e[xi];
        if (out.size() <= ye) out.resize(ye + 1);
        if (out[ye].size() <= xe) out[ye].resize(xe + 1, CycRat::zero());
        out[ye][xe] = c;
    }
    for (auto& u : out) u = upoly_trim(std::move(u));
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

Poly from_biv(const std::vector<UPoly>& b, const std::string& xvar, const std::string& yvar) {
    Poly out;
    Poly X = Poly::variable(xvar), Y = Poly::variable(yvar);
    for (size_t ye = 0; ye < b.size(); ++ye)
        for (size_t xe = 0; xe < b[ye].size(); ++xe)
            if (!b[ye][xe].is_zero())
                out += Poly::constant(b[ye][xe]) * X.pow(xe) * Y.pow(ye);
    return out;
}

UPoly biv_content(const std::vector<UPoly>& b) {
    UPoly g;
    for (const auto& u : b)
        if (!u.empty()) g = g.empty() ? upoly_gcd(u, u) : upoly_gcd(g, u);
    return g;
}

std::vector<UPoly> biv_scale_down(const std::vector<UPoly>& b, const UPoly& d) {
    std::vector<UPoly> out;
    for (const auto& u : b) {
        if (u.empty()) { out.push_back({}); continue; }
        auto [q, r] = upoly_divmod(u, d);
        if (!r.empty()) fail(ErrorCode::InternalError, "content division not exact");
        out.push_back(q);
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

std::vector<UPoly> biv_mul_upoly(const std::vector<UPoly>& b, const UPoly& m) {
    std::vector<UPoly> out;
    for (const auto& u : b) {
        if (u.empty() || m.empty()) { out.push_back({}); continue; }
        UPoly prod(u.size() + m.size() - 1, CycRat::zero());
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = 0; j < m.size(); ++j) prod[i + j] += u[i] * m[j];
        out.push_back(upoly_trim(std::move(prod)));
    }
    return out;
}

// pseudo-remainder of a by b in the y variable (both primitive recommended)
std::vector<UPoly> biv_prem(std::vector<UPoly> a, const std::vector<UPoly>& b) {
    if (b.empty()) fail(ErrorCode::DivisionByZero, "bivariate division by zero");
    const UPoly& lb = b.back();
    while (a.size() >= b.size()) {
        while (!a.empty() && a.back().empty()) a.pop_back();
        if (a.size() < b.size()) break;
        // a = a*lb - lead(a)*y^k * b
        UPoly la = a.back();
        size_t shift = a.size() - b.size();
        std::vector<UPoly> scaled = biv_mul_upoly(a, lb);
        std::vector<UPoly> sub(shift);
        for (const auto& u : biv_mul_upoly(b, la)) sub.push_back(u);
        if (scaled.size() < sub.size()) scaled.resize(sub.size());
        for (size_t i = 0; i < sub.size(); ++i) {
            if (sub[i].empty()) continue;
            UPoly& t = scaled[i];
            t.resize(std::max(t.size(), sub[i].size()), CycRat::zero());
            for (size_t j = 0; j < sub[i].size(); ++j) t[j] -= sub[i][j];
            t = upoly_trim(std::move(t));
        }
        while (!scaled.empty() && scaled.back().empty()) scaled.pop_back();
        a = std::move(scaled);
        if (!a.empty() && a.size() > shift + b.size() - 1)
            fail(ErrorCode::InternalError, "pseudo-remainder did not reduce");
    }
    return a;
}

std::vector<UPoly> biv_primitive(const std::vector<UPoly>& b) {
    UPoly c = biv_content(b);
    if (c.empty() || c.size() == 1) return b;
    return biv_scale_down(b, c);
}

// primitive-PRS gcd in the y variable
std::vector<UPoly> biv_gcd(std::vector<UPoly> a, std::vector<UPoly> b) {
    UPoly ca = biv_content(a), cb = biv_content(b);
    a = biv_primitive(a);
    b = biv_primitive(b);
    while (true) {
        while (!b.empty() && b.back().empty()) b.pop_back();
        if (b.empty()) break;
        if (a.size() < b.size()) std::swap(a, b);
        if (b.size() == 0) break;
        auto r = biv_prem(a, b);
        a = std::move(b);
        b = biv_primitive(r);
    }
    UPoly cg = upoly_gcd(ca, cb);
    std::vector<UPoly> g = biv_mul_upoly(biv_primitive(a), cg);
    // normalize: monic leading coefficient in its leading term
    if (!g.empty() && !g.back().empty()) {
        CycRat ilead = g.back().back().inv();
        for (auto& u : g)
            for (auto& c : u) c *= ilead;
    }
    return g;
}

std::vector<UPoly> biv_divexact(const std::vector<UPoly>& a, const std::vector<UPoly>& b) {
    // division in K(x)[y] that must come out polynomial: clear by b's leading
    // coefficient as we go, verifying exactness via upoly division
    std::vector<UPoly> r = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1);
    while (true) {
        while (!r.empty() && r.back().empty()) r.pop_back();
        if (r.empty()) break;
        if (r.size() < b.size()) fail(ErrorCode::InternalError, "bivariate division not exact");
        auto [qc, rc] = upoly_divmod(r.back(), b.back());
        if (!rc.empty()) fail(ErrorCode::InternalError, "bivariate division not exact (coefficient)");
        size_t shift = r.size() - b.size();
        q[shift] = qc;
        std::vector<UPoly> sub(shift);
        for (const auto& u : biv_mul_upoly(b, qc)) sub.push_back(u);
        for (size_t i = 0; i < sub.size(); ++i) {
            if (sub[i].empty()) continue;
            UPoly& t = r[i];
            t.resize(std::max(t.size(), sub[i].size()), CycRat::zero());
            for (size_t j = 0; j < sub[i].size(); ++j) t[j] -= sub[i][j];
            t = upoly_trim(std::move(t));
        }
        r.pop_back();
    }
    return q;
}

UPoly upoly_squarefree(const UPoly& p) {
    if (p.size() <= 2) return p;
    UPoly g = upoly_gcd(p, upoly_derive(p));
    if (g.size() <= 1) return p;
    return upoly_divmod(p, g).first;
}

} // namespace

Poly squarefree_part(const Poly& f) {
    if (f.is_zero()) fail(ErrorCode::NoSingularPoint, "zero polynomial");
    if (!f.constant_term().is_zero())
        fail(ErrorCode::NoSingularPoint, "f(0,0) != 0: no singular point at the origin");
    std::vector<std::string> vars = f.vars();
    if (vars.size() == 1) {
        // univariate edge case: squarefree part in that single variable
        std::string v = vars[0];
        UPoly u;
        Poly a = f.aligned_to({v});
        for (const auto& [e, c] : a.terms()) {
            if (u.size() <= (size_t)e[0]) u.resize(e[0] + 1, CycRat::zero());
            u[e[0]] = c;
        }
        UPoly s = upoly_squarefree(upoly_trim(std::move(u)));
        Poly out;
        for (size_t i = 0; i < s.size(); ++i)
            if (!s[i].is_zero()) out += Poly::constant(s[i]) * Poly::variable(v).pow(i);
        return out;
    }
    if (vars.size() != 2) fail(ErrorCode::DegenerateInput, "squarefree_part expects a plane curve");
    const std::string &xv = vars[0], &yv = vars[1];
    auto b = to_biv(f, xv, yv);
    UPoly content = biv_content(b);
    std::vector<UPoly> pp = biv_scale_down(b, content);
    // squarefree part of the primitive part via gcd with its y-derivative
    std::vector<UPoly> dpp;
    for (size_t ye = 1; ye < pp.size(); ++ye) {
        UPoly u = pp[ye];
        for (auto& c : u) c *= CycRat(rat((long)ye));
        dpp.push_back(std::move(u));
    }
    std::vector<UPoly> sfpp = pp;
    if (pp.size() > 2) {
        auto g = biv_gcd(pp, dpp);
        if (g.size() > 1) sfpp = biv_divexact(pp, g);
    }
    Poly out = from_biv(sfpp, xv, yv);
    // x-only repeated factors live in the content
    UPoly sfc = upoly_squarefree(content);
    Poly cp;
    for (size_t i = 0; i < sfc.size(); ++i)
        if (!sfc[i].is_zero()) cp += Poly::constant(sfc[i]) * Poly::variable(xv).pow(i);
    out = out * cp;
    // canonical scaling: lex-leading term monic
    if (!out.is_zero()) {
        CycRat lead = out.terms().rbegin()->second;
        out = out.scale(lead.inv());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Newton-Puiseux expansion

namespace {

struct EdgeRoot {
    long p = 1, q = 1;  // gamma = q/p in lowest terms
    CycRat C0;          // root of the edge polynomial Psi
    int mult = 1;
    CycRat lambda, c;   // substitution x = lambda X^p, y = X^q (c + Y)
};

// divide f by var^k exactly
Poly shift_out(const Poly& f, const std::string& var, long k) {
    if (k == 0) return f;
    auto vs = f.vars();
    auto it = std::find(vs.begin(), vs.end(), var);
    if (it == vs.end()) fail(ErrorCode::InternalError, "shift_out: variable absent");
    size_t idx = it - vs.begin();
    Poly out;
    for (const auto& [e, c] : f.terms()) {
        if (e[idx] < k) fail(ErrorCode::InternalError, "shift_out: not divisible");
        std::vector<int> ne = e;
        ne[idx] -= k;
        Poly mono = Poly::constant(c);
        for (size_t i = 0; i < vs.size(); ++i)
            if (ne[i]) mono *= Poly::variable(vs[i]).pow(ne[i]);
        out += mono;
    }
    return out;
}

long var_divisibility(const Poly& f, const std::string& var) {
    auto vs = f.vars();
    auto it = std::find(vs.begin(), vs.end(), var);
    if (it == vs.end()) return 0;
    size_t idx = it - vs.begin();
    long k = -1;
    for (const auto& [e, c] : f.terms()) k = (k < 0) ? e[idx] : std::min(k, (long)e[idx]);
    return std::max(k, 0L);
}

// lower hull of the support in the (y-exponent, x-exponent) plane
std::vector<EdgeRoot> newton_edges(const Poly& f, const std::string& xv, const std::string& yv) {
    std::map<long, long> minalpha; // beta -> min alpha
    Poly a = f.aligned_to({std::min(xv, yv), std::max(xv, yv)});
    size_t xi = xv < yv ? 0 : 1, yi = 1 - xi;
    for (const auto& [e, c] : a.terms()) {
        long beta = e[yi], alpha = e[xi];
        auto it = minalpha.find(beta);
        if (it == minalpha.end() || alpha < it->second) minalpha[beta] = alpha;
    }
    std::vector<std::pair<long, long>> pts(minalpha.begin(), minalpha.end());
    // lower convex hull, beta ascending
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto [b1, a1] = hull[hull.size() - 2];
            auto [b2, a2] = hull[hull.size() - 1];
            // drop if pt is below or on the segment (b1,a1)-(b2,a2)
            if ((a2 - a1) * (pt.first - b1) >= (pt.second - a1) * (b2 - b1))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    std::vector<EdgeRoot> out;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        auto [b1, a1] = hull[i];
        auto [b2, a2] = hull[i + 1];
        if (a1 <= a2) continue; // only strictly descending edges carry y -> 0 solutions
        long db = b2 - b1, da = a1 - a2;
        long g = gcd_long(db, da);
        long p = db / g, q = da / g;
        // edge polynomial Psi(C) = sum_j a_(alpha1 - j q, beta1 + j p) C^j
        UPoly psi;
        for (long j = 0; j * p <= db; ++j) {
            CycRat coef = a.coeff({xv, yv}, {(int)(a1 - j * q), (int)(b1 + j * p)});
            psi.push_back(coef);
        }
        psi = upoly_trim(std::move(psi));
        for (const auto& [C0, mult] : upoly_roots(psi)) {
            if (C0.is_zero()) continue;
            EdgeRoot er;
            er.p = p;
            er.q = q;
            er.C0 = C0;
            er.mult = mult;
            // Bezout: s*p + r*q = 1; c = C0^s, lambda = C0^(-r), so that
            // c^p lambda^(-q) = C0 solves the edge equation with no root
            // extraction beyond C0 itself
            long s = 0;
            for (long cand = 0; cand <= q; ++cand)
                if ((cand * p) % q == 1 % q) { s = cand; break; }
            long r = (1 - s * p) / q;
            er.c = er.C0.pow(s);
            er.lambda = er.C0.pow(-r);
            out.push_back(er);
        }
    }
    return out;
}

struct ParamPair {
    PSeries x, y;
};

// Hensel continuation: the unique series solution Y(X), Y(0)=0, of f with
// f(0,0)=0 and dF/dY(0,0) != 0, to precision T.
PSeries hensel_solve(const Poly& f, const std::string& Xv, const std::string& Yv, const Rat& T) {
    if (var_divisibility(f, Yv) >= 1) return PSeries(); // Y | f: the solution is exactly 0
    Poly fy = f.partial(Yv);
    PSeries y = PSeries::zero_truncated(T); // current approximation
    PSeries Xs = PSeries::var();
    for (int guard = 0; guard < 256; ++guard) {
        std::map<std::string, PSeries> a{{Xv, Xs}, {Yv, y}};
        PSeries val = poly_substitute(f, a);
        auto vo = val.order();
        if (!vo) {
            // converged to precision; recover exactness if the expansion
            // actually terminated (polynomial solution)
            PSeries candidate;
            for (const auto& [e, c] : y.terms()) candidate = candidate + PSeries::monomial(c, e);
            std::map<std::string, PSeries> chk{{Xv, Xs}, {Yv, candidate}};
            if (poly_substitute(f, chk).is_exact_zero()) return candidate;
            return y;
        }
        PSeries der = poly_substitute(fy, a);
        PSeries step = PSeries::divide(val, der, T);
        y = (y - step).truncated(T);
    }
    fail(ErrorCode::InternalError, "hensel iteration did not converge");
}

std::vector<ParamPair> newton_expand(const Poly& f_in, const std::string& xv,
                                     const std::string& yv, const Rat& T, int depth) {
    if (depth > 64) fail(ErrorCode::InternalError, "newton recursion too deep");
    std::vector<ParamPair> out;
    Poly f = f_in;
    // y | f: the solution Y == 0
    long ydiv = var_divisibility(f, yv);
    if (ydiv > 0) {
        out.push_back({PSeries::var(), PSeries()});
        f = shift_out(f, yv, ydiv);
    }
    if (f.is_zero()) fail(ErrorCode::InternalError, "newton_expand on zero polynomial");
    if (!f.constant_term().is_zero()) return out; // unit: nothing more through the origin
    for (const EdgeRoot& er : newton_edges(f, xv, yv)) {
        // f1(X, Y) = f(lambda X^p, X^q (c + Y)) / X^D
        std::map<std::string, Poly> sub{
            {xv, Poly::constant(er.lambda) * Poly::variable(xv).pow(er.p)},
            {yv, Poly::variable(xv).pow(er.q) * (Poly::constant(er.c) + Poly::variable(yv))},
        };
        Poly f1 = f.substitute_polys(sub);
        f1 = shift_out(f1, xv, var_divisibility(f1, xv));
        auto clip = [&T](const PSeries& s) { return s.exact() ? s : s.truncated(T); };
        if (er.mult == 1) {
            PSeries Y = hensel_solve(f1, xv, yv, T);
            PSeries X = PSeries::var();
            PSeries x = X.pow(er.p).scale(er.lambda);
            PSeries y = X.pow(er.q) * (PSeries::constant(er.c) + Y);
            out.push_back({clip(x), clip(y)});
        } else {
            for (const auto& sp : newton_expand(f1, xv, yv, T, depth + 1)) {
                PSeries X = sp.x;
                PSeries x = X.pow(er.p).scale(er.lambda);
                PSeries y = X.pow(er.q) * (PSeries::constant(er.c) + sp.y);
                out.push_back({clip(x), clip(y)});
            }
        }
    }
    return out;
}

// reduce to a primitive parametrization and apply the canonical unit
// normalization (monic minimal-order component when a unit in the current
// coefficient field achieves it)
void normalize_branch(Branch& b) {
    // primitivity: gcd of all exponents (only provable when the components are
    // exact; truncated expansions are primitive by construction)
    long g = 0;
    bool any = false, all_exact = true;
    for (const auto& s : b.comps) {
        if (!s.exact()) all_exact = false;
        for (const auto& [e, c] : s.terms()) {
            if (!is_integer(e)) fail(ErrorCode::InternalError, "branch exponent not integral");
            g = gcd_long(g, to_long(e));
            any = true;
        }
    }
    if (!any) return;
    if (!all_exact) g = 1;
    if (g > 1) {
        for (auto& s : b.comps) {
            PSeries ns;
            std::optional<Rat> T = s.trunc();
            for (const auto& [e, c] : s.terms()) ns = ns + PSeries::monomial(c, e / g);
            if (T) ns = ns.truncated(*T / g);
            s = ns;
        }
    }
    // minimal-order component
    int mi = -1;
    Rat mo;
    for (size_t i = 0; i < b.comps.size(); ++i) {
        auto o = b.comps[i].order();
        if (!o) continue;
        if (mi < 0 || *o < mo) { mi = (int)i; mo = *o; }
    }
    if (mi < 0) return;
    b.mult = to_long(mo);
    CycRat c = b.comps[mi].lead_coeff();
    if (c == CycRat::one()) return;
    long m = b.mult;
    long L = 2;
    for (const auto& s : b.comps)
        for (const auto& [e, q] : s.terms()) L = lcm_long(L, q.level());
    // look for u = rho * zeta_L^j in the current field with u^m c = 1
    for (long j = 0; j < L; ++j) {
        CycRat w = CycRat::root_of_unity(L, (j * m) % L) * c;
        if (!w.is_rational()) continue;
        Rat wr = w.rat_value();
        if (wr == 0) continue;
        std::optional<Rat> rho;
        if (auto rr = exact_rat_root(wr > 0 ? Rat(1) / wr : Rat(-1) / wr, m)) {
            if (wr > 0)
                rho = *rr;
            else if (m % 2 == 1)
                rho = Rat(-*rr);
        }
        if (!rho) continue;
        CycRat u = CycRat(*rho) * CycRat::root_of_unity(L, j);
        for (auto& s : b.comps) {
            PSeries ns;
            std::optional<Rat> T = s.trunc();
            for (const auto& [e, q] : s.terms()) ns = ns + PSeries::monomial(q * u.pow(to_long(e)), e);
            if (T) ns = ns.truncated(*T);
            s = ns;
        }
        return;
    }
}

} // namespace

Rat default_truncation(const Poly& f) {
    long d = std::max(f.degree(), 2L);
    return rat(4 * d * d);
}

std::map<std::string, PSeries> Branch::assignment() const {
    std::map<std::string, PSeries> a;
    for (size_t i = 0; i < vars.size(); ++i) a[vars[i]] = comps[i];
    return a;
}

std::map<std::string, PSeries> Branch::assignment(const PSeries& u) const {
    std::map<std::string, PSeries> a;
    for (size_t i = 0; i < vars.size(); ++i) a[vars[i]] = comps[i].compose(u);
    return a;
}

std::string Branch::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < comps.size(); ++i) {
        if (i) os << ", ";
        PSeries shown = comps[i];
        os << shown.str();
    }
    os << ")";
    return os.str();
}

std::vector<Branch> puiseux_branches(const Poly& f) {
    return puiseux_branches(f, default_truncation(f));
}

std::vector<Branch> puiseux_branches(const Poly& f, const Rat& T) {
    if (f.is_zero()) fail(ErrorCode::NoSingularPoint, "zero polynomial");
    if (!f.constant_term().is_zero())
        fail(ErrorCode::NoSingularPoint, "curve does not pass through the origin");
    if (T <= 0) fail(ErrorCode::TruncationInsufficient, "nonpositive truncation");
    std::vector<std::string> vars = f.vars();
    if (vars.size() > 2) fail(ErrorCode::DegenerateInput, "puiseux_branches expects a plane curve");
    if (vars.size() == 1) { // e.g. f = x^2: treat as a curve in a coordinate plane
        vars.push_back(vars[0] == "y" ? "x" : "y");
        std::sort(vars.begin(), vars.end());
    }
    const std::string &xv = vars[0], &yv = vars[1];
    if (squarefree_part(f).degree() != f.degree())
        fail(ErrorCode::DegenerateInput, "not squarefree: " + f.str());
    std::vector<Branch> out;
    Poly g = f;
    long xdiv = var_divisibility(g, xv);
    if (xdiv > 1) fail(ErrorCode::DegenerateInput, "not squarefree: " + xv + " divides repeatedly");
    if (xdiv == 1) {
        g = shift_out(g, xv, 1);
        Branch b;
        b.vars = vars;
        b.comps = {PSeries(), PSeries::var()};
        b.mult = 1;
        b.source = f;
        out.push_back(b);
    }
    long ydiv = var_divisibility(g, yv);
    if (ydiv > 1) fail(ErrorCode::DegenerateInput, "not squarefree: " + yv + " divides repeatedly");
    if (ydiv == 1) {
        g = shift_out(g, yv, 1);
        Branch b;
        b.vars = vars;
        b.comps = {PSeries::var(), PSeries()};
        b.mult = 1;
        b.source = f;
        out.push_back(b);
    }
    if (!g.is_constant() && g.constant_term().is_zero()) {
        for (const auto& pp : newton_expand(g, xv, yv, T, 0)) {
            Branch b;
            b.vars = vars;
            b.comps = {pp.x, pp.y};
            b.source = f;
            normalize_branch(b);
            out.push_back(b);
        }
    }
    for (auto& b : out) {
        if (!verify_branch(f, b, T))
            fail(ErrorCode::TruncationInsufficient,
                 "branch residual visible below truncation: " + b.str());
    }
    return out;
}

bool verify_branch(const Poly& f, const Branch& b, const Rat& T) {
    std::map<std::string, PSeries> a;
    for (size_t i = 0; i < b.vars.size(); ++i) a[b.vars[i]] = b.comps[i].truncated(T);
    for (const auto& v : f.vars())
        if (!a.count(v)) return false;
    PSeries res = poly_substitute(f, a);
    if (res.is_exact_zero()) return true;
    auto o = res.order();
    if (o) return false; // visible residual
    return !res.trunc() || *res.trunc() >= T;
}

} // namespace lipsat
