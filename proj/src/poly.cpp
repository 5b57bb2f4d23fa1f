#include "lipsat/poly.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace lipsat {

Poly::Poly(const CycRat& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

Poly Poly::variable(const std::string& name) {
    Poly p;
    p.vars_ = {name};
    p.terms_[{1}] = CycRat::one();
    return p;
}

Poly Poly::monomial(const CycRat& c, const std::vector<std::string>& vars,
                    const std::vector<int>& exps) {
    if (vars.size() != exps.size()) fail(ErrorCode::InternalError, "monomial arity mismatch");
    Poly p = Poly(c);
    for (size_t i = 0; i < vars.size(); ++i)
        for (int k = 0; k < exps[i]; ++k) p *= variable(vars[i]);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == std::vector<int>(vars_.size(), 0));
}

CycRat Poly::constant_term() const {
    auto it = terms_.find(std::vector<int>(vars_.size(), 0));
    return it == terms_.end() ? CycRat::zero() : it->second;
}

long Poly::degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, (long)std::accumulate(e.begin(), e.end(), 0));
    return d;
}

long Poly::degree_in(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t idx = it - vars_.begin();
    long d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, (long)e[idx]);
    return d;
}

long Poly::order_at_origin() const {
    if (terms_.empty()) return -1;
    long d = -1;
    for (const auto& [e, c] : terms_) {
        long s = std::accumulate(e.begin(), e.end(), 0);
        if (d < 0 || s < d) d = s;
    }
    return d;
}

CycRat Poly::coeff(const std::vector<std::string>& vars, const std::vector<int>& exps) const {
    std::vector<int> e(vars_.size(), 0);
    for (size_t i = 0; i < vars.size(); ++i) {
        auto it = std::find(vars_.begin(), vars_.end(), vars[i]);
        if (it == vars_.end()) {
            if (exps[i] != 0) return CycRat::zero();
            continue;
        }
        e[it - vars_.begin()] = exps[i];
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? CycRat::zero() : it->second;
}

void Poly::insert_(const std::vector<int>& e, const CycRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Poly::prune_vars_() {
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) used[i] = true;
    std::vector<size_t> keep;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) keep.push_back(i);
    if (keep.size() == vars_.size()) return;
    std::vector<std::string> nv;
    for (size_t i : keep) nv.push_back(vars_[i]);
    std::map<std::vector<int>, CycRat> nt;
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne;
        ne.reserve(keep.size());
        for (size_t i : keep) ne.push_back(e[i]);
        nt[ne] = c;
    }
    vars_ = std::move(nv);
    terms_ = std::move(nt);
}

Poly Poly::aligned_to(const std::vector<std::string>& vars) const {
    std::vector<int> where(vars_.size(), -1);
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it == vars.end())
            fail(ErrorCode::UnknownVariable, "variable '" + vars_[i] + "' not in target order");
        where[i] = it - vars.begin();
    }
    Poly p;
    p.vars_ = vars;
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
        p.terms_[ne] = c;
    }
    return p;
}

namespace {
std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::vector<std::string> u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}
} // namespace

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<std::string> u = union_vars(vars_, o.vars_);
    Poly a = aligned_to(u), b = o.aligned_to(u);
    for (const auto& [e, c] : b.terms_) a.insert_(e, c);
    a.prune_vars_();
    return a;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    std::vector<std::string> u = union_vars(vars_, o.vars_);
    Poly a = aligned_to(u), b = o.aligned_to(u);
    Poly p;
    p.vars_ = u;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            std::vector<int> e(u.size());
            for (size_t i = 0; i < u.size(); ++i) e[i] = ea[i] + eb[i];
            p.insert_(e, ca * cb);
        }
    p.prune_vars_();
    return p;
}

bool Poly::operator==(const Poly& o) const {
    std::vector<std::string> u = union_vars(vars_, o.vars_);
    return aligned_to(u).terms_ == o.aligned_to(u).terms_;
}

Poly Poly::scale(const CycRat& c) const {
    Poly p;
    if (c.is_zero()) return p;
    p.vars_ = vars_;
    for (const auto& [e, q] : terms_) p.terms_[e] = q * c;
    return p;
}

Poly Poly::pow(long n) const {
    if (n < 0) fail(ErrorCode::InternalError, "negative polynomial power");
    Poly acc(CycRat::one()), base = *this;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

Poly Poly::partial(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) fail(ErrorCode::UnknownVariable, "no variable '" + var + "'");
    size_t idx = it - vars_.begin();
    Poly p;
    p.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        std::vector<int> ne = e;
        ne[idx] -= 1;
        p.insert_(ne, c * CycRat(rat(e[idx])));
    }
    p.prune_vars_();
    return p;
}

CycRat Poly::eval(const std::map<std::string, CycRat>& point) const {
    CycRat acc = CycRat::zero();
    for (const auto& [e, c] : terms_) {
        CycRat term = c;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = point.find(vars_[i]);
            if (it == point.end()) fail(ErrorCode::UnknownVariable, "no value for '" + vars_[i] + "'");
            term *= it->second.pow(e[i]);
        }
        acc += term;
    }
    return acc;
}

std::complex<double> Poly::eval_complex(const std::map<std::string, std::complex<double>>& point) const {
    std::complex<double> acc(0, 0);
    for (const auto& [e, c] : terms_) {
        std::complex<double> term = c.to_complex();
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = point.find(vars_[i]);
            if (it == point.end()) fail(ErrorCode::UnknownVariable, "no value for '" + vars_[i] + "'");
            term *= std::pow(it->second, e[i]);
        }
        acc += term;
    }
    return acc;
}

Poly Poly::substitute_consts(const std::map<std::string, CycRat>& assignment) const {
    Poly out;
    for (const auto& [e, c] : terms_) {
        CycRat coeff = c;
        Poly mono(CycRat::one());
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = assignment.find(vars_[i]);
            if (it != assignment.end())
                coeff *= it->second.pow(e[i]);
            else
                mono *= variable(vars_[i]).pow(e[i]);
        }
        out += mono.scale(coeff);
    }
    return out;
}

Poly Poly::substitute_polys(const std::map<std::string, Poly>& assignment) const {
    Poly out;
    for (const auto& [e, c] : terms_) {
        Poly term(c);
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = assignment.find(vars_[i]);
            term *= (it != assignment.end() ? it->second : variable(vars_[i])).pow(e[i]);
        }
        out += term;
    }
    return out;
}

Poly Poly::rename(const std::map<std::string, std::string>& names) const {
    std::vector<std::string> nv = vars_;
    for (auto& v : nv) {
        auto it = names.find(v);
        if (it != names.end()) v = it->second;
    }
    std::set<std::string> uniq(nv.begin(), nv.end());
    if (uniq.size() != nv.size()) fail(ErrorCode::InternalError, "rename collides variables");
    // re-sort under the new names
    std::vector<size_t> idx(nv.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return nv[a] < nv[b]; });
    Poly p;
    for (size_t i : idx) p.vars_.push_back(nv[i]);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne(e.size());
        for (size_t i = 0; i < idx.size(); ++i) ne[i] = e[idx[i]];
        p.terms_[ne] = c;
    }
    return p;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest-degree terms first for readability
    std::vector<const std::pair<const std::vector<int>, CycRat>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
        long da = std::accumulate(a->first.begin(), a->first.end(), 0L);
        long db = std::accumulate(b->first.begin(), b->first.end(), 0L);
        if (da != db) return da > db;
        return a->first > b->first;
    });
    for (auto* t : order) {
        const auto& [e, c] = *t;
        std::string cs = c.str();
        bool neg = cs.size() > 0 && cs[0] == '-' && cs.find('+', 1) == std::string::npos &&
                   cs.find('-', 1) == std::string::npos;
        if (first) {
            if (neg) { os << "-"; cs = cs.substr(1); }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        bool composite = cs.find('+') != std::string::npos || cs.find('-') != std::string::npos;
        bool any_var = std::any_of(e.begin(), e.end(), [](int k) { return k != 0; });
        if (!any_var) {
            os << (composite ? "(" + cs + ")" : cs);
            continue;
        }
        bool printed = false;
        if (cs != "1") {
            os << (composite ? "(" + cs + ")" : cs);
            printed = true;
        }
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << vars_[i];
            if (e[i] != 1) os << "^" << e[i];
            printed = true;
        }
    }
    return os.str();
}

const PSeries& SeriesContext::power(const std::string& var, int k) {
    auto it = assign_.find(var);
    if (it == assign_.end()) fail(ErrorCode::UnknownVariable, "no series for '" + var + "'");
    auto& cache = pow_[var];
    if (cache.empty()) cache.push_back(PSeries::constant(CycRat::one()));
    while ((int)cache.size() <= k) cache.push_back(cache.back() * it->second);
    return cache[k];
}

PSeries SeriesContext::eval(const Poly& f) {
    PSeries out;
    for (const auto& [e, c] : f.terms()) {
        PSeries term = PSeries::constant(c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term = term * power(f.vars()[i], e[i]);
        out = out + term;
    }
    return out;
}

PSeries poly_substitute(const Poly& f, const std::map<std::string, PSeries>& assignment) {
    // cache powers per variable
    std::vector<const PSeries*> series;
    for (const auto& v : f.vars()) {
        auto it = assignment.find(v);
        if (it == assignment.end()) fail(ErrorCode::UnknownVariable, "no series for '" + v + "'");
        series.push_back(&it->second);
    }
    std::vector<std::map<int, PSeries>> powers(series.size());
    auto power_of = [&](size_t i, int k) -> const PSeries& {
        auto it = powers[i].find(k);
        if (it == powers[i].end()) it = powers[i].emplace(k, series[i]->pow(k)).first;
        return it->second;
    };
    PSeries out;
    for (const auto& [e, c] : f.terms()) {
        PSeries term = PSeries::constant(c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term = term * power_of(i, e[i]);
        out = out + term;
    }
    return out;
}

} // namespace lipsat
