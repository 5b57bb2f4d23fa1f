#include "lipsat/pseries.hpp"

#include <algorithm>
#include <sstream>

namespace lipsat {

PSeries PSeries::zero_truncated(const Rat& T) {
    PSeries s;
    s.trunc_ = T;
    return s;
}

PSeries PSeries::monomial(const CycRat& c, const Rat& e) {
    PSeries s;
    if (e < 0) fail(ErrorCode::InternalError, "negative series exponent");
    if (!c.is_zero()) s.terms_[e] = c;
    return s;
}

PSeries PSeries::var() { return monomial(CycRat::one(), Rat(1)); }

long PSeries::ram() const {
    long r = 1;
    for (const auto& [e, c] : terms_) r = lcm_long(r, e.get_den().get_si());
    return r;
}

std::optional<Rat> PSeries::order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

CycRat PSeries::coeff(const Rat& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? CycRat::zero() : it->second;
}

CycRat PSeries::lead_coeff() const {
    if (terms_.empty()) fail(ErrorCode::InternalError, "lead_coeff of vanishing series");
    return terms_.begin()->second;
}

void PSeries::insert_(const Rat& e, const CycRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void PSeries::clamp_() {
    if (!trunc_) return;
    auto it = terms_.lower_bound(*trunc_);
    terms_.erase(it, terms_.end());
}

std::optional<Rat> PSeries::order_or_trunc_() const {
    if (!terms_.empty()) return terms_.begin()->first;
    return trunc_; // nullopt for exact zero
}

PSeries PSeries::operator-() const {
    PSeries s = *this;
    for (auto& [e, c] : s.terms_) c = -c;
    return s;
}

PSeries PSeries::operator+(const PSeries& o) const {
    PSeries s = *this;
    if (o.trunc_ && (!s.trunc_ || *o.trunc_ < *s.trunc_)) s.trunc_ = o.trunc_;
    for (const auto& [e, c] : o.terms_) s.insert_(e, c);
    s.clamp_();
    return s;
}

PSeries PSeries::operator-(const PSeries& o) const { return *this + (-o); }

PSeries PSeries::operator*(const PSeries& o) const {
    PSeries s;
    if (is_exact_zero() || o.is_exact_zero()) return s;
    // a*b is known below min(Ta + ord(b), Tb + ord(a)); a vanishing truncated
    // factor contributes its truncation in place of an order
    std::optional<Rat> T;
    if (trunc_) {
        auto ob = o.order_or_trunc_();
        if (ob) T = *trunc_ + *ob;
    }
    if (o.trunc_) {
        auto oa = order_or_trunc_();
        if (oa) {
            Rat t2 = *o.trunc_ + *oa;
            if (!T || t2 < *T) T = t2;
        }
    }
    s.trunc_ = T;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Rat e = ea + eb;
            if (T && e >= *T) continue;
            s.insert_(e, ca * cb);
        }
    return s;
}

PSeries PSeries::scale(const CycRat& c) const {
    PSeries s;
    s.trunc_ = trunc_;
    if (c.is_zero()) return s;
    for (const auto& [e, q] : terms_) s.terms_[e] = q * c;
    return s;
}

PSeries PSeries::mul_monomial(const CycRat& c, const Rat& e) const {
    PSeries s;
    if (trunc_) s.trunc_ = *trunc_ + e;
    if (c.is_zero()) return s;
    for (const auto& [ea, q] : terms_) s.terms_[ea + e] = q * c;
    return s;
}

PSeries PSeries::pow(long n) const {
    if (n < 0) fail(ErrorCode::InternalError, "negative series power");
    PSeries acc = monomial(CycRat::one(), Rat(0)), base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

PSeries PSeries::compose(const PSeries& inner) const {
    auto oi = inner.order();
    if (oi && *oi <= 0) fail(ErrorCode::IllegalComposition, "inner series has order 0");
    // monomial inner: exponent remap with cached coefficient powers
    if (inner.terms_.size() == 1 && inner.exact()) {
        const Rat& e0 = inner.terms_.begin()->first;
        const CycRat& c0 = inner.terms_.begin()->second;
        PSeries out;
        if (trunc_) out.trunc_ = *trunc_ * e0;
        CycRat cpow = CycRat::one();
        long prev = 0;
        for (const auto& [e, c] : terms_) {
            if (!is_integer(e) || e < 0)
                fail(ErrorCode::IllegalComposition, "composition needs integer outer exponents");
            long k = to_long(e);
            for (; prev < k; ++prev) cpow *= c0;
            out.insert_(e * e0, c * cpow);
        }
        out.clamp_();
        return out;
    }
    PSeries out;
    // outer truncation: O(s^Ta) maps to O(t^(Ta*ord(inner)))
    std::optional<Rat> T;
    if (trunc_) {
        auto o = inner.order_or_trunc_();
        if (o) T = *trunc_ * *o;
    }
    if (inner.trunc_) {
        // inner error in s^k is O(t^(Tinner + (k-1) ord)); worst case k=1
        bool has_positive_exp = false;
        for (const auto& [e, c] : terms_)
            if (e > 0) { has_positive_exp = true; break; }
        if (has_positive_exp && (!T || *inner.trunc_ < *T)) T = inner.trunc_;
    }
    out.trunc_ = T;
    // Horner over ascending integer exponents
    long prev = 0;
    PSeries powacc = monomial(CycRat::one(), Rat(0));
    for (const auto& [e, c] : terms_) {
        if (!is_integer(e) || e < 0)
            fail(ErrorCode::IllegalComposition, "composition needs integer outer exponents");
        long k = to_long(e);
        powacc = powacc * inner.pow(k - prev);
        prev = k;
        out = out + powacc.scale(c);
    }
    out.trunc_ = T;
    out.clamp_();
    return out;
}

PSeries PSeries::derive() const {
    PSeries s;
    if (trunc_) {
        Rat T = *trunc_ - 1;
        s.trunc_ = T > 0 ? T : Rat(0);
    }
    for (const auto& [e, c] : terms_) {
        if (e == 0) continue;
        s.insert_(e - 1, c * CycRat(e));
    }
    s.clamp_();
    return s;
}

PSeries PSeries::truncated(const Rat& T) const {
    PSeries s = *this;
    if (!s.trunc_ || T < *s.trunc_) s.trunc_ = T;
    s.clamp_();
    return s;
}

PSeries PSeries::divide(const PSeries& a, const PSeries& b, std::optional<Rat> cap) {
    if (b.terms_.empty()) fail(ErrorCode::DivisionByZero, "series division by vanishing series");
    Rat vb = b.terms_.begin()->first;
    CycRat lb = b.terms_.begin()->second;
    // natural quotient precision from the operands: va - vb + min(Ta - va, Tb - vb);
    // exact inputs impose no limit of their own
    std::optional<Rat> Tq;
    auto va = a.order_or_trunc_();
    if (a.trunc_) Tq = *a.trunc_ - vb;
    if (b.trunc_) {
        Rat lim = (va ? *va : Rat(0)) - vb + (*b.trunc_ - vb);
        if (!Tq || lim < *Tq) Tq = lim;
    }
    if (Tq && cap && *cap < *Tq) Tq = cap;
    PSeries q;
    PSeries r = a;
    if (b.trunc_) {
        Rat rt = (va ? *va : Rat(0)) - vb + *b.trunc_;
        if (!r.trunc_ || rt < *r.trunc_) r.trunc_ = rt;
    }
    CycRat lbInv = lb.inv();
    while (!r.terms_.empty()) {
        Rat e = r.terms_.begin()->first;
        if (e < vb) fail(ErrorCode::InternalError, "series not divisible: remainder below divisor order");
        Rat eq = e - vb;
        if (Tq && eq >= *Tq) break;
        if (!Tq && cap && eq >= *cap) {
            // exact but non-terminating division: cut at the cap
            q.trunc_ = cap;
            return q;
        }
        if (!Tq && !cap && eq > Rat(1 << 14))
            fail(ErrorCode::InternalError, "exact series division does not terminate; pass a cap");
        CycRat cq = r.terms_.begin()->second * lbInv;
        q.insert_(eq, cq);
        // r -= cq t^eq * b, in place
        for (const auto& [eb, cb] : b.terms_) {
            Rat er = eb + eq;
            if (r.trunc_ && er >= *r.trunc_) break; // terms_ is ordered
            r.insert_(er, -(cq * cb));
        }
    }
    q.trunc_ = Tq; // nullopt when both operands exact and the division terminated
    return q;
}

std::string PSeries::str(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string cs = c.str();
        bool neg = cs.size() > 1 && cs[0] == '-' && cs.find('+', 1) == std::string::npos &&
                   cs.find('-', 1) == std::string::npos;
        if (first) {
            if (neg) { os << "-"; cs = cs.substr(1); }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        bool composite = cs.find('+') != std::string::npos || cs.find('-') != std::string::npos;
        if (e == 0) {
            os << (composite ? "(" + cs + ")" : cs);
            continue;
        }
        if (cs != "1") os << (composite ? "(" + cs + ")" : cs) << "*";
        os << var;
        if (e != 1) os << "^" << rat_str(e);
    }
    if (first) os << "0";
    if (trunc_) os << " + O(" << var << "^" << rat_str(*trunc_) << ")";
    return os.str();
}

} // namespace lipsat
