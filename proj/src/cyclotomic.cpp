/* Exact arithmetic in cyclotomic fields Q(zeta_N). */

#include "lipsat/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <sstream>

namespace lipsat {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::IllegalComposition: return "IllegalComposition";
        case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
        case ErrorCode::UnsupportedExtension: return "UnsupportedExtension";
        case ErrorCode::NoSingularPoint: return "NoSingularPoint";
        case ErrorCode::NotFiniteColength: return "NotFiniteColength";
        case ErrorCode::NotNested: return "NotNested";
        case ErrorCode::EmptyIdeal: return "EmptyIdeal";
        case ErrorCode::NonIsolatedFiber: return "NonIsolatedFiber";
        case ErrorCode::NotAFamilyOverY: return "NotAFamilyOverY";
        case ErrorCode::NotOnVariety: return "NotOnVariety";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::DegenerateCurve: return "DegenerateCurve";
        case ErrorCode::NonIsolatedSection: return "NonIsolatedSection";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "Error";
}

Rat parse_rat(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) fail(ErrorCode::ParseError, "bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

std::optional<mpz_class> exact_root(const mpz_class& n, unsigned long k) {
    if (n < 0) return std::nullopt;
    mpz_class r;
    int is_exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    if (!is_exact) return std::nullopt;
    return r;
}

std::optional<Rat> exact_rat_root(const Rat& q, unsigned long k) {
    if (q <= 0) return std::nullopt;
    auto rn = exact_root(q.get_num(), k);
    auto rd = exact_root(q.get_den(), k);
    if (!rn || !rd) return std::nullopt;
    return rat_of(*rn, *rd);
}

std::vector<std::pair<mpz_class, unsigned>> factor_integer(mpz_class n) {
    std::vector<std::pair<mpz_class, unsigned>> out;
    if (n < 0) n = -n;
    for (mpz_class p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials

namespace {

// dense integer polynomials, coefficient of x^i at index i
using ZPoly = std::vector<mpz_class>;

ZPoly zp_trim(ZPoly p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

// exact division, remainder known to vanish
ZPoly zp_div(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, mpz_class(0));
    for (long i = (long)r.size() - 1; i >= (long)b.size() - 1; --i) {
        if (r[i] == 0) continue;
        mpz_class c = r[i] / b.back();
        q[i - (b.size() - 1)] = c;
        for (size_t j = 0; j < b.size(); ++j) r[i - (b.size() - 1) + j] -= c * b[j];
    }
    return zp_trim(q);
}

} // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(long N) {
    static std::map<long, ZPoly> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    if (N < 1) fail(ErrorCode::InternalError, "cyclotomic level must be positive");
    // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d
    ZPoly num(N + 1, mpz_class(0));
    num[0] = -1;
    num[N] = 1;
    for (long d = 1; d < N; ++d)
        if (N % d == 0) num = zp_div(num, cyclotomic_polynomial(d));
    return cache.emplace(N, zp_trim(num)).first->second;
}

// ---------------------------------------------------------------------------
// CycRat

void CycRat::reduce_() {
    const ZPoly& phi = cyclotomic_polynomial(level_);
    size_t deg = phi.size() - 1;
    for (long i = (long)c_.size() - 1; i >= (long)deg; --i) {
        if (c_[i] == 0) continue;
        Rat lead = c_[i];
        c_[i] = 0;
        for (size_t j = 0; j < deg; ++j) c_[i - deg + j] -= lead * Rat(phi[j]);
    }
    c_.resize(deg, Rat(0));
    for (auto& q : c_) q.canonicalize();
    // demote rational values so later arithmetic stays cheap
    if (level_ > 1 && is_rational()) {
        level_ = 1;
        c_.resize(1);
    }
}

CycRat CycRat::root_of_unity(long N, long k) {
    if (N < 1) fail(ErrorCode::InternalError, "bad root-of-unity order");
    k %= N;
    if (k < 0) k += N;
    std::vector<Rat> c(k + 1, Rat(0));
    c[k] = 1;
    CycRat x(N, std::move(c));
    x.reduce_();
    return x;
}

CycRat CycRat::from_powers(long N, const std::vector<Rat>& powers) {
    CycRat x(N, powers);
    if (x.c_.empty()) x.c_.assign(1, Rat(0));
    x.reduce_();
    return x;
}

bool CycRat::is_zero() const {
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

bool CycRat::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat CycRat::rat_value() const {
    if (!is_rational()) fail(ErrorCode::InternalError, "not a rational value: " + str());
    return c_[0];
}

long CycRat::unify(CycRat& a, CycRat& b) {
    if (a.level_ == b.level_) return a.level_;
    long L = lcm_long(a.level_, b.level_);
    a = a.embed(L);
    b = b.embed(L);
    return L;
}

CycRat CycRat::embed(long M) const {
    if (M == level_) return *this;
    if (M % level_ != 0) fail(ErrorCode::InternalError, "embed target not a multiple level");
    long step = M / level_;
    std::vector<Rat> c(c_.size() * step, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i * step] = c_[i];
    CycRat x(M, std::move(c));
    x.reduce_();
    return x;
}

CycRat CycRat::operator-() const {
    CycRat x = *this;
    for (auto& q : x.c_) q = -q;
    return x;
}

CycRat CycRat::operator+(const CycRat& o) const {
    // rational operands add into the constant coefficient directly
    if (is_rational()) {
        CycRat x = o;
        x.c_[0] += c_[0];
        if (x.level_ > 1 && c_[0] != 0 && x.is_rational()) {
            x.level_ = 1;
            x.c_.resize(1);
        }
        return x;
    }
    if (o.is_rational()) return o + *this;
    CycRat a = *this, b = o;
    unify(a, b);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    if (a.level_ > 1 && a.is_rational()) {
        a.level_ = 1;
        a.c_.resize(1);
    }
    return a;
}

CycRat CycRat::operator-(const CycRat& o) const { return *this + (-o); }

CycRat CycRat::operator*(const CycRat& o) const {
    // rational operands scale coefficientwise, no reduction needed
    if (is_rational()) {
        if (c_[0] == 0) return CycRat();
        CycRat x = o;
        for (auto& q : x.c_) q *= c_[0];
        return x;
    }
    if (o.is_rational()) return o * *this;
    CycRat a = *this, b = o;
    long L = unify(a, b);
    std::vector<Rat> prod(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            prod[i + j] += a.c_[i] * b.c_[j];
        }
    }
    CycRat x(L, std::move(prod));
    x.reduce_();
    return x;
}

bool CycRat::operator==(const CycRat& o) const {
    CycRat a = *this, b = o;
    unify(a, b);
    return a.c_ == b.c_;
}

namespace {

// rational polynomials for the extended Euclid used by inversion
using QPoly = std::vector<Rat>;

QPoly qp_trim(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

// a = q*b + r over Q[x]
std::pair<QPoly, QPoly> qp_divmod(QPoly a, const QPoly& b) {
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        a = qp_trim(std::move(a));
        if (a.size() < b.size()) break;
        Rat c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        a.pop_back();
    }
    return {qp_trim(std::move(q)), qp_trim(std::move(a))};
}

QPoly qp_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
    // a - q*b
    QPoly out = a;
    if (!q.empty() && !b.empty()) {
        out.resize(std::max(out.size(), q.size() + b.size() - 1), Rat(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
    }
    return qp_trim(std::move(out));
}

} // namespace

CycRat CycRat::inv() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    if (is_rational()) return CycRat(Rat(1) / c_[0]);
    // extended Euclid: s*this + t*Phi = gcd = unit (Phi irreducible)
    QPoly r0;
    for (const auto& z : cyclotomic_polynomial(level_)) r0.push_back(Rat(z));
    QPoly r1 = qp_trim(c_);
    QPoly s0 = {}, s1 = {Rat(1)}; // coefficients of `this`
    while (!r1.empty()) {
        auto [q, r2] = qp_divmod(r0, r1);
        QPoly s2 = qp_sub_mul(s0, q, s1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant), s0 * this == r0 mod Phi
    if (r0.size() != 1) fail(ErrorCode::InternalError, "cyclotomic inverse: gcd not constant");
    Rat g = r0[0];
    for (auto& q : s0) q /= g;
    CycRat x(level_, std::move(s0));
    if (x.c_.empty()) x.c_.assign(1, Rat(0));
    x.c_.resize(cyclotomic_polynomial(level_).size() - 1, Rat(0));
    return x;
}

CycRat CycRat::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    CycRat acc = one(), base = *this;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

CycRat CycRat::conj() const {
    // zeta^i -> zeta^(N-i)
    std::vector<Rat> c(level_ == 1 ? 1 : level_, Rat(0));
    c[0] = c_[0];
    for (size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        c[(level_ - (long)i) % level_] += c_[i];
    }
    CycRat x(level_, std::move(c));
    x.reduce_();
    return x;
}

std::complex<double> CycRat::to_complex() const {
    std::complex<double> z(0.0, 0.0);
    const double tau = 2.0 * std::numbers::pi / (double)level_;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        z += c_[i].get_d() * std::complex<double>(std::cos(tau * i), std::sin(tau * i));
    }
    return z;
}

std::string CycRat::str() const {
    if (is_rational()) return rat_str(c_[0]);
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rat q = c_[i];
        if (first) {
            if (q < 0) { os << "-"; q = -q; }
        } else {
            os << (q < 0 ? "-" : "+");
            if (q < 0) q = -q;
        }
        first = false;
        if (i == 0) {
            os << rat_str(q);
            continue;
        }
        if (q != 1) os << rat_str(q) << "*";
        os << "(z" << level_ << ")";
        if (i != 1) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

int CycRat::compare(const CycRat& a, const CycRat& b) {
    CycRat x = a, y = b;
    unify(x, y);
    if (x.level_ != y.level_) return x.level_ < y.level_ ? -1 : 1;
    for (size_t i = 0; i < x.c_.size(); ++i) {
        int c = cmp(x.c_[i], y.c_[i]);
        if (c != 0) return c;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// square roots via quadratic Gauss sums

namespace {

int legendre_symbol(const mpz_class& a, const mpz_class& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

// sqrt(p) for an odd prime p, inside Q(zeta_p) or Q(zeta_4p).
CycRat sqrt_odd_prime(const mpz_class& p) {
    long pl = p.get_si();
    std::vector<Rat> powers(pl, Rat(0));
    for (long k = 1; k < pl; ++k) powers[k] = Rat(legendre_symbol(k, p));
    CycRat g = CycRat::from_powers(pl, powers); // g^2 = (-1)^((p-1)/2) * p
    if (p % 4 == 1) return g;
    // g^2 = -p: divide by i = zeta_4
    return g * CycRat::root_of_unity(4, 1).inv();
}

} // namespace

CycRat cyc_sqrt(const Rat& q) {
    if (q == 0) return CycRat::zero();
    Rat a = q < 0 ? Rat(-q) : q;
    // sqrt(n/d) = sqrt(n*d)/d
    mpz_class nd = a.get_num() * a.get_den();
    mpz_class m = 1, u = 1;
    for (auto& [p, e] : factor_integer(nd)) {
        for (unsigned i = 0; i < e / 2; ++i) m *= p;
        if (e % 2) u *= p;
    }
    CycRat root = CycRat(rat_of(m, a.get_den()));
    for (auto& [p, e] : factor_integer(u)) {
        (void)e;
        if (p == 2)
            root *= CycRat::root_of_unity(8, 1) + CycRat::root_of_unity(8, -1);
        else
            root *= sqrt_odd_prime(p);
    }
    if (q < 0) root *= CycRat::root_of_unity(4, 1);
    return root;
}

std::optional<UnitRationalForm> as_rational_times_root_of_unity(const CycRat& x) {
    if (x.is_zero()) return std::nullopt;
    if (x.is_rational()) {
        Rat v = x.rat_value();
        if (v > 0) return UnitRationalForm{v, 1, 0};
        return UnitRationalForm{-v, 2, 1};
    }
    CycRat n2 = x.norm_squared();
    if (!n2.is_rational()) return std::nullopt;
    auto r = exact_rat_root(n2.rat_value(), 2);
    if (!r) return std::nullopt;
    CycRat omega = x * CycRat(*r).inv();
    long L = lcm_long(2, x.level());
    // omega must be a root of unity: +-zeta_level^k, i.e. a power of zeta_L
    CycRat zeta = CycRat::root_of_unity(L, 1);
    CycRat acc = CycRat::one();
    for (long k = 0; k < L; ++k) {
        if (acc == omega) return UnitRationalForm{*r, L, k};
        acc *= zeta;
    }
    return std::nullopt;
}

std::optional<std::vector<CycRat>> cyc_roots(const CycRat& x, long d) {
    if (d < 1) fail(ErrorCode::InternalError, "root degree must be positive");
    if (x.is_zero()) return std::vector<CycRat>{CycRat::zero()};
    auto form = as_rational_times_root_of_unity(x);
    if (!form) return std::nullopt;
    // x = r * zeta_L^k; root0 = r^(1/d) * zeta_(L*d)^k
    CycRat radial;
    if (auto rr = exact_rat_root(form->r, d)) {
        radial = CycRat(*rr);
    } else if (d == 2) {
        radial = cyc_sqrt(form->r);
    } else {
        return std::nullopt; // d-th root of a rational is not cyclotomic in general
    }
    CycRat root0 = radial * CycRat::root_of_unity(form->order * d, form->power);
    std::vector<CycRat> roots;
    roots.reserve(d);
    for (long j = 0; j < d; ++j) roots.push_back(root0 * CycRat::root_of_unity(d, j));
    std::sort(roots.begin(), roots.end(),
              [](const CycRat& a, const CycRat& b) { return CycRat::compare(a, b) < 0; });
    return roots;
}

} // namespace lipsat
