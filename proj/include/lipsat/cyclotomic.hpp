#ifndef LIPSAT_CYCLOTOMIC_HPP
#define LIPSAT_CYCLOTOMIC_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lipsat/rational.hpp"

namespace lipsat {

// An element of the cyclotomic field Q(zeta_N), stored as a rational
// coefficient vector of length deg(Phi_N) and always reduced mod Phi_N.
// Mixed-level arithmetic embeds both operands into Q(zeta_lcm).
//
// This is the coefficient domain for the whole toolkit: the constructions in
// scope only ever need roots of unity (branch leading coefficients, pair-curve
// twists) and square roots of rationals, both of which live in cyclotomic
// fields. Anything else is rejected, never approximated.
class CycRat {
  public:
    CycRat() : level_(1), c_(1, Rat(0)) {}
    CycRat(const Rat& q) : level_(1), c_(1, q) {}
    CycRat(long n) : level_(1), c_(1, rat(n)) {}

    static CycRat zero() { return CycRat(); }
    static CycRat one() { return CycRat(Rat(1)); }
    // zeta_N^k
    static CycRat root_of_unity(long N, long k = 1);
    // build from a coefficient vector in powers of zeta_N (any length; reduced)
    static CycRat from_powers(long N, const std::vector<Rat>& powers);

    long level() const { return level_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    // value as a rational; requires is_rational()
    Rat rat_value() const;

    CycRat operator-() const;
    CycRat operator+(const CycRat& o) const;
    CycRat operator-(const CycRat& o) const;
    CycRat operator*(const CycRat& o) const;
    CycRat& operator+=(const CycRat& o) { return *this = *this + o; }
    CycRat& operator-=(const CycRat& o) { return *this = *this - o; }
    CycRat& operator*=(const CycRat& o) { return *this = *this * o; }
    bool operator==(const CycRat& o) const;
    bool operator!=(const CycRat& o) const { return !(*this == o); }

    // multiplicative inverse; DivisionByZero on 0
    CycRat inv() const;
    CycRat operator/(const CycRat& o) const { return *this * o.inv(); }
    CycRat pow(long e) const;

    // complex conjugation (the Galois map zeta -> zeta^-1)
    CycRat conj() const;
    // |x|^2 = x * conj(x); real and fixed by conjugation
    CycRat norm_squared() const { return *this * conj(); }

    std::complex<double> to_complex() const;

    // embed into Q(zeta_M); M must be a multiple of a level this element
    // actually needs (level() always works)
    CycRat embed(long M) const;

    // textual form using the (zN) token grammar, e.g. "1/2*(z5)^3+2"
    std::string str() const;

    // deterministic total order (level, then coeff lex) for canonical sorting
    static int compare(const CycRat& a, const CycRat& b);

  private:
    CycRat(long level, std::vector<Rat> c) : level_(level), c_(std::move(c)) {}
    void reduce_();
    static long unify(CycRat& a, CycRat& b);

    long level_;
    std::vector<Rat> c_;
};

inline CycRat operator*(const Rat& q, const CycRat& x) { return CycRat(q) * x; }

// The N-th cyclotomic polynomial as an integer coefficient vector (low first).
const std::vector<mpz_class>& cyclotomic_polynomial(long N);

// Exact square root of a rational inside a cyclotomic field (Gauss sums).
CycRat cyc_sqrt(const Rat& q);

// Decompose x as r * zeta_L^k with r a positive rational, if possible.
struct UnitRationalForm {
    Rat r;
    long order; // L
    long power; // k, 0 <= k < L
};
std::optional<UnitRationalForm> as_rational_times_root_of_unity(const CycRat& x);

// All d-th roots of x in cyclotomic numbers, or nullopt if the extension
// required is not cyclotomic. Roots are returned in a deterministic order.
std::optional<std::vector<CycRat>> cyc_roots(const CycRat& x, long d);

} // namespace lipsat

#endif
