#ifndef LIPSAT_PSERIES_HPP
#define LIPSAT_PSERIES_HPP

#include <map>
#include <optional>
#include <string>

#include "lipsat/cyclotomic.hpp"

namespace lipsat {

// Truncated Puiseux series in one variable t over CycRat. Exponents are exact
// nonnegative rationals; the ramification index is the lcm of their
// denominators. Truncation is explicit: trunc() == nullopt means the series is
// exact (a Puiseux polynomial, nothing hidden beyond the stored terms), and a
// finite truncation T means coefficients are known exactly for exponents < T
// and unknown from T on. Every operation propagates truncation conservatively;
// nothing is ever guessed past the truncation order.
class PSeries {
  public:
    PSeries() = default; // exact zero

    static PSeries zero_truncated(const Rat& T);
    static PSeries constant(const CycRat& c) { return monomial(c, Rat(0)); }
    static PSeries monomial(const CycRat& c, const Rat& e);
    static PSeries var(); // t

    const std::map<Rat, CycRat>& terms() const { return terms_; }
    bool exact() const { return !trunc_.has_value(); }
    const std::optional<Rat>& trunc() const { return trunc_; }
    long ram() const;

    // least exponent carrying a nonzero coefficient; nullopt means "no term
    // below the truncation" (for an exact series, genuinely zero)
    std::optional<Rat> order() const;
    bool is_exact_zero() const { return terms_.empty() && exact(); }
    bool vanishes_to_trunc() const { return terms_.empty(); }

    CycRat coeff(const Rat& e) const;
    CycRat lead_coeff() const;

    PSeries operator-() const;
    PSeries operator+(const PSeries& o) const;
    PSeries operator-(const PSeries& o) const;
    PSeries operator*(const PSeries& o) const;
    bool operator==(const PSeries& o) const { return terms_ == o.terms_ && trunc_ == o.trunc_; }

    PSeries scale(const CycRat& c) const;
    PSeries mul_monomial(const CycRat& c, const Rat& e) const;
    PSeries pow(long n) const;

    // substitute inner for t; all exponents of *this must be nonnegative
    // integers and order(inner) > 0 (IllegalComposition otherwise)
    PSeries compose(const PSeries& inner) const;

    PSeries derive() const;

    // forget everything at exponent >= T
    PSeries truncated(const Rat& T) const;

    // quotient q with a = q*b to the available precision. Requires b to have a
    // visible leading term and ord(a) >= ord(b). When both operands are exact
    // and the division does not terminate, `cap` bounds the quotient's
    // precision; it is an error to omit it in that case.
    static PSeries divide(const PSeries& a, const PSeries& b,
                          std::optional<Rat> cap = std::nullopt);

    std::string str(const std::string& var = "t") const;

  private:
    void insert_(const Rat& e, const CycRat& c);
    void clamp_();
    // min(trunc, order)-style helper: order if a term exists, else trunc
    std::optional<Rat> order_or_trunc_() const;

    std::map<Rat, CycRat> terms_;
    std::optional<Rat> trunc_;
};

} // namespace lipsat

#endif
