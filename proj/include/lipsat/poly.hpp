#ifndef LIPSAT_POLY_HPP
#define LIPSAT_POLY_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "lipsat/pseries.hpp"

namespace lipsat {

// Sparse multivariate polynomial over CycRat. Variables are named (primed
// copies like "x'" are ordinary names) and kept sorted; binary operations
// align operands on the union of their variable lists.
class Poly {
  public:
    Poly() = default;
    explicit Poly(const CycRat& c);
    static Poly variable(const std::string& name);
    static Poly constant(const CycRat& c) { return Poly(c); }
    static Poly monomial(const CycRat& c, const std::vector<std::string>& vars,
                         const std::vector<int>& exps);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<std::vector<int>, CycRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    CycRat constant_term() const;
    long degree() const;            // total degree, -1 for 0
    long degree_in(const std::string& var) const;
    long order_at_origin() const;   // min total degree, -1 for 0
    CycRat coeff(const std::vector<std::string>& vars, const std::vector<int>& exps) const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scale(const CycRat& c) const;
    Poly pow(long n) const;

    // formal derivative; UnknownVariable if var is not carried
    Poly partial(const std::string& var) const;

    // full evaluation
    CycRat eval(const std::map<std::string, CycRat>& point) const;
    std::complex<double> eval_complex(const std::map<std::string, std::complex<double>>& point) const;

    // substitute constants for a subset of the variables
    Poly substitute_consts(const std::map<std::string, CycRat>& assignment) const;

    // substitute polynomials for a subset of the variables
    Poly substitute_polys(const std::map<std::string, Poly>& assignment) const;

    // rename variables (e.g. priming); targets must stay distinct
    Poly rename(const std::map<std::string, std::string>& names) const;

    // project onto the given variable order; the polynomial must not carry
    // variables outside `vars`
    Poly aligned_to(const std::vector<std::string>& vars) const;

    std::string str() const;

  private:
    void insert_(const std::vector<int>& e, const CycRat& c);
    void prune_vars_();

    std::vector<std::string> vars_; // sorted
    std::map<std::vector<int>, CycRat> terms_;
};

// Pullback of f along a series assignment for every variable of f
// (UnknownVariable if one is missing).
PSeries poly_substitute(const Poly& f, const std::map<std::string, PSeries>& assignment);

// Pullback evaluator that shares power caches across many polynomials over
// the same assignment.
class SeriesContext {
  public:
    explicit SeriesContext(std::map<std::string, PSeries> assignment)
        : assign_(std::move(assignment)) {}
    PSeries eval(const Poly& f);
    const std::map<std::string, PSeries>& assignment() const { return assign_; }

  private:
    const PSeries& power(const std::string& var, int k);
    std::map<std::string, PSeries> assign_;
    std::map<std::string, std::vector<PSeries>> pow_;
};

} // namespace lipsat

#endif
