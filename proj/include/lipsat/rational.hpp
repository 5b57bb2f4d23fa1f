#ifndef LIPSAT_RATIONAL_HPP
#define LIPSAT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipsat/errors.hpp"

namespace lipsat {

// Exact rational scalar. All coefficient arithmetic in the toolkit is exact;
// floating point is confined to the geometry probes.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_of(const mpz_class& num, const mpz_class& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline long to_long(const Rat& q) {
    if (!is_integer(q) || !q.get_num().fits_slong_p())
        fail(ErrorCode::InternalError, "rational does not fit a machine integer");
    return q.get_num().get_si();
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

Rat parse_rat(const std::string& s);

inline long lcm_long(long a, long b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(b).get_mpz_t());
    return l.get_si();
}

inline long gcd_long(long a, long b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(b).get_mpz_t());
    return g.get_si();
}

// Exact n-th root of a nonnegative integer, if it exists.
std::optional<mpz_class> exact_root(const mpz_class& n, unsigned long k);

// Exact k-th root of a positive rational, if it exists.
std::optional<Rat> exact_rat_root(const Rat& q, unsigned long k);

// Factorization of a positive integer by trial division (desk scale).
std::vector<std::pair<mpz_class, unsigned>> factor_integer(mpz_class n);

} // namespace lipsat

#endif
