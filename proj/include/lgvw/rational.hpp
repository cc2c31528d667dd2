#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgvw {

// Exact rationals backed by GMP; every arithmetic result is canonical.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer floor_of(const Rational& r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// Representative of r mod 1 in [0,1).
inline Rational frac(const Rational& r)
{
    Rational f = r - Rational(floor_of(r));
    f.canonicalize();
    return f;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline long to_long(const Rational& r)
{
    if (!is_integer(r) || !r.get_num().fits_slong_p())
        throw std::domain_error("rational " + r.get_str() + " is not a machine integer");
    return r.get_num().get_si();
}

inline Integer lcm_of(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Least common multiple of the denominators.
inline Integer common_denominator(const std::vector<Rational>& xs)
{
    Integer d = 1;
    for (const auto& x : xs) d = lcm_of(d, x.get_den());
    return d;
}

inline Rational rational_pow(const Rational& r, unsigned n)
{
    Rational out = 1;
    for (unsigned i = 0; i < n; ++i) out *= r;
    return out;
}

}  // namespace lgvw
