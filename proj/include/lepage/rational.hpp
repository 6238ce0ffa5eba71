#pragma once

#include <gmpxx.h>

#include <string>

namespace lepage {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer factorial(unsigned long n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// "3", "-1/12"
inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace lepage
