#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hacf {

// Exact rational scalar. mpq_class does the work; helpers below pin down the
// conversions we rely on.
using Rational = mpq_class;

// Exact value of a finite double (every finite double is dyadic).
inline Rational rational_from_double(double v) {
    if (!(v == v) || v == 1.0 / 0.0 || v == -1.0 / 0.0)
        throw std::domain_error("rational_from_double: non-finite input");
    return Rational(v);
}

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// "a" or "a/b", canonical sign on the numerator.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational pow_rational(Rational base, unsigned e) {
    Rational acc(1);
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1u;
    }
    return acc;
}

}  // namespace hacf
