#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pwlb {

// Arbitrary-precision integers and rationals. Rational is always held in
// canonical form (reduced, positive denominator) by the backend, so exact
// comparison is plain ==.
using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(BigInt(n), BigInt(d));
}

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

// floor(q) as a BigInt (round toward -inf).
inline BigInt rational_floor(const Rational& q) {
    BigInt n = num(q), d = den(q);
    BigInt quo = n / d; // truncates toward zero
    if (n < 0 && quo * d != n) --quo;
    return quo;
}

// Fractional part in [0,1).
inline Rational frac_part(const Rational& q) { return q - Rational(rational_floor(q)); }

// 2-adic valuation of a nonzero integer.
inline int v2(long long n) {
    if (n == 0) throw std::invalid_argument("v2: zero argument");
    unsigned long long u = static_cast<unsigned long long>(n < 0 ? -n : n);
    int r = 0;
    while ((u & 1ULL) == 0ULL) { u >>= 1; ++r; }
    return r;
}

// Largest odd divisor of a positive integer.
inline long long odd_part(long long n) {
    if (n <= 0) throw std::invalid_argument("odd_part: argument must be positive");
    while ((n & 1LL) == 0LL) n >>= 1;
    return n;
}

inline std::string to_string(const Rational& q) { return q.str(); }

} // namespace pwlb
