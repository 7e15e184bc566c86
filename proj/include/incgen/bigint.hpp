#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace incgen {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int int_pow(const Int& base, std::uint64_t exp) {
    Int r = 1;
    Int b = base;
    while (exp != 0) {
        if (exp & 1)
            r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// Q (Q-1) ... (Q-n+1); zero whenever Q < n since the factor Q - Q appears.
inline Int falling_factorial(const Int& q, std::uint64_t n) {
    Int r = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        Int factor = q - i;
        if (factor == 0)
            return 0;
        r *= factor;
    }
    return r;
}

} // namespace incgen
