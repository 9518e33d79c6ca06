// Shared arithmetic primitives: fixed-width aliases, arbitrary precision
// via Boost.Multiprecision (header-only backends), exact integer square
// roots, and small power/sign helpers used throughout.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>

namespace chatelet {

using i64 = std::int64_t;
using i128 = __int128;
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// pi at long double precision (M_PI is only a double constant)
inline constexpr long double PI_L = 3.14159265358979323846264338327950288L;

inline i64 ipow(i64 base, int exp) {
    i64 r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

inline int sgn(i64 x) { return (x > 0) - (x < 0); }

// floor(sqrt(n)) for n >= 0, exact (double seed, integer correction)
inline i64 isqrt(i64 n) {
    if (n < 0) return -1;
    i64 r = (i64)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// true iff n is a perfect square; root returned through *root if non-null
inline bool is_square(i64 n, i64* root = nullptr) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

inline i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(a, b), c); }

// odd part of n (sign preserved); n != 0
inline i64 odd_part(i64 n) {
    while (n % 2 == 0) n /= 2;
    return n;
}

} // namespace chatelet
