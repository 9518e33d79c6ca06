// Factorization backend: a smallest-prime-factor sieve (default reach 10^7)
// shared by every module, plus a larger plain prime sieve used only for
// Euler products over primes up to 3*10^7.  Both tables are built lazily,
// once, behind a mutex, and are read-only afterwards.
#pragma once

#include "chatelet/errors.hpp"
#include "chatelet/numeric.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace chatelet {

// chi(n): the nontrivial character mod 4
inline int chi(i64 n) {
    i64 r = ((n % 4) + 4) % 4;
    if (r == 1) return 1;
    if (r == 3) return -1;
    return 0;
}

namespace sieve {

inline constexpr i64 SPF_LIMIT = 10000000;       // smallest-prime-factor table
inline constexpr i64 PRIME_LIMIT = 30000000;     // plain primality bitmap

// smallest prime factor of every n <= SPF_LIMIT (spf[0]=spf[1]=0)
const std::vector<int32_t>& spf_table();

// ascending primes p <= SPF_LIMIT (enough to trial-divide any n <= SPF_LIMIT^2)
const std::vector<int32_t>& prime_list();

// ascending primes p <= PRIME_LIMIT (built on demand; ~3.4 MB bitmap pass)
const std::vector<int32_t>& prime_list_large();

} // namespace sieve

// factorization as (prime, exponent) pairs, ascending primes.
// n may be negative (sign dropped); |n| must be <= SPF_LIMIT^2.
std::vector<std::pair<i64, int>> factorize(i64 n);

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n <= sieve::SPF_LIMIT) return sieve::spf_table()[(size_t)n] == n;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

// Moebius mu(n) for n >= 1
inline int moebius(i64 n) {
    int k = 0;
    for (auto& [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return 0;
        ++k;
    }
    return k % 2 ? -1 : 1;
}

// product of the distinct prime factors of |n|
inline i64 radical(i64 n) {
    i64 r = 1;
    for (auto& [p, e] : factorize(n)) {
        (void)e;
        r *= p;
    }
    return r;
}

// v_p(n) for n != 0
inline int valuation(i64 n, i64 p) {
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// true iff every prime factor of n is = 1 mod 4 (n >= 1); such n form the
// multiplicative set whose elements are exactly the odd sums of two coprime
// squares' norms -- the t-range of every Moebius sum here.
bool all_factors_1mod4(i64 n);

} // namespace chatelet
