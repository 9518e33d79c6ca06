// Arithmetic in Z[i] and the multiplicative machinery of sums of two
// squares: the character chi mod 4, r(n) = #{x^2+y^2 = n}, explicit
// representation lists, a canonical choice of Gaussian prime above each
// split rational prime, and squarefree Z[i]-ideals with norms all of whose
// prime factors are 1 mod 4 (the only ideals the counting sums range over).
#pragma once

#include "chatelet/errors.hpp"
#include "chatelet/numeric.hpp"
#include "chatelet/sieve.hpp"

#include <utility>
#include <vector>

namespace chatelet {

// ---------------------------------------------------------------------------
// Gaussian integers / rationals
// ---------------------------------------------------------------------------

struct GaussInt {
    Int re = 0, im = 0;

    GaussInt() = default;
    GaussInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}
    GaussInt(i64 r, i64 i) : re(r), im(i) {}

    GaussInt conj() const { return {re, -im}; }
    Int norm() const { return re * re + im * im; }

    GaussInt operator+(const GaussInt& o) const { return {re + o.re, im + o.im}; }
    GaussInt operator-(const GaussInt& o) const { return {re - o.re, im - o.im}; }
    GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
};

struct GaussRat {
    Rat re = 0, im = 0;

    GaussRat() = default;
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(const GaussInt& z) : re(z.re), im(z.im) {}

    GaussRat conj() const { return {re, -im}; }
    Rat norm() const { return re * re + im * im; }

    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat operator/(const GaussRat& o) const {
        Rat n = o.norm();
        if (n == 0) throw DomainError("division by zero Gaussian rational");
        GaussRat num = *this * o.conj();
        return {num.re / n, num.im / n};
    }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
};

// ---------------------------------------------------------------------------
// r(n) and representations
// ---------------------------------------------------------------------------

// r(n) = 4 sum_{d|n} chi(d): zero when some prime 3 mod 4 divides n to an
// odd power, else 4 prod_{p = 1 mod 4} (e_p + 1).  n >= 1.
i64 r_count(i64 n);

// r(n)/4 (the multiplicative part); 0 when r(n) = 0
i64 rhat_count(i64 n);

// all (x,y) with x^2 + y^2 = n, sorted lexicographically; length r_count(n)
std::vector<std::pair<i64, i64>> representations(i64 n);

// #{(x,y): x^2 + y^2 = t^2 * n, gcd(x,y,t) = 1} for n >= 1, t >= 1:
// zero unless every prime factor of t is 1 mod 4, else
// 4 * 2^omega(t) * prod_{p = 1 mod 4, p not | t} (v_p(n) + 1) * [3-mod-4 part
// of n square].  Inclusion-exclusion over primes of t collapses termwise.
i64 r_count_coprime(i64 n, i64 t);

// ---------------------------------------------------------------------------
// canonical split primes
// ---------------------------------------------------------------------------

struct SplitPrime {
    i64 p;         // 2 or a prime = 1 mod 4
    GaussInt pi;   // canonical generator: 1+i for p=2, else a+bi with a>b>0
};

// Deterministic Gaussian prime above p: the associate a+bi with a > b > 0
// (unique among the eight associates/conjugates since a != b for odd split
// p); for p = 2 the ramified generator 1+i.  NotSplitError for p = 3 mod 4.
SplitPrime canonical_split(i64 p);

// ---------------------------------------------------------------------------
// squarefree ideals with norm supported on primes 1 mod 4
// ---------------------------------------------------------------------------

// A squarefree ideal is a product over split primes p of nothing, (pi_p),
// (conj pi_p), or both.  The factor mask encodes which: 1 = pi, 2 = conj,
// 3 = both.
struct IdealRep {
    std::vector<std::pair<i64, int>> factors;  // (p, mask), ascending p
    i64 norm = 1;                              // prod p^popcount(mask)
    int mu = 1;                                // (-1)^{number of prime factors}

    bool is_unit() const { return factors.empty(); }
    GaussInt generator() const;
};

// all squarefree ideals with norm <= X (unit ideal first, then by norm,
// ties broken by the factor encoding)
std::vector<IdealRep> squarefree_ideals_up_to(i64 X);

// N(b1 cap b2 cap b3 cap b4): per prime, the intersection's exponent of
// each conjugate factor is the max over the four ideals, i.e. the mask OR.
i64 ideal_intersection_norm(const IdealRep& b1, const IdealRep& b2,
                            const IdealRep& b3, const IdealRep& b4);

} // namespace chatelet
