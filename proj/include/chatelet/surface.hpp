// Surface-level combinatorics.  A surface is fixed by coprime pairs
// (a3,b3), (a4,b4); together with L1 = U and L2 = V this gives four linear
// forms L_j = a_j U + b_j V whose pairwise resultants Delta_{j,k} control
// everything else: the bad primes, the finite set Sigma of torsor classes
// (quadruples of signed squarefree integers with square product), the
// Gaussian-ideal correction terms Sigma' at bad primes 1 mod 4, and the
// archimedean sign regions R_m inside the unit square.
#pragma once

#include "chatelet/errors.hpp"
#include "chatelet/gaussian.hpp"
#include "chatelet/numeric.hpp"

#include <array>
#include <vector>

namespace chatelet {

struct SurfaceSpec {
    // 1-indexed: a[1..4], b[1..4]; (a1,b1)=(1,0), (a2,b2)=(0,1)
    std::array<i64, 5> a{}, b{};
    i64 delta[5][5] = {};   // delta[j][k] = a_j b_k - a_k b_j
    Int Delta;              // a3 b3 a4 b4 (a3 b4 - a4 b3), nonzero
    i64 Csq;                // prod_j (|a_j| + |b_j|), exact
    double C;               // sqrt(Csq)

    i64 L(int j, i64 u, i64 v) const { return a[j] * u + b[j] * v; }
    bool divides_Delta(i64 p) const {
        for (int j = 3; j <= 4; ++j)
            if (a[j] % p == 0 || b[j] % p == 0) return true;
        return delta[3][4] % p == 0;
    }
};

// default cap on |a_j|, |b_j| so that all resultants stay within the
// factorization backend's reach
inline constexpr i64 COEFF_CAP = 1000000;

SurfaceSpec validate(i64 a3, i64 b3, i64 a4, i64 b4);

struct BadPrimeData {
    std::vector<i64> S;                    // primes dividing prod Delta_{j,k}, incl. 2
    std::array<std::vector<i64>, 5> S_j;   // p in S, p = 3 mod 4, p | prod_{k != j} Delta_{j,k}
    std::vector<i64> Sprime;               // p in S with p = 1 mod 4
};

BadPrimeData bad_prime_data(const SurfaceSpec& spec);

struct TorsorClass {
    std::array<i64, 5> m{};   // m[1..4], signed squarefree, m[1] > 0
    i64 alpha_m = 1;          // alpha_m^2 = prod m_j
};

// all of Sigma: m_j built from primes of S_j with signs, m1 > 0,
// prod m_j a perfect square, gcd(m_1..m_4) = 1
std::vector<TorsorClass> build_sigma(const SurfaceSpec& spec);

struct SigmaPrimeTerm {
    std::array<GaussInt, 5> gen;   // gen[1..4]: the generators a_j^+
    std::array<i64, 5> norm;       // norm[1..4] = N(a_j^+)
    int mu = 1;                    // prod over p of mu_p(I_p)
    i64 norm_product = 1;          // prod_j norm[j]; gcd(t, this) = 1 tests
};

// the full product set Sigma' with Moebius weights.  For each bad prime
// p = 1 mod 4, the admissible index sets E_p are all unions of the pair
// sets I_{j,k} = {delta_j^-, delta_k^+} over j < k with p | Delta_{j,k}
// (plus the empty set); mu_p solves mu_p(empty) = 1 and
// sum_{J subset I} mu_p(J) = 0 for nonempty I.
std::vector<SigmaPrimeTerm> build_sigma_prime(const SurfaceSpec& spec);

struct Region {
    TorsorClass m;
    std::vector<std::pair<Rat, Rat>> polygon;  // convex, counterclockwise
    Rat area;                                  // exact
};

// closure of {(u,v): |u|,|v| <= 1, m_j L_j(u,v) >= 0} by exact half-plane
// clipping of the square; empty polygon and area 0 when infeasible
Region region_polygon(const SurfaceSpec& spec, const TorsorClass& m);

// area of {(u,v) in [-1,1]^2 : prod_j L_j(u,v) > 0}, computed independently
// of region_polygon by subdividing the square along the four lines L_j = 0
// (sector decomposition around the origin)
Rat positive_product_area(const SurfaceSpec& spec);

// the projective cross-ratio of the four zeros of prod L_j:
// (Delta_31/Delta_32) / (Delta_41/Delta_42)
Rat cross_ratio(const SurfaceSpec& spec);

} // namespace chatelet
