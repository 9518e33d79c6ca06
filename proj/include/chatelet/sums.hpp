// ---------------------------------------------------------------------------
// sums: the analytic-sum layer.
//
//  * the 4-fold geometric series S0^+-(z) = sum eps^(n1+..+n4) z^m(n) with
//    m(n) = max_{i!=j}(n_i+n_j), and their closed forms;
//  * the parameter map (m, a, b, ell) -> (d, D) feeding the lattice sums;
//  * U(T) = sum over Gamma_D-points of the clipped sign region of
//    prod_j r(L_j/d_j), evaluated by two independent scan strategies;
//  * the logarithmic-average constants C_m of sum r(t)/t;
//  * the full Moebius-decomposed point count (exact integer identity with
//    the direct enumeration), in a per-lattice-point regrouped fast form
//    plus a literal nested-loop reference for small bounds.
// ---------------------------------------------------------------------------
#pragma once

#include "chatelet/gaussian.hpp"
#include "chatelet/lattice.hpp"
#include "chatelet/numeric.hpp"
#include "chatelet/sieve.hpp"
#include "chatelet/surface.hpp"

#include <array>
#include <vector>

namespace chatelet {

// m(n) = max_{i != j} (n_i + n_j): the sum of the two largest entries
i64 m_of(const std::array<i64, 4>& n);

// closed forms:
//   S0^-(z) = (1-z)^2 / ((1+z)^2 (1+z^2))
//   S0^+(z) = (1+2z+6z^2+2z^3+z^4) / ((1-z)^4 (1+z)^2)
// DomainError unless |z| < 1 and eps is +-1.
long double s0_closed(int eps, long double z);
Rat s0_closed_exact(int eps, const Rat& z);

// sum over n in [0,N]^4 of eps^(n1+...+n4) z^m(n), accumulated bucketed by
// m in descending order so the small terms are added first
long double s0_truncated(int eps, long double z, int N);

// the (d, D) pair of a Moebius term: d_j = |m_j| N(a_j) N(b_j) (stored
// positive; the signs live in m and matter only 2-adically), D_j =
// lcm(d_j, ell) for j = 1,2 and D_j = d_j for j = 3,4
struct DVector {
    std::array<i64, 5> d{1, 1, 1, 1, 1};
    std::array<i64, 5> D{1, 1, 1, 1, 1};
    i64 ell = 1;
};

// ParityError if any d_j comes out even (impossible for valid inputs)
DVector build_dD(const TorsorClass& m, const SigmaPrimeTerm& a,
                 const std::array<IdealRep, 5>& b, i64 ell);

// U(T) = sum over (u,v) in Gamma_D with u^2 <= T, v^2 <= T (exact rational
// comparison), m_j L_j(u,v) > 0 for all j, and gcd(u,v) odd, of
// prod_j r(|L_j(u,v)| / d_j).  Evaluated twice: once by scanning the box,
// once by scanning coordinates over the reduced basis of Gamma_D with
// Davenport-style bounds; MismatchError if the two disagree.
i64 u_sum(const SurfaceSpec& spec, const Rat& T, const TorsorClass& m,
          const DVector& dvec);

// C_m = 2 L(1,chi) prod_{p = 3 mod 4} (1 - p^-2)
//         prod_{p | m, p = 1 mod 4} (1 - 1/p)^2,   L(1,chi) = pi/4;
// the 3-mod-4 product is truncated at prime_cutoff with tail < 1e-8
double C_m_constant(i64 m, i64 prime_cutoff = sieve::PRIME_LIMIT);

// sum over t <= T with every prime factor 1 mod 4 and gcd(t,m) = 1 of
// r(t)/t.  The exact variant returns one rational (small T only: the
// common denominator grows fast); the partial variants accumulate in
// extended precision, ascending t, for slope fits up to T = 10^7.
Rat r_over_t_exact(i64 T, i64 m);
double r_over_t_partial(i64 T, i64 m);
std::vector<double> r_over_t_partial_multi(const std::vector<i64>& Ts, i64 m);

// N(B) through the Moebius decomposition: (1/2^8) * sum over m in Sigma,
// a in Sigma', odd squarefree ell, quadruples b of squarefree ideals, and
// t (all prime factors 1 mod 4, gcd(t, N(a)) = 1) of
//   mu(a) mu(b) mu(ell) w(t, cap b) U(B/t),
// where w(t, c) counts the Gaussian z with N(z) = t, conj(z) divisible by
// c, and no rational prime dividing z.  (z is the first half of a
// factorization t = z conj(z); a rational prime inside z would divide
// gcd(x, y, t), so those halves never correspond to primitive points.
// When t is squarefree w(t, c) = r(t/N(c)).)
// Computed exactly by regrouping around the lattice points (u,v): every
// index range is finite once a point is fixed, and the inner (b, t)
// coupling collapses into one local factor per split prime.
// DivisibilityError if the grand total is not divisible by 2^8.
i64 moebius_count(const SurfaceSpec& spec, i64 B);

// the same sum evaluated by literal nested loops over (m, a, ell, b, t)
// with u_sum at the inside -- exponential in the bound, for small-B
// cross-checks of the regrouped path only
i64 moebius_count_reference(const SurfaceSpec& spec, i64 B);

} // namespace chatelet
