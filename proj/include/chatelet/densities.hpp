// Local densities of the ten-variable system L_j(u,v) = d_j (s_j^2 + t_j^2)
// (1 <= j <= 4), with (u,v) confined to the congruence lattice D_j | L_j:
// the p-adic factors sigma_p(d, D), the dyadic factor sigma_2(d), the
// archimedean factor omega_inf = pi^4 Vol(R_m), the per-class constants
// c_{d,D,R_m} = omega_inf * prod_p sigma_p, and the assembled leading
// constant of N(B) ~ c B log B, together with truncation-error estimates
// and an empirical fit table.
//
// Normalization: for odd p,
//   sigma_p(d,D) = lim_n p^{-6n-lambda_1-...-lambda_4} N_{d,D}(p^n),
// where N_{d,D}(p^n) counts (u,v,s,t) mod p^n with the four congruences and
// D_j | L_j(u,v), and lambda_j = v_p(d_j), mu_j = v_p(D_j).  The p^{-lambda}
// factors stay inside sigma_p, so c_{d,D,R_m} composes with no hidden
// renormalization.  For p = 2 the count drops the D-condition and demands
// 2 ndivides gcd(u,v) instead, with plain 2^{-6n} scaling.
#pragma once

#include "chatelet/numeric.hpp"
#include "chatelet/sums.hpp"
#include "chatelet/surface.hpp"

#include <array>
#include <string>
#include <vector>

namespace chatelet {

// one Euler factor, tagged with how it was computed and, when truncated,
// an error bound
struct LocalDensity {
    i64 p = 2;
    long double value = 1.0L;
    Rat exact = 0;           // meaningful iff has_exact
    bool has_exact = false;  // exact rational available (closed form, or
                             // exactly-summed series truncation)
    std::string method;      // "closed_form" | "series" | "brute_force"
    long double tail_bound = 0.0L;  // |true value - value| bound (0 if exact)
};

// everything that enters one class constant c_{d,D,R_m}
struct DensityReport {
    long double omega_inf = 0.0L;  // pi^4 * Vol(R_m)
    Rat area = 0;                  // Vol(R_m), exact
    Rat sigma2 = 0;                // stabilized dyadic density (exact)
    int sigma2_level = 0;          // level n at which sigma_2 stabilized
    std::vector<LocalDensity> sigma_p;   // bad / divisor primes + small ones
    long double generic_product = 1.0L;  // closed forms over the other p <= P0
    long double c_class = 0.0L;          // omega_inf * sigma2 * prod sigma_p
    long double truncation_error = 0.0L; // |error| estimate for c_class
    i64 P0 = 0;                          // Euler product cutoff used
};

// the assembled constant of the main asymptotic, with bookkeeping metadata
struct ConstantReport {
    long double c = 0.0L;
    i64 terms = 0;                 // number of (m, a, b, ell) terms summed
    long double tail_bound = 0.0L; // estimate for the omitted (ell, b) tail
    int alpha_S = 1;               // alpha of the surface (metadata)
    int beta_S = 4;                // beta = #H^1(Gal, Pic) (metadata)
    i64 tors = 256;                // #torsion of the Neron-Severi torus
    i64 Lmax = 0, Bmax = 0, P0 = 0;
};

struct FitRow {
    i64 B = 0;
    i64 N_nondeg = 0;
    long double prediction = 0.0L;  // c * (B log B - B + 1)
    long double ratio = 0.0L;       // N_nondeg / prediction
};

// generic Euler factor at an odd prime p not dividing Delta (trivial d, D):
//   p = 1 mod 4: (1 + 2/p + 6/p^2 + 2/p^3 + 1/p^4) / (1 + 1/p)^2
//   p = 3 mod 4: (1 - 1/p^2)^2 / (1 + 1/p^2)
// DomainError if p is not an odd prime or divides Delta.
Rat sigma_p_closed(const SurfaceSpec& spec, i64 p);

// sigma_p(d, D) for odd p through the lattice-determinant series
//   (1 - chi(p)/p)^4  sum_{nu in N^4}  chi(p)^{nu_1+...+nu_4}
//                     / rho(p^{max(mu_1, lambda_1+nu_1)}, ...),
// summed exactly over the box nu_j <= nu_max with all terms collected by
// the power of p in the denominator.  rho is evaluated by a closed
// exponent formula (largest single exponent vs. largest pairwise sum
// discounted by v_p(Delta_{j,k})) that is first verified against the exact
// basis computation on a box of small exponents; if that verification ever
// failed, the value would fall back to the congruence-count oracle and be
// labelled "brute_force".  Omitted terms have denominator exponent
// > nu_max, giving tail <= (1+1/p)^4 * 8 (nu_max+2)^3 p^{-nu_max-1}.
LocalDensity sigma_p_series(const SurfaceSpec& spec, i64 p,
                            const std::array<i64, 5>& d,
                            const std::array<i64, 5>& D, int nu_max = 32);

// the finite-level congruence count: p^{-6n - sum lambda} N_{d,D}(p^n),
// exact.  The (s,t)-pairs per residue come from the classical solution
// counts of s^2 + t^2 = A mod p^m, and the (u,v) scan groups residues by
// the valuation pattern of the four forms (one branch per level instead of
// p^{2n} raw pairs).  ResourceError if p^n > 10^5; DomainError if some
// v_p(D_j) exceeds n (the divisibility condition is not mod-p^n-testable).
Rat sigma_p_oracle(const SurfaceSpec& spec, i64 p, const std::array<i64, 5>& d,
                   const std::array<i64, 5>& D, int n);

struct Sigma2Result {
    Rat value = 0;
    int level = 0;  // first n with value(n) == value(n+1)
};

// dyadic density: 2^{-6n} N_d(2^n) with 2 ndivides gcd(u,v) and no lattice
// condition, for increasing n until two consecutive exact values agree.
// The d_j are SIGNED (d_j = m_j |d_j| matters mod powers of 2) and odd.
// NoStabilization (with both trailing values) if n_max is reached first.
Sigma2Result sigma_2(const SurfaceSpec& spec, const std::array<i64, 5>& d_signed,
                     int n_max = 12);

// pi^4 * Vol(R_m), from the exact clipped-polygon area
long double omega_infty(const SurfaceSpec& spec, const TorsorClass& m);

// one class constant c_{d,D,R_m} = omega_inf * sigma_2 * prod_{p odd}
// sigma_p: exact small factors, closed forms for the generic primes up to
// P0, and an |log sigma_p| <= 8/p^2 bracket for the p > P0 tail folded
// into truncation_error.  Per-prime evaluations may run on several
// threads; the final product is always taken in ascending-prime order.
DensityReport c_class(const SurfaceSpec& spec, const TorsorClass& m,
                      const DVector& dv, i64 P0 = 100000, int threads = 1);

// the leading constant
//   c = 2^{-8} sum_{m in Sigma} sum_{a in Sigma'} mu(a)
//       sum_{ell <= Lmax odd squarefree} mu(ell)
//       sum_{b quadruple, N(b_j) <= Bmax} mu(b)
//       c_{a,b} c_{d,D,R_m} / N(cap b_j),
// where c_{a,b} = C_{N(a)} if gcd(N(cap b_j), N(a)) = 1 and 0 otherwise,
// and (d, D) come from build_dD(m, a, b, ell).  tail_bound estimates the
// omitted ell / b terms through their observed ~x^{-3/2} decay; it is an
// estimate, not a proven bound, and is flagged as such in the report.
ConstantReport assemble_constant(const SurfaceSpec& spec, i64 Lmax = 15,
                                 i64 Bmax = 20, i64 P0 = 100000,
                                 int threads = 1);

// diagnostic table N_nondeg(B) vs. c * f(B), f(B) = B log B - B + 1
std::vector<FitRow> fit_empirical(const SurfaceSpec& spec,
                                  const std::vector<i64>& B_list,
                                  i64 Lmax = 15, i64 Bmax = 20, i64 P0 = 100000,
                                  int threads = 1);

// the error-term exponent eta = 1 - (1 + log log 2)/log 2 = 0.086071...
long double eta();

// JSON serialization (all parameters recorded for reproducibility)
std::string density_report_json(const DensityReport& r);
std::string constant_report_json(const ConstantReport& r);

} // namespace chatelet
