// ---------------------------------------------------------------------------
// points: ground-truth enumeration of the rational points.
//
// Points are handled through their canonical integral lifts
//
//     x^2 + y^2 = t^2 * prod_j L_j(u,v),
//     gcd(x,y,t) = 1, gcd(u,v) = 1, t > 0, L1 >= 0, L2*L3*L4 >= 0,
//
// with height H = max(|u|,|v|)^2 * t.  The lift is unique: the only
// residual freedom is (x,y,t) -> -(x,y,t) and (u,v) -> -(u,v), and the
// three sign conditions kill both (the product of all four forms is
// forced >= 0 by the equation, so when L1 > 0 the last condition is
// automatic, and when L1 = 0 it breaks the (u,v) tie).
//
// A point is degenerate when prod_j L_j(u,v) = 0; then x = y = 0 and
// t = 1 are forced, and every surface has exactly four such points (one
// per zero direction of the four forms).  Degenerate points are counted
// separately: the Moebius-decomposed count covers only the open sign
// regions, which exclude them.
// ---------------------------------------------------------------------------
#pragma once

#include "chatelet/gaussian.hpp"
#include "chatelet/numeric.hpp"
#include "chatelet/surface.hpp"

#include <utility>
#include <vector>

namespace chatelet {

struct RationalPoint {
    i64 x = 0, y = 0, t = 1, u = 0, v = 0;
    i64 height = 1;  // = max(|u|,|v|)^2 * t
    bool operator==(const RationalPoint&) const = default;
};

enum class Color { black, white };

// label of the real connected component a nondegenerate point sits on,
// determined by the sign pattern of (L_1,...,L_4)(u,v): exactly two
// patterns with L_1 > 0 and positive product are realized by open sectors;
// A is the lexicographically larger one (+ before -)
enum class Component { A, B };

struct PointRecord {
    RationalPoint point;
    TorsorClass torsor_class;
    bool degenerate = false;
    // meaningful only when !degenerate (exporters leave them blank otherwise)
    Color figure_color = Color::black;
    Component real_component = Component::A;
};

struct TorsorLift {
    // z_delta^+ coordinates; the z_delta^- are their conjugates
    GaussRat z0p, z1p, z2p, z3p, z4p;
};

// Divide out gcd(u,v) (rescaling t by its square) and gcd(x,y,t), then fix
// signs.  InvalidPoint when the torsor equation fails or a block is zero.
RationalPoint normalize_lift(const SurfaceSpec& spec, i64 x, i64 y, i64 t,
                             i64 u, i64 v);

// Every point of height <= B, one record each, ordered by
// (height, u, v, x, y).
std::vector<PointRecord> enumerate_points(const SurfaceSpec& spec, i64 B);

// Height recomputed through the anticanonical embedding coordinates
// (v^2 t : uvt : u^2 t : x : y): after dividing the 5-tuple by its gcd,
// max(|v^2 t|, |uvt|, |u^2 t|, |x|/C, |y|/C) with the |.|/C comparisons
// done exactly on squares against Csq.  Must equal max(|u|,|v|)^2 * t.
i64 height_via_psi(const SurfaceSpec& spec, const RationalPoint& P);

// The unique m in Sigma with m_j ~ L_j(u,v) mod squares: for L_j != 0,
// m_j = sign(L_j) * prod {p = 3 mod 4 : v_p(L_j) odd}; a vanishing form
// gets the unique value making the product a square.  ClassNotInSigma if
// the result is not in Sigma (cannot happen for a valid point).
TorsorClass assign_class(const SurfaceSpec& spec, const RationalPoint& P);

// Explicit Gaussian coordinates on the versal torsor above the point:
// z0 with N(z0) = t and z1..z3 with N(z_j) = L_j/m_j by canonical
// factorization in Z[i], then z4 = (x+iy) / (alpha_m z0^2 z1 z2 z3).
// Checks N(z4) = L_4/m_4 and the four closed torsor identities
//   Delta_{j,k} m_l z_l z_l^- + Delta_{k,l} m_j z_j z_j^- + Delta_{l,j} m_k z_k z_k^- = 0;
// LiftFailure on any mismatch.  Requires a nondegenerate point.
TorsorLift lift_to_torsor(const SurfaceSpec& spec, const RationalPoint& P,
                          const TorsorClass& m);

// Hilbert symbol (-1, q)_w.  place = 0 means the real place, otherwise a
// prime.  At infinity: -1 iff q < 0.  At odd p: (-1)^(v_p(q) * (p-1)/2).
// At 2: (-1)^((u-1)/2) for u the odd part of q (a 2-adic unit).
int hilbert_minus_one(const Rat& q, i64 place);

struct BrauerEval {
    // (place, local invariant in {0, 1/2}); place 0 = infinity, then 2,
    // then the odd primes with nonzero valuation, ascending
    std::vector<std::pair<i64, Rat>> local;
    Color figure_color;
};

// Local invariants of the quaternion class (-1, L_j/L_k) at the point,
// plus the figure color: black iff the odd part of u*v is 1 mod 4.
// DegeneratePoint on degenerate input.
BrauerEval brauer_color(const SurfaceSpec& spec, const RationalPoint& P,
                        int j, int k);

// the two realized sign patterns (component A first); entries in {+1,-1},
// index 1..4, pattern[0] unused
std::array<std::array<int, 5>, 2> realized_patterns(const SurfaceSpec& spec);

// (nondegenerate, degenerate) counts of height <= B, computed without
// materializing records: the x,y fiber over (u,v,t) has cardinality
// r_coprime(prod L_j / 1, t), summed by a divisor-bookkeeping scan.
// threads > 1 splits the u range across workers.
std::pair<i64, i64> count_points(const SurfaceSpec& spec, i64 B, int threads = 1);

} // namespace chatelet
