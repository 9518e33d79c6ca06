// ---------------------------------------------------------------------------
// lattice: the congruence lattices
//
//     Gamma_D = { (u,v) in Z^2 : D_j | L_j(u,v) for j = 1..4 },
//
// their determinants rho(D) = [Z^2 : Gamma_D], and Lagrange-Gauss reduced
// bases with exact successive minima.  Everything here is exact integer
// arithmetic (cpp_int) because rho enters exact density series where the
// moduli can be prime powers like p^40.
//
// Basis convention: row-style Hermite normal form
//
//     e1 = (m, c),  e2 = (0, h),   m, h > 0,  0 <= c < h,  det = m*h,
//
// where m is the least positive u-coordinate of a lattice vector and h the
// least positive v with (0,v) in the lattice.  This form is unique, which
// makes lattice equality a plain comparison.
// ---------------------------------------------------------------------------
#pragma once

#include "chatelet/numeric.hpp"
#include "chatelet/surface.hpp"

#include <array>

namespace chatelet {

struct Vec2 {
    Int u, v;
    bool operator==(const Vec2&) const = default;
};

struct Lattice2 {
    Vec2 e1, e2;  // HNF rows ((m,c),(0,h))
    Int det;      // = m*h = [Z^2 : lattice]
};

// D is 1-indexed like everything else: D[1..4], D[0] unused.
using DArray = std::array<Int, 5>;

// HNF basis of Gamma_D, built by intersecting the four congruence kernels
// {a_j u + b_j v == 0 mod D_j} one at a time (extended gcd, no floats).
Lattice2 gamma_basis(const SurfaceSpec& spec, const DArray& D);

// det Gamma_D; multiplicative in D by CRT.
Int rho(const SurfaceSpec& spec, const DArray& D);

struct Minima {
    Vec2 e1, e2;       // Lagrange-Gauss reduced: |e1| <= |e2| <= |e2 +- e1|
    Int s1_sq, s2_sq;  // exact squared lengths, s1_sq <= s2_sq
    double s1() const { return std::sqrt((double)s1_sq); }
    double s2() const { return std::sqrt((double)s2_sq); }
};

// Reduce a basis until e1 realizes the first minimum and e2 the second;
// the determinant is preserved.
Minima reduce_basis(const Lattice2& L);

} // namespace chatelet
