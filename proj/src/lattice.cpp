#include "chatelet/lattice.hpp"

#include <tuple>
#include <utility>

namespace chatelet {

// ---------------------------------------------------------------------------
// exact integer helpers
// ---------------------------------------------------------------------------

static Int imod(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

static Int floordiv(const Int& a, const Int& b) {
    // b > 0 assumed
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

// g = gcd(a,b) >= 0 together with x,y such that a*x + b*y = g
static std::tuple<Int, Int, Int> egcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        a -= q * b; std::swap(a, b);
        x0 -= q * x1; std::swap(x0, x1);
        y0 -= q * y1; std::swap(y0, y1);
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    return {a, x0, y0};
}

// inverse of a modulo m (gcd(a,m)=1, m >= 1)
static Int modinv(const Int& a, const Int& m) {
    if (m == 1) return 0;
    auto [g, x, y] = egcd(imod(a, m), m);
    (void)g; (void)y;
    return imod(x, m);
}

// ---------------------------------------------------------------------------
// gamma_basis
// ---------------------------------------------------------------------------

// canonicalize a row basis to HNF ((m,c),(0,h))
static Lattice2 to_hnf(Vec2 e1, Vec2 e2) {
    Int det = e1.u * e2.v - e1.v * e2.u;
    if (det < 0) det = -det;
    // m = least positive u-coordinate = gcd of the two u-coordinates,
    // realized by an explicit lattice vector via extended gcd
    auto [m, x, y] = egcd(e1.u, e2.u);
    Vec2 w{m, x * e1.v + y * e2.v};
    Int h = det / m;
    Lattice2 out;
    out.e1 = {m, imod(w.v, h)};
    out.e2 = {0, h};
    out.det = det;
    return out;
}

Lattice2 gamma_basis(const SurfaceSpec& spec, const DArray& D) {
    Vec2 e1{1, 0}, e2{0, 1};
    for (int j = 1; j <= 4; ++j) {
        if (D[j] < 1) throw DomainError("gamma_basis: D_j must be >= 1");
        const Int& M = D[j];
        if (M == 1) continue;
        // the current lattice is {x1*e1 + x2*e2}; restrict to the kernel of
        //   (x1,x2) -> x1*r1 + x2*r2 (mod M),  r_i = L_j(e_i)
        Int r1 = imod(spec.a[j] * e1.u + spec.b[j] * e1.v, M);
        Int r2 = imod(spec.a[j] * e2.u + spec.b[j] * e2.v, M);
        Int g1 = boost::multiprecision::gcd(r1, M);
        // kernel basis in (x1,x2) coordinates: (M/g1, 0) and (x1*, h) where
        // h = g1/gcd(r2,g1) is the least x2 ever attainable
        Int h = g1 / boost::multiprecision::gcd(r2, g1);
        Int x1 = 0;
        if (g1 != M) {  // r1 not == 0 mod M, so an inverse step is needed
            Int rhs = imod(-(h * r2) / g1, M / g1);
            x1 = imod(rhs * modinv(r1 / g1, M / g1), M / g1);
        }
        Vec2 f1{(M / g1) * e1.u, (M / g1) * e1.v};
        Vec2 f2{x1 * e1.u + h * e2.u, x1 * e1.v + h * e2.v};
        e1 = f1;
        e2 = f2;
    }
    return to_hnf(e1, e2);
}

Int rho(const SurfaceSpec& spec, const DArray& D) {
    return gamma_basis(spec, D).det;
}

// ---------------------------------------------------------------------------
// reduce_basis
// ---------------------------------------------------------------------------

static Int norm_sq(const Vec2& v) { return v.u * v.u + v.v * v.v; }

Minima reduce_basis(const Lattice2& L) {
    Vec2 b1 = L.e1, b2 = L.e2;
    Int n1 = norm_sq(b1), n2 = norm_sq(b2);
    if (n1 > n2) { std::swap(b1, b2); std::swap(n1, n2); }
    for (;;) {
        // mu = nearest integer to <b1,b2>/<b1,b1>
        Int dot = b1.u * b2.u + b1.v * b2.v;
        Int mu = floordiv(2 * dot + n1, 2 * n1);
        b2.u -= mu * b1.u;
        b2.v -= mu * b1.v;
        n2 = norm_sq(b2);
        if (n2 >= n1) break;
        std::swap(b1, b2);
        std::swap(n1, n2);
    }
    Minima m;
    m.e1 = b1; m.e2 = b2;
    m.s1_sq = n1; m.s2_sq = n2;
    return m;
}

} // namespace chatelet
