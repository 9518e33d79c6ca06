// =============================================================================
// oracle_usum.cpp
//
// Independent brute-force evaluation of the lattice-restricted r-product sum
//
//   U(T) = sum over (u,v) in Z^2, 0 < |u|,|v| <= sqrt(T), m_j L_j(u,v) > 0,
//          D_j | L_j(u,v), 2 ∤ gcd(u,v)
//          of  prod_j r( L_j(u,v) / d_j )
//
// with r(n) counted by direct scan (x from -sqrt(n) to sqrt(n), perfect-square
// test), NOT by the multiplicative formula.  d_j stores |m_j|·(ideal norms);
// the sign of the r-argument is m_j L_j > 0 by the region condition.
//
// Cases are hardcoded; this is a freeze-values tool, not a reusable CLI.
// =============================================================================

#include <cstdint>
#include <cstdio>
#include <cmath>
#include <numeric>
#include <cstdlib>

using i64 = int64_t;

static i64 isqrt64(i64 n) {
    if (n < 0) return -1;
    i64 r = (i64)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// r(n) by scan: number of (x,y) in Z^2 with x^2+y^2 = n
static i64 r_scan(i64 n) {
    if (n < 0) return 0;
    if (n == 0) return 1;
    i64 cnt = 0, xm = isqrt64(n);
    for (i64 x = -xm; x <= xm; ++x) {
        i64 y2 = n - x * x, y0 = isqrt64(y2);
        if (y0 >= 0 && y0 * y0 == y2) cnt += (y0 == 0) ? 1 : 2;
    }
    return cnt;
}

struct Case {
    const char* label;
    i64 a3, b3, a4, b4;
    i64 m[4];          // signed class
    i64 d[4];          // positive: |m_j| * N(a_j) * N(b_j)
    i64 D[4];          // positive multiples of d incl. lcm with ell
    i64 Tnum, Tden;    // T as a rational
};

int main() {
    Case cases[] = {
        {"showcase m=(1,1,1,1) trivial T=4",    1,1,1,-1, {1,1,1,1},     {1,1,1,1}, {1,1,1,1}, 4,1},
        {"showcase m=(1,1,1,1) trivial T=25",   1,1,1,-1, {1,1,1,1},     {1,1,1,1}, {1,1,1,1}, 25,1},
        {"showcase m=(1,-1,-1,1) trivial T=25", 1,1,1,-1, {1,-1,-1,1},   {1,1,1,1}, {1,1,1,1}, 25,1},
        {"showcase m=(1,1,1,1) D=(5,1,1,1) T=100",   1,1,1,-1, {1,1,1,1}, {1,1,1,1}, {5,1,1,1}, 100,1},
        {"showcase m=(1,1,1,1) d=D=(5,1,1,1) T=100", 1,1,1,-1, {1,1,1,1}, {5,1,1,1}, {5,1,1,1}, 100,1},
        {"showcase m=(1,1,1,1) ell=3 (D=(3,3,1,1)) T=100", 1,1,1,-1, {1,1,1,1}, {1,1,1,1}, {3,3,1,1}, 100,1},
        {"showcase m=(1,1,1,1) trivial T=100",  1,1,1,-1, {1,1,1,1},     {1,1,1,1}, {1,1,1,1}, 100,1},
        {"showcase m=(1,-1,-1,1) trivial T=100",1,1,1,-1, {1,-1,-1,1},   {1,1,1,1}, {1,1,1,1}, 100,1},
        {"showcase m=(1,1,1,1) trivial T=25/5", 1,1,1,-1, {1,1,1,1},     {1,1,1,1}, {1,1,1,1}, 25,5},
        {"sprime spec (1,1,4,-1) m=(1,1,1,1) d=(1,1,5,5) T=400", 1,1,4,-1, {1,1,1,1}, {1,1,5,5}, {1,1,5,5}, 400,1},
        {"sprime spec (1,1,4,-1) m=(1,1,1,1) trivial T=400",     1,1,4,-1, {1,1,1,1}, {1,1,1,1}, {1,1,1,1}, 400,1},
        {"spec (1,2,1,3) m=(3,1,1,3) d=(3,1,1,3) T=400", 1,2,1,3, {3,1,1,3}, {3,1,1,3}, {3,1,1,3}, 400,1},
    };

    for (const Case& c : cases) {
        i64 a[5] = {0, 1, 0, c.a3, c.a4};
        i64 b[5] = {0, 0, 1, c.b3, c.b4};
        // |u| <= sqrt(T)  <=>  u^2 * Tden <= Tnum
        i64 M = isqrt64(c.Tnum / c.Tden);
        __int128 total = 0;
        for (i64 u = -M; u <= M; ++u) for (i64 v = -M; v <= M; ++v) {
            if (u == 0 || v == 0) continue;
            if (u * u * c.Tden > c.Tnum || v * v * c.Tden > c.Tnum) continue;
            if (u % 2 == 0 && v % 2 == 0) continue;
            i64 prod = 1; bool ok = true;
            i64 L[5];
            for (int j = 1; j <= 4; ++j) {
                L[j] = a[j] * u + b[j] * v;
                i64 mj = c.m[j - 1];
                if ((mj > 0 && L[j] <= 0) || (mj < 0 && L[j] >= 0)) { ok = false; break; }
                if (L[j] % c.D[j - 1] != 0) { ok = false; break; }
            }
            if (!ok) continue;
            for (int j = 1; j <= 4 && ok; ++j) {
                i64 q = std::llabs(L[j]) / c.d[j - 1];
                if (std::llabs(L[j]) % c.d[j - 1] != 0) { ok = false; break; }
                prod *= r_scan(q);
                if (prod == 0) break;
            }
            if (ok) total += prod;
        }
        std::printf("%-55s U = %lld\n", c.label, (long long)(i64)total);
    }
    return 0;
}
