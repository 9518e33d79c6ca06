// =============================================================================
// oracle_hilbert.cpp
//
// Brute-force check of the Hilbert symbol (-1, q)_w used for the coloring:
// (-1, q)_w = +1 iff x^2 + y^2 = q z^2 has a nontrivial solution over Q_w.
//
// Brute side: search for a primitive solution mod p^k (k generous enough for
// Hensel lifting: k = v_p(q)+3 odd p, v_2(q)+5 for p=2).  Infinite place:
// solvable iff q > 0.
//
// Formula side (what the library implements):
//   w = infinity : sign(q)
//   w = 2        : +1 iff odd part of q is 1 mod 4
//   w = p odd    : +1 if p = 1 mod 4, else (-1)^(v_p(q))
// =============================================================================

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <vector>

using i64 = int64_t;

static int vp(i64 q, i64 p) { int v = 0; while (q % p == 0) { q /= p; ++v; } return v; }

static int formula(i64 q, i64 w) {       // w = 0 encodes the infinite place
    if (w == 0) return q > 0 ? +1 : -1;
    if (w == 2) {
        i64 t = q < 0 ? -q : q;
        while (t % 2 == 0) t /= 2;
        if (q < 0) t = -t;
        return ((t % 4) + 4) % 4 == 1 ? +1 : -1;
    }
    if (w % 4 == 1) return +1;
    return vp(q, w) % 2 == 0 ? +1 : -1;
}

static int brute(i64 q, i64 p) {
    int k = vp(q, p) + (p == 2 ? 5 : 3);
    i64 M = 1; for (int i = 0; i < k; ++i) M *= p;
    // mark[s] bits: 1 = s == q z^2 with z a unit, 2 = with p | z
    std::vector<uint8_t> mark(M, 0);
    for (i64 z = 0; z < M; ++z) {
        i64 s = (i64)((((__int128)q * z % M) * z % M + M) % M);
        mark[s] |= (z % p != 0) ? 1 : 2;
    }
    for (i64 x = 0; x < M; ++x) {
        i64 x2 = (i64)((__int128)x * x % M);
        for (i64 y = 0; y < M; ++y) {
            i64 s = (i64)((x2 + (__int128)y * y) % M);
            if (mark[s] & 1) return +1;                                 // z unit
            if (mark[s] && (x % p != 0 || y % p != 0)) return +1;       // x or y unit
        }
    }
    return -1;
}

int main() {
    const i64 qs[] = {1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 9, -9,
                      10, -10, 12, -12, 15, -15, 45, -45, 50, -50};
    const i64 ws[] = {0, 2, 3, 5, 7, 13};   // 0 = infinite place
    int bad = 0;
    std::printf("%6s |", "q\\w");
    for (i64 w : ws) std::printf(w ? "  p=%-3lld" : "  inf  ", (long long)w);
    std::printf("\n");
    for (i64 q : qs) {
        std::printf("%6lld |", (long long)q);
        for (i64 w : ws) {
            int f = formula(q, w);
            int b = (w == 0) ? (q > 0 ? +1 : -1) : brute(q, w);
            if (f != b) { ++bad; std::printf("  %+d!%+d", b, f); }
            else std::printf("   %c   ", f > 0 ? '+' : '-');
        }
        std::printf("\n");
    }
    // product formula over all places: prod_w (-1,q)_w = +1 (finitely many -1s)
    for (i64 q : qs) {
        int prod = formula(q, 0) * formula(q, 2);
        i64 t = q < 0 ? -q : q;
        while (t % 2 == 0) t /= 2;
        for (i64 p = 3; p * p <= t; p += 2)
            if (t % p == 0) { prod *= formula(q, p); while (t % p == 0) t /= p; }
        if (t > 1 && t % 2) prod *= formula(q, t);
        if (prod != 1) { ++bad; std::printf("product formula FAILS at q=%lld\n", (long long)q); }
    }
    std::printf(bad ? "\n%d MISMATCHES\n" : "\nall brute values match the formula; product formula holds\n", bad);
    return bad ? 1 : 0;
}
