// =============================================================================
// oracle_points.cpp
//
// Independent brute-force count of rational points of bounded height on the
// surface  Y^2 + Z^2 = X (a3 X + b3) (a4 X + b4), parametrized by normalized
// integer 5-tuples (x, y, t, u, v) with
//
//   x^2 + y^2 = t^2 * L1 L2 L3 L4 (u,v),      L1=u, L2=v, L3=a3 u + b3 v,
//                                             L4=a4 u + b4 v,
//   gcd(u,v) = 1, gcd(x,y,t) = 1, t > 0, L1 >= 0, L2 L3 L4 >= 0,
//   height H = max(|u|,|v|)^2 * t <= B.
//
// The scan is deliberately dumb: for each admissible direction (u,v) and each
// t, it solves x^2 + y^2 = n by stepping x and testing n - x^2 for being a
// perfect square.  No factorization, no multiplicative identities — this is
// the ground truth the library's counting paths get frozen against.
//
// Usage: oracle_points a3 b3 a4 b4 Bmax [dumpB]
// =============================================================================

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <vector>
#include <algorithm>
#include <numeric>

using i64 = int64_t;

static i64 isqrt64(i64 n) {
    if (n < 0) return -1;
    i64 r = (i64)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

static i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)); }

int main(int argc, char** argv) {
    if (argc < 6) { std::fprintf(stderr, "usage: %s a3 b3 a4 b4 Bmax [dumpB]\n", argv[0]); return 2; }
    i64 a3 = atoll(argv[1]), b3 = atoll(argv[2]), a4 = atoll(argv[3]), b4 = atoll(argv[4]);
    i64 Bmax = atoll(argv[5]);
    i64 dumpB = (argc > 6) ? atoll(argv[6]) : -1;

    // heights of every point found, split nondegenerate / degenerate
    std::vector<i64> h_nondeg, h_deg;

    i64 M = isqrt64(Bmax);
    for (i64 u = -M; u <= M; ++u) {
        for (i64 v = -M; v <= M; ++v) {
            if (u == 0 && v == 0) continue;
            if (std::gcd(std::llabs(u), std::llabs(v)) != 1) continue;
            i64 L1 = u, L2 = v, L3 = a3 * u + b3 * v, L4 = a4 * u + b4 * v;
            if (L1 < 0) continue;                       // sign normalization
            __int128 tail = (__int128)L2 * L3 * L4;
            if (tail < 0) continue;
            i64 m2 = std::max(std::llabs(u), std::llabs(v)); i64 H0 = m2 * m2;
            __int128 prod = (__int128)L1 * tail;
            if (prod == 0) {
                // degenerate direction: unique point (0,0,1,u,v), height H0
                if (H0 <= Bmax) {
                    h_deg.push_back(H0);
                    if (dumpB >= 0 && H0 <= dumpB)
                        std::printf("dump deg  x=0 y=0 t=1 u=%lld v=%lld H=%lld\n",
                                    (long long)u, (long long)v, (long long)H0);
                }
                continue;
            }
            for (i64 t = 1; H0 * t <= Bmax; ++t) {
                __int128 n128 = (__int128)t * t * prod;
                if (n128 > (__int128)4e18) { std::fprintf(stderr, "overflow guard hit\n"); return 3; }
                i64 n = (i64)n128;
                i64 xm = isqrt64(n);
                for (i64 x = -xm; x <= xm; ++x) {
                    i64 y2 = n - x * x;
                    i64 y0 = isqrt64(y2);
                    if (y0 * y0 != y2) continue;
                    // y in {y0, -y0}, dedup y0 == 0
                    for (int sy = 0; sy < (y0 == 0 ? 1 : 2); ++sy) {
                        i64 y = sy ? -y0 : y0;
                        if (gcd3(x, y, t) != 1) continue;
                        h_nondeg.push_back(H0 * t);
                        if (dumpB >= 0 && H0 * t <= dumpB)
                            std::printf("dump pt   x=%lld y=%lld t=%lld u=%lld v=%lld H=%lld\n",
                                        (long long)x, (long long)y, (long long)t,
                                        (long long)u, (long long)v, (long long)(H0 * t));
                    }
                }
            }
        }
    }

    std::sort(h_nondeg.begin(), h_nondeg.end());
    std::sort(h_deg.begin(), h_deg.end());
    auto upto = [](const std::vector<i64>& h, i64 B) {
        return (i64)(std::upper_bound(h.begin(), h.end(), B) - h.begin());
    };

    std::printf("# surface a3=%lld b3=%lld a4=%lld b4=%lld\n",
                (long long)a3, (long long)b3, (long long)a4, (long long)b4);
    std::printf("%8s %12s %12s\n", "B", "nondeg", "deg");
    for (i64 B = 1; B <= std::min<i64>(Bmax, 200); ++B)
        std::printf("%8lld %12lld %12lld\n", (long long)B, (long long)upto(h_nondeg, B), (long long)upto(h_deg, B));
    for (i64 B : {(i64)500, (i64)1000, (i64)2000, (i64)5000, (i64)10000})
        if (B <= Bmax && B > 200)
            std::printf("%8lld %12lld %12lld\n", (long long)B, (long long)upto(h_nondeg, B), (long long)upto(h_deg, B));
    return 0;
}
