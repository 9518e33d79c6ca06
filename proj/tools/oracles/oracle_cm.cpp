// =============================================================================
// oracle_cm.cpp
//
// High-precision reference for the constants
//
//   A   = prod_{p = 3 mod 4} (1 - p^-2)
//   C_m = 2 L(1,chi) * A * prod_{p | m, p = 1 mod 4} (1 - 1/p)^2,
//         L(1,chi) = pi/4  (chi the nontrivial character mod 4)
//
// Two independent routes to A:
//   (a) direct partial products at increasing cutoffs (slow p^-2 tail ~ 1/P),
//   (b) via Catalan's constant: A^2 = (8 G / pi^2) prod_{p=3 mod 4}(1 - p^-4),
//       whose product has a p^-4 tail (~1/P^3) and the known value
//       G = 0.9159655941772190150546...
//
// Also spot-checks the logarithmic average sum_{t sums-of-two-squares, t<=T,
// gcd(t,m)=1} r(t)/t against C_m log T by decade differences.
// =============================================================================

#include <cstdint>
#include <cstdio>
#include <cmath>
#include <numeric>
#include <vector>

using i64 = int64_t;

int main() {
    const long double PI = 3.14159265358979323846264338328L;
    const long double G  = 0.91596559417721901505460351493L;   // Catalan
    const i64 PMAX = 30000000;

    std::vector<uint8_t> comp(PMAX + 1, 0);
    for (i64 i = 2; i * i <= PMAX; ++i)
        if (!comp[i]) for (i64 j = i * i; j <= PMAX; j += i) comp[j] = 1;

    long double A = 1.0L, A4 = 1.0L;
    i64 next_report = 100000;
    std::printf("direct partial products of A:\n");
    for (i64 p = 3; p <= PMAX; ++p) {
        if (comp[p] || p % 4 != 3) continue;
        long double ip = 1.0L / (long double)p;
        A  *= 1.0L - ip * ip;
        A4 *= 1.0L - ip * ip * ip * ip;
        while (p >= next_report) {
            std::printf("  P = %9lld   A = %.15Lf   (tail bound ~ 2/P = %.1Le)\n",
                        (long long)next_report, A, 2.0L / next_report);
            next_report *= 10;
        }
    }
    std::printf("  P = %9lld   A = %.15Lf\n", (long long)PMAX, A);

    long double A_ref = std::sqrt(8.0L * G / (PI * PI) * A4);
    std::printf("Catalan route: A_ref = sqrt(8 G / pi^2 * prod(1-p^-4)) = %.15Lf\n", A_ref);
    std::printf("  |direct - ref| = %.3Le\n", fabsl(A - A_ref));

    long double C1 = (PI / 2.0L) * A_ref;
    std::printf("C_1  = (pi/2) A = %.15Lf\n", C1);
    std::printf("C_5  = C_1 (1-1/5)^2 = %.15Lf   (C_5/C_1 = 16/25 = %.6Lf)\n",
                C1 * 16.0L / 25.0L, 16.0L / 25.0L);
    std::printf("C_13 = C_1 (1-1/13)^2 = %.15Lf\n", C1 * 144.0L / 169.0L);
    std::printf("C_3  = C_1 (3 is 3 mod 4, no factor)\n");

    // ---- decade-slope spot check against C_m -------------------------------
    // r(t) via smallest-prime-factor sieve; t restricted to sums of two squares
    // (all prime factors 1 mod 4, or 2), gcd(t, m) = 1.
    const i64 T = 1000000;
    std::vector<int32_t> spf(T + 1, 0);
    for (i64 i = 2; i <= T; ++i)
        if (!spf[i]) for (i64 j = i; j <= T; j += i) if (!spf[j]) spf[j] = (int32_t)i;

    for (i64 m : {(i64)1, (i64)5, (i64)13}) {
        long double S = 0, prevS = 0;
        i64 next_T = 1000;
        std::printf("m = %lld:\n", (long long)m);
        for (i64 t = 1; t <= T; ++t) {
            i64 n = t;
            i64 rhat = 1;
            bool in_D = true;
            while (n > 1) {
                i64 p = spf[n];
                int e = 0;
                while (n % p == 0) { n /= p; ++e; }
                if (p % 4 != 1) { in_D = false; break; }
                rhat *= (e + 1);
            }
            if (in_D && std::gcd(t, m) == 1)
                S += 4.0L * (long double)rhat / (long double)t;
            while (t == next_T) {
                long double slope = (S - prevS) / logl(10.0L);
                std::printf("  T = %7lld   sum = %12.6Lf   decade slope / C_m = %.4Lf\n",
                            (long long)t, S,
                            prevS == 0 ? 0.0L
                                       : slope / (C1 * (m == 1 ? 1.0L
                                                               : (m == 5 ? 16.0L / 25.0L
                                                                         : 144.0L / 169.0L))));
                prevS = S;
                next_T *= 10;
            }
        }
    }
    return 0;
}
