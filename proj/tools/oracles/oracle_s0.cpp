// =============================================================================
// oracle_s0.cpp
//
// The generic Euler factor reduces to the quadruple geometric series
//
//   S0^eps(z) = sum_{nu in N^4} eps^(nu1+..+nu4) * z^m(nu),
//   m(nu)     = max_{i<j} (nu_i + nu_j)     (sum of the two largest parts),
//
// with eps = +1 or -1.  Claimed closed forms:
//
//   S0^-(z) = (1-z)^2 / ((1+z)^2 (1+z^2))
//   S0^+(z) = (1 + 2z + 6z^2 + 2z^3 + z^4) / ((1-z)^4 (1+z)^2)
//
// This oracle brute-sums the series over {0..N}^4 and prints partial sums,
// closed-form values, and gaps for several truncation depths, so the
// convergence-rate bound can be pinned honestly.
// =============================================================================

#include <cstdio>
#include <cmath>
#include <algorithm>

static long double partial(long double z, int eps, int N) {
    // group by m to sum small terms together: acc[m] = signed count at depth m
    static long double acc[4 * 64 + 1];
    int mcap = 2 * N;
    for (int m = 0; m <= mcap; ++m) acc[m] = 0;
    for (int n1 = 0; n1 <= N; ++n1)
        for (int n2 = 0; n2 <= N; ++n2)
            for (int n3 = 0; n3 <= N; ++n3)
                for (int n4 = 0; n4 <= N; ++n4) {
                    int a = n1, b = n2;   // two largest of the four
                    if (a < b) std::swap(a, b);
                    if (n3 > a) { b = a; a = n3; } else if (n3 > b) b = n3;
                    if (n4 > a) { b = a; a = n4; } else if (n4 > b) b = n4;
                    int m = a + b;
                    int s = (n1 + n2 + n3 + n4) % 2;
                    acc[m] += (eps > 0 || s == 0) ? 1.0L : -1.0L;
                }
    long double sum = 0;
    for (int m = mcap; m >= 0; --m) sum += acc[m] * std::pow(z, (long double)m);
    return sum;
}

static long double closed(long double z, int eps) {
    if (eps < 0) {
        long double n = (1 - z) * (1 - z);
        return n / ((1 + z) * (1 + z) * (1 + z * z));
    }
    long double num = 1 + 2 * z + 6 * z * z + 2 * z * z * z + z * z * z * z;
    long double den = std::pow(1 - z, 4.0L) * (1 + z) * (1 + z);
    return num / den;
}

int main() {
    const long double zs[] = {0.1L, 0.25L, 1.0L / 3.0L, 0.5L};
    for (int eps : {-1, +1}) {
        std::printf("eps = %+d\n", eps);
        for (long double z : zs) {
            long double cf = closed(z, eps);
            std::printf("  z = %.10Lf   closed = %.15Lf\n", z, cf);
            for (int N : {10, 20, 40}) {
                long double ps = partial(z, eps, N);
                long double bound = 2 * std::pow(z, (long double)N)
                                      * std::pow((long double)(N + 1), 4.0L);
                std::printf("    N=%2d  partial = %.15Lf  |gap| = %.3Le  (bound 2 z^N (N+1)^4 = %.3Le)%s\n",
                            N, ps, fabsl(ps - cf), bound,
                            fabsl(ps - cf) <= bound ? "" : "  <-- BOUND VIOLATED");
            }
        }
    }
    // exact rational anchor: S0^-(1/2) = (1/4)/((9/4)(5/4)) = 4/45
    std::printf("S0^-(1/2) closed = %.18Lf,  4/45 = %.18Lf\n",
                closed(0.5L, -1), 4.0L / 45.0L);
    return 0;
}
