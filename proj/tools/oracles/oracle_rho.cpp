// =============================================================================
// oracle_rho.cpp
//
// Brute-force facts about the congruence lattice
//
//   Gamma_D = {(u,v) in Z^2 : D_j | L_j(u,v), j=1..4},
//   L_1=u, L_2=v, L_3=a_3 u + b_3 v, L_4=a_4 u + b_4 v.
//
// For a modulus Q = lcm(D_1..D_4) the lattice is Q-periodic, so
//   index rho(D) = Q^2 / #{(u,v) mod Q : all D_j | L_j}.
//
// Also extracts the upper-triangular (HNF) basis ((h11, h12),(0, h22)) by
// residue scan, and the successive minima s1^2 <= s2^2 by direct enumeration
// in a window, and compares rho against p^(max over pairs of e_i+e_j) for
// prime-power D with p not dividing Delta.
// =============================================================================

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <vector>
#include <random>

using i64 = int64_t;

struct Spec { i64 a3, b3, a4, b4; };

static i64 Lj(const Spec& s, int j, i64 u, i64 v) {
    switch (j) {
        case 1: return u;
        case 2: return v;
        case 3: return s.a3 * u + s.b3 * v;
        default: return s.a4 * u + s.b4 * v;
    }
}

static bool in_gamma(const Spec& s, const i64 D[4], i64 u, i64 v) {
    for (int j = 1; j <= 4; ++j) {
        i64 L = Lj(s, j, u, v);
        if (((L % D[j - 1]) + D[j - 1]) % D[j - 1] != 0) return false;
    }
    return true;
}

static i64 delta_of(const Spec& s) {
    return s.a3 * s.b3 * s.a4 * s.b4 * (s.a3 * s.b4 - s.a4 * s.b3);
}

// returns rho, fills hnf[3] = {h11, h12, h22}, minima2[2] = {s1^2, s2^2}
static i64 analyze(const Spec& s, const i64 D[4], i64 hnf[3], i64 minima2[2]) {
    i64 Q = 1;
    for (int j = 0; j < 4; ++j) Q = std::lcm(Q, D[j]);
    i64 cnt = 0;
    for (i64 u = 0; u < Q; ++u)
        for (i64 v = 0; v < Q; ++v)
            if (in_gamma(s, D, u, v)) ++cnt;
    if (cnt == 0 || (Q * Q) % cnt != 0) { std::printf("  !! bad residue count\n"); std::exit(1); }
    i64 rho = Q * Q / cnt;

    // HNF basis (h11,0), (h12,h22): h22 = min positive v among lattice points,
    // h11 = min positive u with (u,0) in Gamma, h12 = min u>=0 with (u,h22) in Gamma.
    i64 h22 = 0, h11 = 0, h12 = -1;
    for (i64 v = 1; v <= Q && !h22; ++v)
        for (i64 u = 0; u < Q; ++u)
            if (in_gamma(s, D, u, v)) { h22 = v; break; }
    if (!h22) h22 = Q;  // only v=0 rows below Q: cannot happen since (0,Q) in Gamma
    for (i64 u = 1; u <= Q; ++u)
        if (in_gamma(s, D, u, 0)) { h11 = u; break; }
    for (i64 u = 0; u < h11 && h12 < 0; ++u)
        if (in_gamma(s, D, u, h22)) h12 = u;
    hnf[0] = h11; hnf[1] = h12; hnf[2] = h22;
    if (h11 * h22 != rho) std::printf("  !! HNF det %lld != rho %lld\n",
                                      (long long)(h11 * h22), (long long)rho);

    // successive minima by direct window enumeration
    i64 best1 = -1, b1u = 0, b1v = 0;
    for (i64 u = -Q; u <= Q; ++u)
        for (i64 v = -Q; v <= Q; ++v) {
            if (!u && !v) continue;
            if (!in_gamma(s, D, u, v)) continue;
            i64 n2 = u * u + v * v;
            if (best1 < 0 || n2 < best1) { best1 = n2; b1u = u; b1v = v; }
        }
    i64 best2 = -1;
    for (i64 u = -2 * Q; u <= 2 * Q; ++u)
        for (i64 v = -2 * Q; v <= 2 * Q; ++v) {
            if (b1u * v - b1v * u == 0) continue;  // dependent on first minimum
            if (!in_gamma(s, D, u, v)) continue;
            i64 n2 = u * u + v * v;
            if (best2 < 0 || n2 < best2) best2 = n2;
        }
    minima2[0] = best1; minima2[1] = best2;
    return rho;
}

int main() {
    Spec showcase{1, 1, 1, -1}, s1213{1, 2, 1, 3}, s2111{2, 1, 1, 1};
    struct Case { const char* tag; Spec s; i64 D[4]; };
    Case cases[] = {
        {"showcase", showcase, {1, 1, 1, 1}},
        {"showcase", showcase, {3, 1, 1, 1}},
        {"showcase", showcase, {3, 3, 1, 1}},
        {"showcase", showcase, {3, 3, 3, 1}},
        {"showcase", showcase, {3, 3, 3, 3}},
        {"showcase", showcase, {5, 7, 1, 1}},
        {"showcase", showcase, {1, 1, 5, 1}},
        {"showcase", showcase, {9, 1, 1, 1}},
        {"showcase", showcase, {9, 3, 1, 1}},
        {"showcase", showcase, {5, 5, 1, 1}},
        {"showcase", showcase, {25, 5, 1, 1}},
        {"showcase", showcase, {2, 2, 1, 1}},   // p=2 | Delta
        {"showcase", showcase, {2, 2, 2, 2}},
        {"showcase", showcase, {4, 2, 2, 1}},
        {"(1,2,1,3)", s1213,   {3, 1, 1, 1}},   // 3 | Delta here
        {"(1,2,1,3)", s1213,   {3, 3, 1, 1}},
        {"(1,2,1,3)", s1213,   {1, 3, 3, 1}},
        {"(1,2,1,3)", s1213,   {3, 1, 1, 3}},
        {"(1,2,1,3)", s1213,   {9, 1, 1, 3}},
        {"(1,2,1,3)", s1213,   {2, 2, 1, 1}},
        {"(1,2,1,3)", s1213,   {1, 2, 1, 2}},
        {"(2,1,1,1)", s2111,   {2, 1, 1, 1}},
        {"(2,1,1,1)", s2111,   {2, 2, 2, 2}},
        {"(1,1,4,-1)", {1,1,4,-1}, {5, 1, 1, 5}},
        {"(1,1,4,-1)", {1,1,4,-1}, {5, 1, 5, 1}},
    };
    std::printf("%-11s %-16s %8s   HNF ((h11,h12),(0,h22))   s1^2 s2^2\n",
                "surface", "D", "rho");
    for (const Case& c : cases) {
        i64 hnf[3], m2[2];
        i64 rho = analyze(c.s, c.D, hnf, m2);
        std::printf("%-11s (%2lld,%2lld,%2lld,%2lld) %8lld   ((%lld,%lld),(0,%lld))   %lld %lld\n",
                    c.tag, (long long)c.D[0], (long long)c.D[1], (long long)c.D[2],
                    (long long)c.D[3], (long long)rho,
                    (long long)hnf[0], (long long)hnf[1], (long long)hnf[2],
                    (long long)m2[0], (long long)m2[1]);
    }

    // ---- random check of rho(p^e) = p^(max_{i<j}(e_i+e_j)) for p not | Delta
    std::mt19937_64 rng(20260815);
    int ok = 0, tested = 0, skipped = 0;
    for (int iter = 0; iter < 400 && tested < 100; ++iter) {
        Spec s{(i64)(rng() % 7) - 3, (i64)(rng() % 7) - 3,
               (i64)(rng() % 7) - 3, (i64)(rng() % 7) - 3};
        if (!s.a3 && !s.b3) continue;
        if (!s.a4 && !s.b4) continue;
        if (std::gcd(s.a3, s.b3) != 1 || std::gcd(s.a4, s.b4) != 1) continue;
        i64 Delta = delta_of(s);
        if (Delta == 0) continue;
        i64 p = std::vector<i64>{3, 5, 7}[rng() % 3];
        if (Delta % p == 0) { ++skipped; continue; }
        int e[4];
        i64 D[4];
        for (int j = 0; j < 4; ++j) { e[j] = (int)(rng() % 3); D[j] = 1; for (int k = 0; k < e[j]; ++k) D[j] *= p; }
        if (D[0] * D[1] > 700 || std::lcm(std::lcm(D[0], D[1]), std::lcm(D[2], D[3])) > 50) continue;
        int emax = 0;
        for (int i = 0; i < 4; ++i) for (int j = i + 1; j < 4; ++j) emax = std::max(emax, e[i] + e[j]);
        i64 expect = 1; for (int k = 0; k < emax; ++k) expect *= p;
        i64 hnf[3], m2[2];
        i64 rho = analyze(s, D, hnf, m2);
        ++tested;
        if (rho == expect) ++ok;
        else std::printf("MISMATCH (%lld,%lld,%lld,%lld) p=%lld e=(%d,%d,%d,%d): rho=%lld expect=%lld\n",
                         (long long)s.a3, (long long)s.b3, (long long)s.a4, (long long)s.b4,
                         (long long)p, e[0], e[1], e[2], e[3], (long long)rho, (long long)expect);
    }
    std::printf("\nrandom p-not-dividing-Delta check: %d/%d agree with p^max(e_i+e_j)\n", ok, tested);
    return ok == tested ? 0 : 1;
}
