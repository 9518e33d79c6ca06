// ---------------------------------------------------------------------------
// Acceptance gate: nine end-to-end checks, one [OK]/[FAIL] line each, exit
// status = number of failures.
//
// Tolerances are pinned here, not computed:
//   * the Moebius identity and the volume partition are exact (integers /
//     rationals);
//   * the truncated 4-fold series is held to 1e-12 for z <= 1/3 and to
//     max(2 z^40 41^4, 1e-12) above (the raw series truncated at N = 40
//     genuinely sits ~1e-10 from the closed form at z = 1/2: the omitted
//     terms are sum_{m > N} c_m z^m with c_m < 2(m+1)^3, so the first
//     neglected shell already dominates 1e-12);
//   * series-vs-oracle local densities are held to 1e-9 at the deepest
//     oracle level under the 1e5 modulus cap (n = 10 for p = 3, n = 7 for
//     p = 5), where the oracle's own distance to the limit is ~1e-10;
//   * the C_m slope is held to 5% over T in 1e4..1e7;
//   * the fit ratio sequence is diagnostic: positive, finite, successive
//     |ratio - 1| nonincreasing or within ten percentage points of each
//     other; the values themselves are printed, not banded.
// ---------------------------------------------------------------------------

#include "chatelet/densities.hpp"
#include "chatelet/lattice.hpp"
#include "chatelet/points.hpp"
#include "chatelet/sums.hpp"
#include "chatelet/surface.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <vector>

using namespace chatelet;

static int failures = 0;

static void report(int crit, bool ok, const char* fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    char detail[512];
    vsnprintf(detail, sizeof detail, fmt, ap);
    va_end(ap);
    printf("[%s] criterion %d: %s\n", ok ? "OK" : "FAIL", crit, detail);
    if (!ok) ++failures;
}

static double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// --- 1: exact Moebius identity ---------------------------------------------

static void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<i64> bounds;
    for (i64 B = 1; B <= 200; ++B) bounds.push_back(B);
    bounds.push_back(1000);
    bounds.push_back(10000);
    i64 checked = 0, bad = 0;
    for (auto s : {validate(1, 1, 1, -1), validate(1, 2, 1, 3), validate(2, 1, 1, 1)})
        for (i64 B : bounds) {
            ++checked;
            if (moebius_count(s, B) != count_points(s, B).first) ++bad;
        }
    // the hand anchors
    SurfaceSpec s = validate(1, 1, 1, -1);
    bool anchors = count_points(s, 24).first == 0 && count_points(s, 25).first == 16 &&
                   moebius_count(s, 24) == 0 && moebius_count(s, 25) == 16;
    double el = seconds_since(t0);
    report(1, bad == 0 && anchors && el < 300.0,
           "Moebius = direct on %lld bounds x 3 surfaces, %lld mismatches, "
           "N(24)=0/N(25)=16 anchors %s, %.1fs",
           (long long)(checked / 3), (long long)bad, anchors ? "hold" : "BROKEN", el);
}

// --- 2: geometric series closed forms ---------------------------------------

static void criterion_2() {
    const int N = 40;
    long double worst = 0.0L;
    bool ok = true;
    for (long double z : {0.1L, 0.25L, 1.0L / 3.0L, 0.5L})
        for (int eps : {-1, +1}) {
            long double diff = fabsl(s0_closed(eps, z) - s0_truncated(eps, z, N));
            long double tol = 1e-12L;
            if (z > 1.0L / 3.0L + 1e-9L)
                tol = std::max(tol, 2.0L * powl(z, N) * powl(N + 1, 4));
            worst = std::max(worst, diff);
            ok = ok && diff <= tol;
        }
    bool exact = s0_closed_exact(-1, Rat(1, 2)) == Rat(4, 45);
    report(2, ok && exact,
           "closed forms vs N=40 truncations (worst |diff| %.2Le), "
           "S0^-(1/2) = 4/45 %s",
           worst, exact ? "exactly" : "BROKEN");
}

// --- 3: lattice determinants ------------------------------------------------

static void criterion_3() {
    i64 formula_bad = 0, oracle_bad = 0, bound_bad = 0, tested = 0;
    // exhaustive generic prime powers, exponents <= 2
    for (auto s : {validate(1, 1, 1, -1), validate(1, 2, 1, 3), validate(2, 1, 1, 1)})
        for (i64 p : {3, 5, 7, 11, 13}) {
            if (s.divides_Delta(p)) continue;
            for (int e1 = 0; e1 <= 2; ++e1)
                for (int e2 = 0; e2 <= 2; ++e2)
                    for (int e3 = 0; e3 <= 2; ++e3)
                        for (int e4 = 0; e4 <= 2; ++e4) {
                            int es[4] = {e1, e2, e3, e4}, best = 0;
                            for (int j = 0; j < 4; ++j)
                                for (int k = j + 1; k < 4; ++k)
                                    best = std::max(best, es[j] + es[k]);
                            DArray D = {0, ipow(p, e1), ipow(p, e2),
                                        ipow(p, e3), ipow(p, e4)};
                            Int want = 1;
                            for (int i = 0; i < best; ++i) want *= p;
                            if (rho(s, D) != want) ++formula_bad;
                        }
        }
    // residue-counting oracle on random small D, plus the minima bounds
    std::mt19937_64 rng(314159);
    std::uniform_int_distribution<i64> d(1, 8);
    SurfaceSpec s = validate(1, 2, 1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        DArray D = {0, d(rng), d(rng), d(rng), d(rng)};
        i64 M = 1;
        for (int j = 1; j <= 4; ++j) M = std::lcm(M, (i64)D[j]);
        i64 sols = 0;
        for (i64 u = 0; u < M; ++u)
            for (i64 v = 0; v < M; ++v) {
                bool all = true;
                for (int j = 1; j <= 4 && all; ++j)
                    all = s.L(j, u, v) % (i64)D[j] == 0;
                sols += all;
            }
        Int r = rho(s, D);
        if (r * sols != Int(M) * M) ++oracle_bad;
        Minima m = reduce_basis(gamma_basis(s, D));
        ++tested;
        if (3 * m.s1_sq * m.s2_sq > 4 * r * r) ++bound_bad;
        Int lo = std::min((i64)D[1], (i64)D[2]);
        if (m.s1_sq < lo * lo) ++bound_bad;
    }
    report(3, formula_bad == 0 && oracle_bad == 0 && bound_bad == 0,
           "pair-sum exponent formula exact (%lld bad), oracle M^2/#sols on "
           "%lld random D (%lld bad), Hermite + first-minimum bounds (%lld bad)",
           (long long)formula_bad, (long long)tested, (long long)oracle_bad,
           (long long)bound_bad);
}

// --- 4: local densities ------------------------------------------------------

static void criterion_4() {
    SurfaceSpec s = validate(1, 2, 1, 3);
    long double worst = 0.0L;
    i64 pairs = 0;
    for (auto [p, n] : {std::pair<i64, int>{3, 10}, {5, 7}}) {
        for (int lm = 0; lm < 16; ++lm)
            for (int mm = 0; mm < 16; ++mm) {
                if ((lm & mm) != lm) continue;  // need v_p(D) >= v_p(d)
                std::array<i64, 5> d{0, 1, 1, 1, 1}, D{0, 1, 1, 1, 1};
                for (int j = 0; j < 4; ++j) {
                    if (lm >> j & 1) d[(size_t)j + 1] = p;
                    if (mm >> j & 1) D[(size_t)j + 1] = p;
                }
                LocalDensity ld = sigma_p_series(s, p, d, D);
                Rat o = sigma_p_oracle(s, p, d, D, n);
                long double diff = fabsl(ld.value - o.convert_to<long double>());
                worst = std::max(worst, diff);
                ++pairs;
            }
    }
    bool sweep_ok = worst < 1e-9L;

    SurfaceSpec sc = validate(1, 1, 1, -1);
    bool closed_ok = sigma_p_closed(sc, 3) == Rat(32, 45) &&
                     sigma_p_closed(sc, 5) == Rat(259, 225);

    bool dyadic_ok = true;
    Sigma2Result triv = sigma_2(sc, {0, 1, 1, 1, 1});
    dyadic_ok = dyadic_ok && triv.level <= 10 && triv.value == Rat(3, 4);
    for (const auto& m : build_sigma(sc)) {
        Sigma2Result r2 = sigma_2(sc, m.m);
        dyadic_ok = dyadic_ok && r2.level <= 10;
    }
    report(4, sweep_ok && closed_ok && dyadic_ok,
           "series vs oracle on %lld (d,D) patterns, worst |diff| %.2Le "
           "(tol 1e-9); sigma_3 = 32/45, sigma_5 = 259/225 %s; sigma_2 "
           "levels <= 10 %s",
           (long long)pairs, worst, closed_ok ? "exact" : "BROKEN",
           dyadic_ok ? "hold" : "BROKEN");
}

// --- 5: Brauer layer ----------------------------------------------------------

static void criterion_5() {
    SurfaceSpec s = validate(1, 1, 1, -1);
    auto recs = enumerate_points(s, 2000);
    std::vector<const PointRecord*> nondeg;
    for (const auto& r : recs)
        if (!r.degenerate) nondeg.push_back(&r);

    std::mt19937_64 rng(271828);
    i64 bad_sum = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& rec = *nondeg[rng() % nondeg.size()];
        int j = 1 + (int)(rng() % 4), k = 1 + (int)(rng() % 4);
        if (j == k) {
            --trial;
            continue;
        }
        BrauerEval ev = brauer_color(s, rec.point, j, k);
        Rat total = 0;
        for (auto& [place, inv] : ev.local) total += inv;
        if (denominator(total) != 1) ++bad_sum;
    }

    std::set<Component> black_comp, all_comp;
    i64 black = 0;
    for (const auto* r : nondeg) {
        all_comp.insert(r->real_component);
        if (r->figure_color == Color::black) {
            ++black;
            black_comp.insert(r->real_component);
        }
    }
    bool figure = black > 0 && black_comp.size() == 1 && all_comp.size() == 2;
    report(5, bad_sum == 0 && figure,
           "sum of local invariants integral on 1000 samples (%lld bad); "
           "B=2000: %lld black points, all on one of the two real components: %s",
           (long long)bad_sum, (long long)black, figure ? "yes" : "NO");
}

// --- 6: C_m slope --------------------------------------------------------------

static void criterion_6() {
    std::vector<i64> Ts = {10000, 100000, 1000000, 10000000};
    double worst_rel = 0;
    for (i64 m : {1, 5, 13}) {
        auto ys = r_over_t_partial_multi(Ts, m);
        double xb = 0, yb = 0;
        std::vector<double> xs(Ts.size());
        for (size_t i = 0; i < Ts.size(); ++i) {
            xs[i] = std::log((double)Ts[i]);
            xb += xs[i];
            yb += ys[i];
        }
        xb /= (double)Ts.size();
        yb /= (double)Ts.size();
        double num = 0, den = 0;
        for (size_t i = 0; i < Ts.size(); ++i) {
            num += (xs[i] - xb) * (ys[i] - yb);
            den += (xs[i] - xb) * (xs[i] - xb);
        }
        double slope = num / den;
        double C = C_m_constant(m);
        worst_rel = std::max(worst_rel, std::abs(slope - C) / C);
    }
    report(6, worst_rel < 0.05,
           "least-squares slope of sum r(t)/t vs log T within %.4f%% of C_m "
           "for m in {1,5,13} (tol 5%%)",
           100 * worst_rel);
}

// --- 7: volume partition --------------------------------------------------------

static void criterion_7() {
    std::mt19937_64 rng(20260815);
    std::uniform_int_distribution<i64> coeff(-6, 6);
    int done = 0;
    i64 bad = 0;
    while (done < 20) {
        SurfaceSpec s;
        try {
            s = validate(coeff(rng), coeff(rng), coeff(rng), coeff(rng));
        } catch (const Error&) {
            continue;
        }
        ++done;
        auto sigma = build_sigma(s);
        Rat total = 0;
        for (const auto& m : sigma) total += region_polygon(s, m).area;
        // #Sigma/8 sign patterns land in each class: the partition carries
        // that multiplicity against the raw positive-product area
        if (total != positive_product_area(s) * Rat((i64)sigma.size(), 8)) ++bad;
    }
    report(7, bad == 0,
           "sum of region volumes = (#Sigma/8) x positive-product area, "
           "exactly, on 20 random surfaces (%lld bad)",
           (long long)bad);
}

// --- 8: error-exponent bookkeeping ----------------------------------------------

static void criterion_8() {
    long double e = eta();
    long double diff = fabsl((1.0L - e / 3.0L) - 0.97131L);
    report(8, diff < 1e-4L, "1 - eta/3 = %.6Lf, |diff to 0.97131| = %.2Le (tol 1e-4)",
           1.0L - e / 3.0L, diff);
}

// --- 9: empirical fit (diagnostic) ----------------------------------------------

static void criterion_9() {
    SurfaceSpec s = validate(1, 1, 1, -1);
    auto rows = fit_empirical(s, {10000, 100000, 1000000});
    bool ok = true;
    for (const auto& r : rows)
        ok = ok && r.ratio > 0 && std::isfinite((double)r.ratio);
    for (size_t i = 1; i < rows.size() && ok; ++i) {
        long double prev = fabsl(rows[i - 1].ratio - 1.0L);
        long double cur = fabsl(rows[i].ratio - 1.0L);
        ok = cur <= prev || fabsl(cur - prev) <= 0.10L;
    }
    report(9, ok, "N(B)/(c f(B)) = %.4Lf, %.4Lf, %.4Lf at B = 1e4, 1e5, 1e6 "
           "(reported; positive/finite/stable asserted)",
           rows[0].ratio, rows[1].ratio, rows[2].ratio);
}

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    printf("%d/9 criteria passed in %.1fs\n", 9 - failures, seconds_since(t0));
    return failures;
}
