// ---------------------------------------------------------------------------
// densities: the local factors of the class constants
//
// Every class constant is a product
//
//     c_{d,D,R} = omega_inf * sigma_2 * prod_{p odd} sigma_p(d, D),
//
// where (for odd p)
//
//     sigma_p(d,D) = lim_n p^{-6n - sum_j v_p(d_j)} N_{d,D}(p^n),
//
// N_{d,D}(p^n) = #{(u,v,s,t) mod p^n : L_j(u,v) = d_j (s_j^2 + t_j^2),
// D_j | L_j(u,v)}, and sigma_2 is the analogous dyadic count with the
// lattice condition dropped and 2 ndivides gcd(u,v) demanded instead.
//
// Three independent evaluations of sigma_p coexist here:
//
//   * sigma_p_closed  - the generic Euler factor for p ndivides Delta and
//                       trivial (d, D), as an exact rational;
//   * sigma_p_series  - the lattice-determinant series.  Fubini in the
//                       (s,t)-variables turns N/p^{6n} into a sum over the
//                       valuation vector nu of L at (u,v): each (u,v) with
//                       v_p(L_j) >= n_j lies in the congruence lattice
//                       Gamma(p^{n_j}) of density 1/rho, and the classical
//                       two-square counts telescope into
//                         sigma_p = (1-chi(p)/p)^4 sum_nu chi(p)^{|nu|}
//                                     / rho(p^{max(mu_j, lambda_j+nu_j)}).
//                       Terms are bucketed by the exponent of p in rho and
//                       summed exactly (one Horner pass), so the only error
//                       is the explicitly bounded box truncation;
//   * sigma_p_oracle  - the definition itself at a finite level n, exact.
//
// The series needs rho for prime-power moduli like p^40, far beyond any
// sane basis computation, so it uses a closed exponent formula (largest
// single exponent vs. largest pairwise sum, discounted by v_p(Delta_{jk}))
// that is verified once per (surface, p) against the exact HNF determinant
// on a box of small exponents.  A failed verification demotes the series
// to the oracle, labelled "brute_force" -- the value stays honest either
// way.
// ---------------------------------------------------------------------------

#include "chatelet/densities.hpp"

#include "chatelet/gaussian.hpp"
#include "chatelet/lattice.hpp"
#include "chatelet/points.hpp"
#include "chatelet/sieve.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace chatelet {

namespace {

i64 iabs(i64 x) { return x < 0 ? -x : x; }

long double rat_ld(const Rat& r) { return r.template convert_to<long double>(); }

// nonnegative __int128 -> cpp_int without relying on a native conversion
Int int128_to_Int(i128 x) {
    Int hi = (std::uint64_t)(x >> 64);
    hi <<= 64;
    return hi + (std::uint64_t)x;
}

std::string rat_str(const Rat& r) {
    std::ostringstream o;
    o << r;
    return o.str();
}

// ---------------------------------------------------------------------------
// counting s^2 + t^2 = A mod p^m (odd p)
//
// With R(A) = #{(s,t) mod p^m : s^2 + t^2 = A} and alpha = v_p(A) (alpha = m
// meaning p^m | A), the classical counts are
//
//   p = 1 mod 4:  alpha < m:  (alpha+1)(p-1) p^{m-1}
//                 alpha = m:  p^{m-1} (m(p-1) + p)
//   p = 3 mod 4:  alpha < m:  (p+1) p^{m-1} if alpha is even, else 0
//                 alpha = m:  p^{2 floor(m/2)}
//
// (split: the norm form has p-1 unit solutions per represented class and
// every class with alpha < m splits alpha+1 ways; inert: the form is
// anisotropic, so only even valuations are represented).  Sanity:
// sum_A R(A) = p^{2m} in all cases.
// ---------------------------------------------------------------------------

i64 two_square_count(i64 p, int m, int alpha) {
    if (m == 0) return 1;
    if (p % 4 == 1) {
        if (alpha < m) return (i64)(alpha + 1) * (p - 1) * ipow(p, m - 1);
        return ipow(p, m - 1) * ((i64)m * (p - 1) + p);
    }
    if (alpha < m) return (alpha % 2 == 0) ? (p + 1) * ipow(p, m - 1) : 0;
    return ipow(p, 2 * (m / 2));
}

// ---------------------------------------------------------------------------
// the rho exponent formula and its per-(surface, p) verification
// ---------------------------------------------------------------------------

// v_p(det Gamma) for the modulus vector p^{n_j}: a single condition costs
// n_j, a pair (j,k) costs n_j + n_k minus the overlap v_p(Delta_{jk})
// (capped by both exponents: once one form is pinned the other is
// determined up to the resultant), and no triple beats its best pair.
int rho_exponent(const std::array<int, 5>& n, const int cjk[5][5]) {
    int best = 0;
    for (int j = 1; j <= 4; ++j) best = std::max(best, n[(size_t)j]);
    for (int j = 1; j <= 4; ++j)
        for (int k = j + 1; k <= 4; ++k) {
            int cap = std::min(cjk[j][k], std::min(n[(size_t)j], n[(size_t)k]));
            best = std::max(best, n[(size_t)j] + n[(size_t)k] - cap);
        }
    return best;
}

void fill_cjk(const SurfaceSpec& spec, i64 p, int cjk[5][5]) {
    for (int j = 1; j <= 4; ++j)
        for (int k = j + 1; k <= 4; ++k)
            cjk[j][k] = valuation(iabs(spec.delta[j][k]), p);
}

// compare the formula against the exact HNF determinant on the box of
// exponents {0,1,2}^4 (skipping entries whose modulus would overflow);
// memoized per (surface, p)
bool rho_formula_verified(const SurfaceSpec& spec, i64 p) {
    static std::map<std::array<i64, 5>, bool> memo;
    static std::mutex mtx;
    std::array<i64, 5> key{spec.a[3], spec.b[3], spec.a[4], spec.b[4], p};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    int cjk[5][5] = {};
    fill_cjk(spec, p, cjk);
    int emax = (p <= 1000000) ? 2 : 1;  // p^2 must stay well inside i64
    bool ok = true;
    std::array<int, 5> e{};
    for (e[1] = 0; e[1] <= emax && ok; ++e[1])
        for (e[2] = 0; e[2] <= emax && ok; ++e[2])
            for (e[3] = 0; e[3] <= emax && ok; ++e[3])
                for (e[4] = 0; e[4] <= emax && ok; ++e[4]) {
                    DArray D;
                    for (int j = 1; j <= 4; ++j)
                        D[(size_t)j] = boost::multiprecision::pow(Int(p), (unsigned)e[(size_t)j]);
                    Int want = rho(spec, D);
                    Int got = boost::multiprecision::pow(Int(p), (unsigned)rho_exponent(e, cjk));
                    if (want != got) ok = false;
                }
    std::lock_guard<std::mutex> lock(mtx);
    memo[key] = ok;
    return ok;
}

// ---------------------------------------------------------------------------
// generic Euler factors and blocked products
// ---------------------------------------------------------------------------

long double generic_factor_ld(i64 p) {
    long double z = 1.0L / (long double)p;
    if (p % 4 == 1) {
        long double num = 1 + z * (2 + z * (6 + z * (2 + z)));
        long double den = (1 + z) * (1 + z);
        return num / den;
    }
    long double num = (1 - z * z) * (1 - z * z);
    return num / (1 + z * z);
}

// product of the generic factor over odd primes lo <= p <= P0 outside
// `skip` (sorted).  The prime range is cut into 64 fixed contiguous blocks
// whose partial products are multiplied in ascending order, so the result
// is bit-identical for every thread count.
long double generic_product_range(i64 lo, i64 P0, const std::vector<i64>& skip,
                                  int threads) {
    const std::vector<int32_t>& primes = (P0 <= sieve::SPF_LIMIT)
                                             ? sieve::prime_list()
                                             : sieve::prime_list_large();
    size_t first = (size_t)(std::lower_bound(primes.begin(), primes.end(), (int32_t)lo) -
                            primes.begin());
    size_t last = (size_t)(std::upper_bound(primes.begin(), primes.end(), (int32_t)P0) -
                           primes.begin());
    constexpr size_t NBLOCK = 64;
    std::array<long double, NBLOCK> block;
    block.fill(1.0L);
    size_t total = last - first;
    auto run_block = [&](size_t bi) {
        size_t b0 = first + total * bi / NBLOCK;
        size_t b1 = first + total * (bi + 1) / NBLOCK;
        long double prod = 1.0L;
        for (size_t i = b0; i < b1; ++i) {
            i64 p = primes[i];
            if (p == 2) continue;
            if (std::binary_search(skip.begin(), skip.end(), p)) continue;
            prod *= generic_factor_ld(p);
        }
        block[bi] = prod;
    };
    if (threads > 1 && total > 2048) {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        int nt = std::min<int>(threads, NBLOCK);
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (size_t bi; (bi = next.fetch_add(1)) < NBLOCK;) run_block(bi);
            });
        for (auto& th : pool) th.join();
    } else {
        for (size_t bi = 0; bi < NBLOCK; ++bi) run_block(bi);
    }
    long double prod = 1.0L;
    for (size_t bi = 0; bi < NBLOCK; ++bi) prod *= block[bi];
    return prod;
}

// truncation of the nu-box: every dropped term has denominator exponent
// > nu_max, and there are at most 4(k+1)^3 vectors whose largest entry is
// k, so the tail is below (1+1/p)^4 * 8 (nu_max+2)^3 p^{-(nu_max+1)}
long double series_tail_bound(i64 p, int nu_max) {
    long double q = (p + 1.0L) / (long double)p;
    long double s = (long double)(nu_max + 2);
    return q * q * q * q * 8.0L * s * s * s * powl((long double)p, -(long double)(nu_max + 1));
}

// smallest box making the tail negligible next to the Euler-product tail
int auto_nu_max(i64 p) {
    for (int nu = 6; nu < 80; ++nu)
        if (series_tail_bound(p, nu) <= 1e-12L) return nu;
    return 80;
}

void check_odd_prime(i64 p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw DomainError("sigma_p needs an odd prime (p = 2 is sigma_2)");
}

std::array<int, 5> valuations_of(const std::array<i64, 5>& x, i64 p,
                                 const char* what) {
    std::array<int, 5> v{};
    for (int j = 1; j <= 4; ++j) {
        if (x[(size_t)j] == 0) throw DomainError(std::string("zero ") + what + " entry");
        v[(size_t)j] = valuation(iabs(x[(size_t)j]), p);
    }
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// sigma_p_closed
// ---------------------------------------------------------------------------

Rat sigma_p_closed(const SurfaceSpec& spec, i64 p) {
    check_odd_prime(p);
    if (spec.divides_Delta(p))
        throw DomainError("closed Euler factor needs p ndivides Delta");
    Rat z(1, p);
    if (p % 4 == 1) {
        Rat num = 1 + 2 * z + 6 * z * z + 2 * z * z * z + z * z * z * z;
        return num / ((1 + z) * (1 + z));
    }
    Rat num = (1 - z * z) * (1 - z * z);
    return num / (1 + z * z);
}

// ---------------------------------------------------------------------------
// sigma_p_series
// ---------------------------------------------------------------------------

namespace {

// oracle evaluation at the deepest affordable level, used only if the
// exponent formula failed its verification for this (surface, p)
LocalDensity sigma_p_bruteforce(const SurfaceSpec& spec, i64 p,
                                const std::array<i64, 5>& d,
                                const std::array<i64, 5>& D) {
    std::array<int, 5> mu = valuations_of(D, p, "D");
    int mumax = *std::max_element(mu.begin() + 1, mu.end());
    int n = 0;
    i64 pn = 1;
    while (pn <= 100000 / p) {
        pn *= p;
        ++n;
    }
    if (n < mumax + 1)
        throw ResourceError("brute-force sigma_p cannot reach the D-level");
    Rat vn = sigma_p_oracle(spec, p, d, D, n);
    Rat vp = sigma_p_oracle(spec, p, d, D, n - 1);
    LocalDensity out;
    out.p = p;
    out.exact = vn;
    out.has_exact = true;
    out.value = rat_ld(vn);
    out.method = "brute_force";
    // the level-n error contracts by about 1/p per level; double for safety
    out.tail_bound = 2.0L * fabsl(rat_ld(vn - vp)) / (long double)(p - 1) +
                     8.0L * powl((long double)p, -(long double)n);
    return out;
}

}  // namespace

LocalDensity sigma_p_series(const SurfaceSpec& spec, i64 p,
                            const std::array<i64, 5>& d,
                            const std::array<i64, 5>& D, int nu_max) {
    check_odd_prime(p);
    if (nu_max < 1 || nu_max > 200) throw DomainError("nu_max out of range");
    std::array<int, 5> lam = valuations_of(d, p, "d");
    std::array<int, 5> mu = valuations_of(D, p, "D");

    static std::map<std::array<i64, 14>, LocalDensity> memo;
    static std::mutex mtx;
    std::array<i64, 14> key{spec.a[3], spec.b[3], spec.a[4], spec.b[4], p,
                            lam[1],    lam[2],    lam[3],    lam[4],    mu[1],
                            mu[2],     mu[3],     mu[4],     nu_max};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    LocalDensity out;
    if (!rho_formula_verified(spec, p)) {
        out = sigma_p_bruteforce(spec, p, d, D);
    } else {
        int cjk[5][5] = {};
        fill_cjk(spec, p, cjk);
        int chi_p = chi(p);

        // bucket chi^{|nu|} by the exponent of p in rho
        std::array<int, 5> ntop{};
        for (int j = 1; j <= 4; ++j)
            ntop[(size_t)j] = std::max(mu[(size_t)j], lam[(size_t)j] + nu_max);
        std::vector<i64> coef((size_t)rho_exponent(ntop, cjk) + 1, 0);
        std::array<int, 5> n{};
        for (int n1 = 0; n1 <= nu_max; ++n1)
            for (int n2 = 0; n2 <= nu_max; ++n2)
                for (int n3 = 0; n3 <= nu_max; ++n3)
                    for (int n4 = 0; n4 <= nu_max; ++n4) {
                        n[1] = std::max(mu[1], lam[1] + n1);
                        n[2] = std::max(mu[2], lam[2] + n2);
                        n[3] = std::max(mu[3], lam[3] + n3);
                        n[4] = std::max(mu[4], lam[4] + n4);
                        int s = (chi_p == 1 || (n1 + n2 + n3 + n4) % 2 == 0) ? 1 : -1;
                        coef[(size_t)rho_exponent(n, cjk)] += s;
                    }
        // exact value of sum coef[g] p^{-g}: one Horner pass
        Int num = 0;
        for (i64 c : coef) num = num * p + c;
        Rat val(num, boost::multiprecision::pow(Int(p), (unsigned)(coef.size() - 1)));
        val *= Rat(boost::multiprecision::pow(Int(p - chi_p), 4),
                   boost::multiprecision::pow(Int(p), 4));
        out.exact = val;
        out.has_exact = true;
        out.value = rat_ld(val);
        out.method = "series";
        out.tail_bound = series_tail_bound(p, nu_max);
    }
    out.p = p;
    std::lock_guard<std::mutex> lock(mtx);
    memo[key] = out;
    return out;
}

// ---------------------------------------------------------------------------
// sigma_p_oracle
//
// N_{d,D}(p^n) as one scan over u and a subdivision tree over v: the node
// (k, v0) stands for the class v = v0 mod p^k.  A form j is "resolved" on
// the class when v_p(L_j) is constant there -- either the current value
// sits below the variation exponent v_p(b_j) + k, or the variation
// vanishes mod p^n.  Resolved forms contribute their (s,t) count
//
//   W_j(val) = [val >= max(mu_j, lambda_j)] p^{2 lambda_j}
//              R_{n - lambda_j}(min(val, n) - lambda_j)
//
// and a node with no active forms closes with the p^{n-k} class members.
// Each level resolves every form on all but O(1) children, so the tree has
// O(n p) nodes per u instead of p^n.
// ---------------------------------------------------------------------------

Rat sigma_p_oracle(const SurfaceSpec& spec, i64 p, const std::array<i64, 5>& d,
                   const std::array<i64, 5>& D, int n) {
    check_odd_prime(p);
    if (n < 1) throw DomainError("oracle level must be >= 1");
    i64 pn = 1;
    for (int i = 0; i < n; ++i) {
        if (pn > 100000 / p) throw ResourceError("p^n above the 10^5 scan cap");
        pn *= p;
    }
    std::array<int, 5> lamT = valuations_of(d, p, "d");
    std::array<int, 5> mu = valuations_of(D, p, "D");
    i64 lam_sum = 0;
    for (int j = 1; j <= 4; ++j) {
        if (mu[(size_t)j] > n)
            throw DomainError("v_p(D_j) exceeds the level: D_j | L_j is not testable mod p^n");
        lam_sum += lamT[(size_t)j];
    }

    // W tables and per-form variation exponents
    i64 W[5][64];
    int ev[5];
    long double wmax_prod = 1.0L;
    for (int j = 1; j <= 4; ++j) {
        int lam = std::min(lamT[(size_t)j], n);
        int m = n - lam;
        i64 wjmax = 0;
        for (int val = 0; val <= n; ++val) {
            i64 w = 0;
            if (val >= mu[(size_t)j] && val >= lam)
                w = ipow(p, 2 * lam) * two_square_count(p, m, std::min(val - lam, m));
            W[j][val] = w;
            wjmax = std::max(wjmax, w);
        }
        wmax_prod *= (long double)wjmax;
        ev[j] = (spec.b[(size_t)j] == 0)
                    ? n
                    : std::min(valuation(iabs(spec.b[(size_t)j]), p), n);
    }
    if (wmax_prod * (long double)pn > 1e37L)
        throw ResourceError("local count exceeds the 128-bit accumulator");

    i64 pk[64];
    pk[0] = 1;
    for (int k = 1; k <= n; ++k) pk[k] = pk[k - 1] * p;

    struct Walker {
        const SurfaceSpec& spec;
        i64 p, pn;
        int n;
        const i64 (*W)[64];
        const int* ev;
        const i64* pk;
        i64 u = 0;

        i128 node(int k, i64 v0, unsigned act, i128 prod) const {
            unsigned rem = act;
            for (int j = 1; j <= 4; ++j) {
                if (!(act & (1u << j))) continue;
                i64 r = (spec.a[(size_t)j] * u + spec.b[(size_t)j] * v0) % pn;
                if (r < 0) r += pn;
                int t = (r == 0) ? n : valuation(r, p);
                int var = std::min(ev[j] + k, n);
                if (t < var || var >= n) {
                    prod *= W[j][std::min(t, n)];
                    if (prod == 0) return 0;
                    rem &= ~(1u << j);
                }
            }
            if (rem == 0) return prod * pk[n - k];
            i128 s = 0;
            for (i64 w = 0; w < p; ++w) s += node(k + 1, v0 + w * pk[k], rem, prod);
            return s;
        }
    };

    Walker walk{spec, p, pn, n, W, ev, pk};
    Int total = 0;
    for (i64 u = 0; u < pn; ++u) {
        walk.u = u;
        i128 su = walk.node(0, 0, 0b11110u, 1);
        if (su) total += int128_to_Int(su);
    }
    return Rat(total,
               boost::multiprecision::pow(Int(p), (unsigned)(6 * n + lam_sum)));
}

// ---------------------------------------------------------------------------
// sigma_2
// ---------------------------------------------------------------------------

namespace {

// 2^{-6n} N_d(2^n) at one level: R2[A] = #{(s,t) mod 2^n : s^2 + t^2 = A}
// by convolving the square-count table with itself, then a full (u,v) scan
// with 2 ndivides gcd(u,v)
Rat sigma_2_level(const SurfaceSpec& spec, const std::array<i64, 5>& ds, int n) {
    i64 mod = (i64)1 << n;
    i64 mask = mod - 1;
    std::vector<i64> sq((size_t)mod, 0);
    for (i64 s = 0; s < mod; ++s) ++sq[(size_t)((s * s) & mask)];
    std::vector<i64> R2((size_t)mod, 0);
    for (i64 a = 0; a < mod; ++a) {
        i64 acc = 0;
        for (i64 r = 0; r < mod; ++r) acc += sq[(size_t)r] * sq[(size_t)((a - r) & mask)];
        R2[(size_t)a] = acc;
    }
    // d_j^{-1} mod 2^n by Newton iteration (d_j odd)
    i64 dinv[5];
    for (int j = 1; j <= 4; ++j) {
        i64 x = ds[(size_t)j] & mask;
        for (int it = 0; it < 6; ++it) x = (x * (2 - ds[(size_t)j] * x)) & mask;
        dinv[j] = x & mask;
    }
    i128 N = 0;
    for (i64 u = 0; u < mod; ++u) {
        i64 base[5], step[5];
        for (int j = 1; j <= 4; ++j) {
            base[j] = (spec.a[(size_t)j] * u % mod * dinv[j]) & mask;
            step[j] = (spec.b[(size_t)j] * dinv[j]) & mask;
        }
        for (i64 v = 0; v < mod; ++v) {
            if (((u | v) & 1) != 0) {
                i128 t = R2[(size_t)base[1]];
                if (t) t *= R2[(size_t)base[2]];
                if (t) t *= R2[(size_t)base[3]];
                if (t) t *= R2[(size_t)base[4]];
                N += t;
            }
            for (int j = 1; j <= 4; ++j) base[j] = (base[j] + step[j]) & mask;
        }
    }
    return Rat(int128_to_Int(N), Int(1) << (6 * n));
}

}  // namespace

Sigma2Result sigma_2(const SurfaceSpec& spec, const std::array<i64, 5>& d_signed,
                     int n_max) {
    if (n_max < 2 || n_max > 13) throw DomainError("sigma_2 level range is 2..13");
    for (int j = 1; j <= 4; ++j) {
        if (d_signed[(size_t)j] == 0) throw DomainError("zero d entry");
        if (d_signed[(size_t)j] % 2 == 0)
            throw ParityError("sigma_2 needs odd d_j (even parts never occur)");
    }
    static std::map<std::array<i64, 8>, Sigma2Result> memo;
    static std::mutex mtx;
    std::array<i64, 8> key{spec.a[3],   spec.b[3],   spec.a[4],   spec.b[4],
                           d_signed[1], d_signed[2], d_signed[3], d_signed[4]};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    Rat prev = sigma_2_level(spec, d_signed, 1);
    for (int n = 1; n < n_max; ++n) {
        Rat next = sigma_2_level(spec, d_signed, n + 1);
        if (next == prev) {
            Sigma2Result res{prev, n};
            std::lock_guard<std::mutex> lock(mtx);
            memo[key] = res;
            return res;
        }
        prev = next;
    }
    std::ostringstream msg;
    msg << "sigma_2 not stable by n=" << n_max << ": " << sigma_2_level(spec, d_signed, n_max - 1)
        << " then " << prev;
    throw NoStabilization(msg.str());
}

// ---------------------------------------------------------------------------
// omega_inf and the class constant
// ---------------------------------------------------------------------------

long double omega_infty(const SurfaceSpec& spec, const TorsorClass& m) {
    Region reg = region_polygon(spec, m);
    long double pi4 = PI_L * PI_L * PI_L * PI_L;
    return pi4 * rat_ld(reg.area);
}

DensityReport c_class(const SurfaceSpec& spec, const TorsorClass& m,
                      const DVector& dv, i64 P0, int threads) {
    if (P0 < 100) throw DomainError("P0 below the smallest sensible cutoff");
    if (P0 > sieve::PRIME_LIMIT) throw ResourceError("P0 beyond the prime tables");
    DensityReport r;
    r.P0 = P0;
    Region reg = region_polygon(spec, m);
    r.area = reg.area;
    long double pi4 = PI_L * PI_L * PI_L * PI_L;
    r.omega_inf = pi4 * rat_ld(reg.area);
    if (reg.area == 0) return r;  // the class contributes exactly zero

    for (int j = 1; j <= 4; ++j)
        if (iabs(dv.d[(size_t)j]) % 2 == 0 || iabs(dv.D[(size_t)j]) % 2 == 0)
            throw ParityError("even d or D entry: the 2-part belongs to sigma_2");

    std::array<i64, 5> sd{};
    for (int j = 1; j <= 4; ++j)
        sd[(size_t)j] = m.m[(size_t)j] < 0 ? -dv.d[(size_t)j] : dv.d[(size_t)j];
    Sigma2Result s2 = sigma_2(spec, sd);
    r.sigma2 = s2.value;
    r.sigma2_level = s2.level;

    // special primes: odd divisors of Delta or of any d_j, D_j
    std::set<i64> special;
    for (i64 pp : bad_prime_data(spec).S)
        if (pp % 2 == 1) special.insert(pp);
    for (int j = 1; j <= 4; ++j) {
        for (auto& [pp, e] : factorize(dv.d[(size_t)j])) (void)e, special.insert(pp);
        for (auto& [pp, e] : factorize(dv.D[(size_t)j])) (void)e, special.insert(pp);
    }
    special.erase(2);

    // every p <= 13 is listed individually; the rest of the generic primes
    // fold into generic_product
    std::vector<i64> listed(special.begin(), special.end());
    for (i64 pp : {3, 5, 7, 11, 13})
        if (!special.count(pp)) listed.push_back(pp);
    std::sort(listed.begin(), listed.end());

    r.sigma_p.resize(listed.size());
    auto eval_one = [&](size_t i) {
        i64 pp = listed[i];
        if (special.count(pp)) {
            r.sigma_p[i] = sigma_p_series(spec, pp, dv.d, dv.D, auto_nu_max(pp));
        } else {
            LocalDensity ld;
            ld.p = pp;
            ld.exact = sigma_p_closed(spec, pp);
            ld.has_exact = true;
            ld.value = rat_ld(ld.exact);
            ld.method = "closed_form";
            ld.tail_bound = 0.0L;
            r.sigma_p[i] = ld;
        }
    };
    if (threads > 1 && listed.size() > 1) {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        int nt = std::min<int>(threads, (int)listed.size());
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (size_t i; (i = next.fetch_add(1)) < listed.size();) eval_one(i);
            });
        for (auto& th : pool) th.join();
    } else {
        for (size_t i = 0; i < listed.size(); ++i) eval_one(i);
    }

    std::vector<i64> skip = listed;  // sorted
    r.generic_product = generic_product_range(17, P0, skip, threads);

    long double c = r.omega_inf * rat_ld(r.sigma2);
    for (const LocalDensity& ld : r.sigma_p) c *= ld.value;
    c *= r.generic_product;
    r.c_class = c;

    // error estimate: |log sigma_p| <= 8/p^2 for the omitted p > P0
    // (sum_{p>x} p^{-2} < 1.5/(x log x)), plus the per-prime series tails
    long double rel = 12.0L / ((long double)P0 * logl((long double)P0));
    for (const LocalDensity& ld : r.sigma_p)
        if (ld.tail_bound > 0 && fabsl(ld.value) > 1e-30L)
            rel += ld.tail_bound / fabsl(ld.value);
    r.truncation_error = fabsl(c) * expm1l(rel);
    return r;
}

// ---------------------------------------------------------------------------
// the assembled constant
//
//   c = 2^{-8} sum_{m, a, ell, b} mu(a) mu(ell) mu(b) c_{a,b}
//                                 c_{d,D,R_m} / N(cap b_j),
//
// c_{a,b} = C_{N(a)} [gcd(N(cap b), N(a)) = 1], (d, D) = build_dD(m,a,b,ell).
// The odd local product per term is one cached base product (generic
// factors over p <= P0 outside Delta) times exact per-prime corrections at
// the finitely many special primes -- everything downstream of the (m, a,
// ell, b) loop is memoized, so the quadruple loop runs in seconds.
// ---------------------------------------------------------------------------

namespace {

struct OddProductCache {
    const SurfaceSpec& spec;
    i64 P0;
    std::vector<i64> delta_odd;               // odd primes of Delta, sorted
    long double base;                          // generic product outside them
    std::map<i64, long double> closed_memo;    // generic factor at one prime
    std::map<std::array<i64, 8>, long double> full_memo;  // by (d, D)

    OddProductCache(const SurfaceSpec& s, i64 p0, int threads) : spec(s), P0(p0) {
        for (i64 pp : bad_prime_data(spec).S)
            if (pp % 2 == 1) delta_odd.push_back(pp);
        std::sort(delta_odd.begin(), delta_odd.end());
        base = generic_product_range(3, P0, delta_odd, threads);
    }

    long double closed_at(i64 p) {
        auto it = closed_memo.find(p);
        if (it != closed_memo.end()) return it->second;
        long double v = rat_ld(sigma_p_closed(spec, p));
        closed_memo[p] = v;
        return v;
    }

    // prod over odd p of sigma_p(d, D): base x special corrections
    long double value(const std::array<i64, 5>& d, const std::array<i64, 5>& D) {
        std::array<i64, 8> key{d[1], d[2], d[3], d[4], D[1], D[2], D[3], D[4]};
        auto it = full_memo.find(key);
        if (it != full_memo.end()) return it->second;
        std::set<i64> touched(delta_odd.begin(), delta_odd.end());
        for (int j = 1; j <= 4; ++j) {
            for (auto& [pp, e] : factorize(d[(size_t)j])) (void)e, touched.insert(pp);
            for (auto& [pp, e] : factorize(D[(size_t)j])) (void)e, touched.insert(pp);
        }
        touched.erase(2);
        long double v = base;
        for (i64 pp : touched) {
            long double f = sigma_p_series(spec, pp, d, D, auto_nu_max(pp)).value;
            if (std::binary_search(delta_odd.begin(), delta_odd.end(), pp))
                v *= f;  // not in base
            else
                v *= f / closed_at(pp);  // replace the generic factor
        }
        full_memo[key] = v;
        return v;
    }
};

}  // namespace

ConstantReport assemble_constant(const SurfaceSpec& spec, i64 Lmax, i64 Bmax,
                                 i64 P0, int threads) {
    if (Lmax < 1 || Bmax < 1) throw DomainError("truncation ranges must be >= 1");
    ConstantReport rep;
    rep.Lmax = Lmax;
    rep.Bmax = Bmax;
    rep.P0 = P0;

    std::vector<TorsorClass> Sigma = build_sigma(spec);
    std::vector<SigmaPrimeTerm> Sprime = build_sigma_prime(spec);
    std::vector<IdealRep> ideals = squarefree_ideals_up_to(Bmax);
    std::vector<std::pair<i64, int>> ells;  // (ell, mu) odd squarefree
    for (i64 l = 1; l <= Lmax; l += 2)
        if (moebius(l) != 0) ells.push_back({l, moebius(l)});

    OddProductCache odd(spec, P0, threads);
    std::map<i64, double> Cmemo;  // C_{N(a)}
    long double pi4 = PI_L * PI_L * PI_L * PI_L;

    long double total = 0.0L;
    std::map<i64, long double> by_ell;    // signed marginal per ell
    std::map<i64, long double> by_bnorm;  // signed marginal per max N(b_j)
    i64 terms = 0;
    i64 inner = (i64)Sprime.size() * (i64)ells.size() * (i64)ideals.size() *
                (i64)ideals.size() * (i64)ideals.size() * (i64)ideals.size();

    for (const TorsorClass& m : Sigma) {
        Region reg = region_polygon(spec, m);
        if (reg.area == 0) {
            terms += inner;  // every term of this class is exactly zero
            continue;
        }
        long double omega = pi4 * rat_ld(reg.area);
        for (const SigmaPrimeTerm& at : Sprime) {
            double Ca;
            {
                auto it = Cmemo.find(at.norm_product);
                if (it == Cmemo.end()) {
                    Ca = C_m_constant(at.norm_product);
                    Cmemo[at.norm_product] = Ca;
                } else {
                    Ca = it->second;
                }
            }
            for (auto& [ell, mu_ell] : ells) {
                for (const IdealRep& b1 : ideals)
                    for (const IdealRep& b2 : ideals)
                        for (const IdealRep& b3 : ideals)
                            for (const IdealRep& b4 : ideals) {
                                ++terms;
                                i64 nb = ideal_intersection_norm(b1, b2, b3, b4);
                                if (std::gcd(nb, at.norm_product) != 1) continue;
                                DVector dv = build_dD(
                                    m, at, {IdealRep{}, b1, b2, b3, b4}, ell);
                                std::array<i64, 5> sd{};
                                for (int j = 1; j <= 4; ++j)
                                    sd[(size_t)j] = m.m[(size_t)j] < 0
                                                        ? -dv.d[(size_t)j]
                                                        : dv.d[(size_t)j];
                                long double val = omega *
                                                  rat_ld(sigma_2(spec, sd).value) *
                                                  odd.value(dv.d, dv.D);
                                int sign = at.mu * mu_ell * b1.mu * b2.mu *
                                           b3.mu * b4.mu;
                                long double contrib =
                                    (long double)sign * (long double)Ca * val /
                                    (long double)nb;
                                total += contrib;
                                by_ell[ell] += contrib;
                                by_bnorm[std::max(
                                    {b1.norm, b2.norm, b3.norm, b4.norm})] +=
                                    contrib;
                            }
            }
        }
    }
    rep.c = total / 256.0L;
    rep.terms = terms;
    // tail estimate from the observed marginals: if the per-value sums keep
    // the decay of their last computed bucket (~x^{-3/2} per value), the
    // remainders integrate to about 2x times the last bucket.  An estimate,
    // not a proven bound.
    long double tail = 0.0L;
    if (!by_ell.empty())
        tail += 2.0L * (long double)by_ell.rbegin()->first *
                fabsl(by_ell.rbegin()->second);
    if (by_bnorm.size() > 1)  // skip the all-unit bucket
        tail += 2.0L * (long double)by_bnorm.rbegin()->first *
                fabsl(by_bnorm.rbegin()->second);
    rep.tail_bound = tail / 256.0L;
    return rep;
}

// ---------------------------------------------------------------------------
// the fit table, eta, JSON
// ---------------------------------------------------------------------------

std::vector<FitRow> fit_empirical(const SurfaceSpec& spec,
                                  const std::vector<i64>& B_list, i64 Lmax,
                                  i64 Bmax, i64 P0, int threads) {
    ConstantReport cr = assemble_constant(spec, Lmax, Bmax, P0, threads);
    std::vector<FitRow> rows;
    for (i64 B : B_list) {
        if (B < 1) throw DomainError("fit bounds must be >= 1");
        FitRow row;
        row.B = B;
        row.N_nondeg = count_points(spec, B, threads).first;
        long double f = (long double)B * logl((long double)B) - (long double)B + 1.0L;
        row.prediction = cr.c * f;
        row.ratio = (row.prediction > 0) ? (long double)row.N_nondeg / row.prediction
                                         : 0.0L;
        rows.push_back(row);
    }
    return rows;
}

long double eta() {
    // 1 - (1 + log log 2)/log 2 = 0.08607...: the exponent of the power
    // saving in the secondary term
    return 1.0L - (1.0L + logl(logl(2.0L))) / logl(2.0L);
}

std::string density_report_json(const DensityReport& r) {
    nlohmann::ordered_json j;
    j["omega_inf"] = (double)r.omega_inf;
    j["area"] = rat_str(r.area);
    j["sigma2"] = rat_str(r.sigma2);
    j["sigma2_level"] = r.sigma2_level;
    j["sigma_p"] = nlohmann::ordered_json::array();
    for (const LocalDensity& ld : r.sigma_p) {
        nlohmann::ordered_json e;
        e["p"] = ld.p;
        e["value"] = (double)ld.value;
        e["method"] = ld.method;
        if (ld.has_exact)
            e["exact"] = rat_str(ld.exact);
        else
            e["exact"] = nullptr;
        e["tail_bound"] = (double)ld.tail_bound;
        j["sigma_p"].push_back(e);
    }
    j["generic_product"] = (double)r.generic_product;
    j["c_class"] = (double)r.c_class;
    j["truncation_error"] = (double)r.truncation_error;
    j["P0"] = r.P0;
    return j.dump(2);
}

std::string constant_report_json(const ConstantReport& r) {
    nlohmann::ordered_json j;
    j["c"] = (double)r.c;
    j["terms"] = r.terms;
    j["tail_bound"] = (double)r.tail_bound;
    j["tail_bound_is_estimate"] = true;
    j["alpha"] = r.alpha_S;
    j["beta"] = r.beta_S;
    j["torsion"] = r.tors;
    j["Lmax"] = r.Lmax;
    j["Bmax"] = r.Bmax;
    j["P0"] = r.P0;
    return j.dump(2);
}

}  // namespace chatelet
