#include "chatelet/sums.hpp"

#include "chatelet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace chatelet {

namespace {

i64 iabs(i64 x) { return x < 0 ? -x : x; }

int sign_of(i64 x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// floor of a nonnegative rational as i64; OverflowError when it does not fit
i64 floor_to_i64(const Rat& T) {
    if (T < 0) throw DomainError("negative bound");
    Int fl = numerator(T) / denominator(T);
    if (fl > std::numeric_limits<i64>::max())
        throw OverflowError("bound floor exceeds 64 bits");
    return fl.convert_to<i64>();
}

} // namespace

// ---------------------------------------------------------------------------
// the 4-fold geometric series
// ---------------------------------------------------------------------------

i64 m_of(const std::array<i64, 4>& n) {
    // sum of all, minus the two smallest = sum of the two largest
    i64 lo1 = std::min(std::min(n[0], n[1]), std::min(n[2], n[3]));
    i64 total = n[0] + n[1] + n[2] + n[3];
    i64 lo2 = std::numeric_limits<i64>::max();
    bool skipped = false;
    for (i64 x : n) {
        if (!skipped && x == lo1) { skipped = true; continue; }
        lo2 = std::min(lo2, x);
    }
    return total - lo1 - lo2;
}

Rat s0_closed_exact(int eps, const Rat& z) {
    if (eps != 1 && eps != -1) throw DomainError("sign must be +-1");
    Rat az = z < 0 ? -z : z;
    if (az >= 1) throw DomainError("series parameter needs |z| < 1");
    Rat z2 = z * z;
    if (eps == -1) {
        // (1-z)^2 / ((1+z)^2 (1+z^2))
        return (1 - z) * (1 - z) / ((1 + z) * (1 + z) * (1 + z2));
    }
    // (1 + 2z + 6z^2 + 2z^3 + z^4) / ((1-z)^4 (1+z)^2)
    Rat num = 1 + 2 * z + 6 * z2 + 2 * z2 * z + z2 * z2;
    Rat den = (1 - z) * (1 - z) * (1 - z) * (1 - z) * (1 + z) * (1 + z);
    return num / den;
}

long double s0_closed(int eps, long double z) {
    if (eps != 1 && eps != -1) throw DomainError("sign must be +-1");
    if (!(std::fabs((double)z) < 1.0)) throw DomainError("series parameter needs |z| < 1");
    long double z2 = z * z;
    if (eps == -1) return (1 - z) * (1 - z) / ((1 + z) * (1 + z) * (1 + z2));
    long double num = 1 + 2 * z + 6 * z2 + 2 * z2 * z + z2 * z2;
    long double den = (1 - z) * (1 - z) * (1 - z) * (1 - z) * (1 + z) * (1 + z);
    return num / den;
}

long double s0_truncated(int eps, long double z, int N) {
    if (eps != 1 && eps != -1) throw DomainError("sign must be +-1");
    if (N < 0) throw DomainError("negative truncation order");
    // bucket the signed counts by the exponent m(n) <= 2N, then add the
    // buckets smallest-term-first (largest m first)
    std::vector<i64> acc((size_t)(2 * N + 1), 0);
    for (i64 n1 = 0; n1 <= N; ++n1)
        for (i64 n2 = 0; n2 <= N; ++n2)
            for (i64 n3 = 0; n3 <= N; ++n3)
                for (i64 n4 = 0; n4 <= N; ++n4) {
                    i64 m = m_of({n1, n2, n3, n4});
                    int sgn = (eps == 1 || ((n1 + n2 + n3 + n4) % 2 == 0)) ? 1 : -1;
                    acc[(size_t)m] += sgn;
                }
    long double sum = 0;
    for (i64 m = 2 * N; m >= 0; --m)
        sum += (long double)acc[(size_t)m] * powl(z, (long double)m);
    return sum;
}

// ---------------------------------------------------------------------------
// (m, a, b, ell) -> (d, D)
// ---------------------------------------------------------------------------

DVector build_dD(const TorsorClass& m, const SigmaPrimeTerm& a,
                 const std::array<IdealRep, 5>& b, i64 ell) {
    if (ell < 1 || ell % 2 == 0) throw ParityError("ell must be odd and positive");
    DVector out;
    out.ell = ell;
    for (int j = 1; j <= 4; ++j) {
        out.d[(size_t)j] = iabs(m.m[(size_t)j]) * a.norm[(size_t)j] * b[(size_t)j].norm;
        if (out.d[(size_t)j] % 2 == 0)
            throw ParityError("even d_j: inputs must be odd (m squarefree 3-mod-4, "
                              "ideal norms 1-mod-4)");
        out.D[(size_t)j] = (j <= 2) ? std::lcm(out.d[(size_t)j], ell) : out.d[(size_t)j];
    }
    return out;
}

// ---------------------------------------------------------------------------
// U(T): the weighted lattice-point sum, two ways
// ---------------------------------------------------------------------------

namespace {

// prod_j r(|L_j|/d_j) at one point, or 0 when the point fails a side
// condition.  check_lattice toggles the D_j | L_j test (the reduced-basis
// scan generates lattice points by construction).
i64 u_weight(const SurfaceSpec& spec, i64 u, i64 v, const TorsorClass& m,
             const DVector& dv, bool check_lattice) {
    if (u % 2 == 0 && v % 2 == 0) return 0;
    i64 w = 1;
    for (int j = 1; j <= 4; ++j) {
        i64 Lj = spec.L(j, u, v);
        if (sign_of(Lj) * sign_of(m.m[(size_t)j]) <= 0) return 0;
        if (check_lattice && Lj % dv.D[(size_t)j] != 0) return 0;
        w *= r_count(iabs(Lj) / dv.d[(size_t)j]);
        if (w == 0) return 0;
    }
    return w;
}

} // namespace

i64 u_sum(const SurfaceSpec& spec, const Rat& T, const TorsorClass& m,
          const DVector& dvec) {
    i64 fl = floor_to_i64(T);
    i64 M = isqrt(fl);  // u^2 <= T  <=>  u^2 <= floor(T) for integer u

    // strategy 1: scan the box.  m_1 L_1 = m_1 u > 0 forces u >= 1.
    i64 box = 0;
    for (i64 u = 1; u <= M; ++u)
        for (i64 v = -M; v <= M; ++v)
            box += u_weight(spec, u, v, m, dvec, true);

    // strategy 2: scan integer coordinates over the reduced basis of
    // Gamma_D.  For (u,v) = x e1 + y e2: |x| det = |(u,v) wedge e2|
    // <= |(u,v)| |e2| <= sqrt(2T) |e2|, so x^2 det^2 <= 2T |e2|^2 and
    // symmetrically for y with |e1|.
    DArray D;
    for (int j = 0; j <= 4; ++j) D[(size_t)j] = dvec.D[(size_t)j];
    Lattice2 lat = gamma_basis(spec, D);
    Minima red = reduce_basis(lat);

    Int det2 = lat.det * lat.det;
    Int num = numerator(T), den = denominator(T);
    auto coord_bound = [&](const Int& other_sq) {
        // largest k >= 0 with k^2 det^2 den <= 2 num other_sq
        Int rhs = 2 * num * other_sq;
        i64 k = (i64)std::sqrt((double)(rhs / (det2 * den)).convert_to<double>()) + 2;
        while (k > 0 && Int(k) * k * det2 * den > rhs) --k;
        while (Int(k + 1) * (k + 1) * det2 * den <= rhs) ++k;
        return k;
    };
    i64 xb = coord_bound(red.s2_sq);
    i64 yb = coord_bound(red.s1_sq);

    i64 latt = 0;
    for (i64 x = -xb; x <= xb; ++x)
        for (i64 y = -yb; y <= yb; ++y) {
            Int U = x * red.e1.u + y * red.e2.u;
            Int V = x * red.e1.v + y * red.e2.v;
            if (U > M || U < -M || V > M || V < -M) continue;
            latt += u_weight(spec, U.convert_to<i64>(), V.convert_to<i64>(), m,
                             dvec, false);
        }

    if (box != latt)
        throw MismatchError("box scan " + std::to_string(box) +
                            " != reduced-basis scan " + std::to_string(latt));
    return box;
}

// ---------------------------------------------------------------------------
// C_m and the r(t)/t partial sums
// ---------------------------------------------------------------------------

double C_m_constant(i64 m, i64 prime_cutoff) {
    if (m < 1) throw DomainError("m must be positive");
    if (prime_cutoff > sieve::PRIME_LIMIT)
        throw DomainError("prime cutoff beyond sieve reach");
    static std::map<i64, long double> cache;
    static std::mutex mtx;
    long double A;
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(prime_cutoff);
        if (it == cache.end()) {
            A = 1.0L;
            for (i64 p : sieve::prime_list_large()) {
                if (p > prime_cutoff) break;
                if (p % 4 == 3) A *= 1.0L - 1.0L / ((long double)p * (long double)p);
            }
            cache.emplace(prime_cutoff, A);
        } else {
            A = it->second;
        }
    }
    long double val = 2.0L * (PI_L / 4.0L) * A;
    for (auto& [p, e] : factorize(m)) {
        (void)e;
        // only split primes constrain t: the summation variable runs over
        // integers whose prime factors are all 1 mod 4, so gcd(t, m) = 1
        // is automatic at p = 2 and at p = 3 mod 4
        if (p % 4 != 1) continue;
        long double f = 1.0L - 1.0L / (long double)p;
        val *= f * f;
    }
    return (double)val;
}

namespace {

// ascending list of (t, r(t)/4) over t <= T with every prime factor 1 mod 4
// and gcd(t, avoid) = 1
std::vector<std::pair<i64, i64>> d_numbers(i64 T, i64 avoid) {
    if (T < 1) throw DomainError("empty t-range");
    std::vector<i64> ps;
    for (i64 p : sieve::prime_list_large()) {
        if (p > T) break;
        if (p % 4 == 1 && avoid % p != 0) ps.push_back(p);
    }
    std::vector<std::pair<i64, i64>> out;
    out.push_back({1, 1});
    // iterative DFS: extend each emitted t by powers of later primes
    struct Frame { size_t i; i64 t, rhat; };
    std::vector<Frame> stack{{0, 1, 1}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        for (size_t i = f.i; i < ps.size(); ++i) {
            i64 p = ps[i];
            if (p > T / f.t) break;
            i64 q = f.t * p;
            for (i64 e = 1; ; ++e) {
                out.push_back({q, f.rhat * (e + 1)});
                stack.push_back({i + 1, q, f.rhat * (e + 1)});
                if (q > T / p) break;
                q *= p;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

Rat r_over_t_exact(i64 T, i64 m) {
    Rat acc = 0;
    for (auto& [t, rhat] : d_numbers(T, m)) acc += Rat(4 * rhat, t);
    return acc;
}

std::vector<double> r_over_t_partial_multi(const std::vector<i64>& Ts, i64 m) {
    if (Ts.empty()) return {};
    i64 Tmax = *std::max_element(Ts.begin(), Ts.end());
    auto list = d_numbers(Tmax, m);
    // ascending t; evaluate every threshold in one sweep
    std::vector<size_t> order(Ts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return Ts[a] < Ts[b]; });
    std::vector<double> out(Ts.size(), 0.0);
    long double acc = 0;
    size_t k = 0;
    for (auto& [t, rhat] : list) {
        while (k < order.size() && Ts[order[k]] < t) out[order[k++]] = (double)acc;
        acc += 4.0L * (long double)rhat / (long double)t;
    }
    while (k < order.size()) out[order[k++]] = (double)acc;
    return out;
}

double r_over_t_partial(i64 T, i64 m) { return r_over_t_partial_multi({T}, m)[0]; }

// ---------------------------------------------------------------------------
// the Moebius-decomposed count, regrouped per lattice point
// ---------------------------------------------------------------------------

namespace {

// After fixing (u, v), t and everything global, the (b, t)-coupling of the
// full sum splits into one factor per prime p = 1 mod 4.  With
// a_j = v_p(|L_j| / (|m_j| N(a_j))) and tau = v_p(t), the factor is
//
//   local(a, tau) = sum over c in {1, pi, pibar, pi*pibar}^4, n_j <= a_j,
//       (-1)^(n1+..+n4) prod_j (a_j + 1 - n_j) * z0(tau, c)
//
// where n_j = #{prime factors of c_j} and z0(tau, c) counts the ways to
// split p^tau = pi^alpha pibar^beta into the two halves of t = z conj(z)
// subject to (a) conj(z) divisible by the intersection of the c_j, i.e.
// alpha >= 1 if some c_j has a pibar, beta >= 1 if some c_j has a pi, and
// (b) z free of rational primes (alpha and beta never both positive: p | z
// would put p inside gcd(x, y, t)).  Hence z0 = 0 if the slots mix pi and
// pibar, [tau >= 1] if exactly one side occurs, and min(tau + 1, 2) if the
// slots are all trivial.  The prime p itself cancels out, so the memo key
// is just (a1..a4, tau).  The whole sum telescopes to the coprime
// representation count -- prod (a_j + 1) for tau = 0 and 2 for tau >= 1 --
// and that identity is asserted on every new key.
i64 local_factor(const std::array<int, 5>& a, int tau) {
    static std::unordered_map<i64, i64> memo;
    static std::mutex mtx;
    i64 key = tau;
    for (int j = 1; j <= 4; ++j) key = key * 64 + a[(size_t)j];
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    i64 total = 0;
    for (int c1 = 0; c1 < 4; ++c1)
        for (int c2 = 0; c2 < 4; ++c2)
            for (int c3 = 0; c3 < 4; ++c3)
                for (int c4 = 0; c4 < 4; ++c4) {
                    int c[5] = {0, c1, c2, c3, c4};
                    i64 term = 1;
                    int mx = 0, mxbar = 0, nsum = 0;
                    for (int j = 1; j <= 4 && term; ++j) {
                        int n = (c[j] & 1) + (c[j] >> 1);
                        if (n > a[(size_t)j]) { term = 0; break; }
                        nsum += n;
                        mx = std::max(mx, c[j] & 1);
                        mxbar = std::max(mxbar, c[j] >> 1);
                        term *= a[(size_t)j] + 1 - n;
                    }
                    if (!term) continue;
                    i64 z0;
                    if (mx && mxbar) z0 = 0;
                    else if (mx || mxbar) z0 = (tau >= 1) ? 1 : 0;
                    else z0 = std::min(tau + 1, 2);
                    if (!z0) continue;
                    total += (nsum % 2 ? -1 : 1) * term * z0;
                }
    i64 closed = 1;
    if (tau >= 1) closed = 2;
    else for (int j = 1; j <= 4; ++j) closed *= a[(size_t)j] + 1;
    if (total != closed)
        throw DivisibilityError("local factor failed its telescoping identity");
    std::lock_guard<std::mutex> lk(mtx);
    memo.emplace(key, total);
    return total;
}

struct TFact {
    i64 t;
    std::array<std::pair<i64, int>, 6> pf;  // split-prime factorization
    int npf = 0;
};

std::vector<TFact> t_factored(i64 B) {
    std::vector<TFact> out;
    for (auto& [t, rhat] : d_numbers(B, 1)) {
        (void)rhat;
        TFact tf;
        tf.t = t;
        for (auto& [p, e] : factorize(t)) tf.pf[(size_t)tf.npf++] = {p, e};
        out.push_back(tf);
    }
    return out;
}

} // namespace

i64 moebius_count(const SurfaceSpec& spec, i64 B) {
    if (B < 1) throw DomainError("bound must be >= 1");
    auto sigma = build_sigma(spec);
    auto sigma_prime = build_sigma_prime(spec);
    auto tlist = t_factored(B);

    i128 total = 0;
    std::array<std::vector<std::pair<i64, int>>, 5> fact;  // per-form factorizations
    for (const TFact& tf : tlist) {
        i64 M = isqrt(B / tf.t);
        if (M < 1) continue;
        for (i64 ell = 1; ell <= M; ell += 2) {
            int mu_ell = moebius(ell);
            if (mu_ell == 0) continue;
            for (i64 u = ell; u <= M; u += ell) {
                for (i64 v = -(M / ell) * ell; v <= M; v += ell) {
                    if (u % 2 == 0 && v % 2 == 0) continue;
                    i64 L[5], mag[5];
                    bool zero = false;
                    for (int j = 1; j <= 4 && !zero; ++j)
                        zero = (L[j] = spec.L(j, u, v)) == 0;
                    if (zero) continue;

                    // the only class that can contribute at (u,v): sign of
                    // L_j times the odd-valuation 3-mod-4 kernel of |L_j|
                    TorsorClass cand;
                    for (int j = 1; j <= 4; ++j) {
                        fact[(size_t)j] = factorize(L[j]);
                        mag[j] = 1;
                        for (auto& [p, e] : fact[(size_t)j])
                            if (p % 4 == 3 && e % 2 == 1) mag[j] *= p;
                        cand.m[(size_t)j] = sign_of(L[j]) * mag[j];
                    }
                    bool in_sigma = false;
                    for (auto& mm : sigma)
                        if (mm.m == cand.m) { in_sigma = true; break; }
                    if (!in_sigma) continue;

                    for (const SigmaPrimeTerm& at : sigma_prime) {
                        if (std::gcd(tf.t, at.norm_product) != 1) continue;
                        bool div_ok = true;
                        for (int j = 1; j <= 4 && div_ok; ++j)
                            div_ok = (iabs(L[j]) / mag[j]) % at.norm[(size_t)j] == 0;
                        if (!div_ok) continue;

                        // split primes of any A_j or of t
                        i64 plist[40];
                        int np = 0;
                        for (int j = 1; j <= 4; ++j)
                            for (auto& [p, e] : fact[(size_t)j]) {
                                (void)e;
                                if (p % 4 == 1) plist[np++] = p;
                            }
                        for (int k = 0; k < tf.npf; ++k) plist[np++] = tf.pf[(size_t)k].first;
                        std::sort(plist, plist + np);
                        np = (int)(std::unique(plist, plist + np) - plist);

                        i128 prod = 1;
                        for (int k = 0; k < np && prod != 0; ++k) {
                            i64 p = plist[k];
                            std::array<int, 5> avec{};
                            for (int j = 1; j <= 4; ++j) {
                                int vL = 0;
                                for (auto& [q, e] : fact[(size_t)j])
                                    if (q == p) vL = e;
                                avec[(size_t)j] =
                                    vL - valuation(at.norm[(size_t)j], p);
                            }
                            int tau = 0;
                            for (int k2 = 0; k2 < tf.npf; ++k2)
                                if (tf.pf[(size_t)k2].first == p) tau = tf.pf[(size_t)k2].second;
                            prod *= local_factor(avec, tau);
                        }
                        total += (i128)mu_ell * at.mu * 1024 * prod;
                    }
                }
            }
        }
    }
    if (total % 256 != 0)
        throw DivisibilityError("Moebius total not divisible by 2^8");
    i128 n = total / 256;
    if (n > std::numeric_limits<i64>::max() || n < 0)
        throw OverflowError("count exceeds 64 bits");
    return (i64)n;
}

// ---------------------------------------------------------------------------
// literal reference evaluation (small B)
// ---------------------------------------------------------------------------

namespace {

// w(t, cap b): Gaussian z with N(z) = t, conj(z) divisible by every b_j,
// and no rational prime dividing z.  Multiplicative over the split primes;
// a slot whose intersection mixes pi and pibar kills the term outright,
// a one-sided slot pins the corresponding half of t = z conj(z).
i64 t_weight(i64 t, const IdealRep& b1, const IdealRep& b2, const IdealRep& b3,
             const IdealRep& b4) {
    std::map<i64, int> ormask;
    for (const IdealRep* b : {&b1, &b2, &b3, &b4})
        for (auto& [p, mask] : b->factors) ormask[p] |= mask;
    i64 w = 4;
    for (auto& [p, e] : factorize(t)) {
        (void)e;
        auto it = ormask.find(p);
        int mask = (it == ormask.end()) ? 0 : it->second;
        if (it != ormask.end()) ormask.erase(it);
        if (mask == 3) return 0;
        if (mask == 0) w *= 2;  // z takes the whole pi- or the whole pibar-side
    }
    for (auto& [p, mask] : ormask)
        if (mask != 0) return 0;  // b demands a prime t does not have
    return w;
}

} // namespace

i64 moebius_count_reference(const SurfaceSpec& spec, i64 B) {
    if (B < 1) throw DomainError("bound must be >= 1");
    if (B > 2000) throw ResourceError("reference evaluation is exponential; keep B small");
    auto sigma = build_sigma(spec);
    auto sigma_prime = build_sigma_prime(spec);
    auto tlist = d_numbers(B, 1);
    i64 rootB = isqrt(B);

    // N(b_j) must divide |L_j| / (|m_j| N(a_j)) for some point of the box,
    // so norms beyond (|a_j|+|b_j|) sqrt(B) contribute nothing
    std::array<std::vector<IdealRep>, 5> ideals;
    for (int j = 1; j <= 4; ++j)
        ideals[(size_t)j] =
            squarefree_ideals_up_to((iabs(spec.a[(size_t)j]) + iabs(spec.b[(size_t)j])) * rootB);

    i128 total = 0;
    for (const TorsorClass& m : sigma)
        for (const SigmaPrimeTerm& at : sigma_prime)
            for (i64 ell = 1; ell <= rootB; ell += 2) {
                int mu_ell = moebius(ell);
                if (mu_ell == 0) continue;
                for (const IdealRep& b1 : ideals[1])
                    for (const IdealRep& b2 : ideals[2])
                        for (const IdealRep& b3 : ideals[3])
                            for (const IdealRep& b4 : ideals[4]) {
                                i64 nb = ideal_intersection_norm(b1, b2, b3, b4);
                                if (nb > B) continue;
                                int mu_b = b1.mu * b2.mu * b3.mu * b4.mu;
                                DVector dv = build_dD(m, at, {IdealRep{}, b1, b2, b3, b4}, ell);
                                for (auto& [t, rhat] : tlist) {
                                    (void)rhat;
                                    if (t % nb != 0) continue;
                                    if (std::gcd(t, at.norm_product) != 1) continue;
                                    i64 w_t = t_weight(t, b1, b2, b3, b4);
                                    if (w_t == 0) continue;
                                    i64 U = u_sum(spec, Rat(B, t), m, dv);
                                    total += (i128)at.mu * mu_b * mu_ell * w_t * U;
                                }
                            }
            }
    if (total % 256 != 0)
        throw DivisibilityError("Moebius total not divisible by 2^8");
    return (i64)(total / 256);
}

} // namespace chatelet
