#include "chatelet/surface.hpp"
#include "chatelet/sieve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace chatelet {

SurfaceSpec validate(i64 a3, i64 b3, i64 a4, i64 b4) {
    for (i64 c : {a3, b3, a4, b4})
        if (c < -COEFF_CAP || c > COEFF_CAP)
            throw DomainError("coefficient exceeds the size cap");
    if (std::gcd(a3, b3) != 1) throw GcdError("gcd(a3,b3) != 1");
    if (std::gcd(a4, b4) != 1) throw GcdError("gcd(a4,b4) != 1");
    SurfaceSpec s;
    s.a = {0, 1, 0, a3, a4};
    s.b = {0, 0, 1, b3, b4};
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k)
            s.delta[j][k] = s.a[j] * s.b[k] - s.a[k] * s.b[j];
    for (int j = 1; j <= 4; ++j)
        for (int k = j + 1; k <= 4; ++k)
            if (s.delta[j][k] == 0)
                throw DegenerateError("resultant Delta_{" + std::to_string(j) + "," +
                                      std::to_string(k) + "} vanishes");
    s.Delta = Int(a3) * b3 * a4 * b4 * s.delta[3][4];
    s.Csq = (std::abs(a3) + std::abs(b3)) * (std::abs(a4) + std::abs(b4));
    s.C = std::sqrt((double)s.Csq);
    return s;
}

BadPrimeData bad_prime_data(const SurfaceSpec& spec) {
    BadPrimeData out;
    std::set<i64> S{2};  // 2 is always included
    std::array<std::set<i64>, 5> per_form;
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k) {
            if (j == k) continue;
            for (auto& [p, e] : factorize(spec.delta[j][k])) {
                (void)e;
                S.insert(p);
                per_form[j].insert(p);  // p | Delta_{j,k} for some k != j
            }
        }
    out.S.assign(S.begin(), S.end());
    for (i64 p : S) {
        if (p % 4 == 1) out.Sprime.push_back(p);
        if (p % 4 == 3)
            for (int j = 1; j <= 4; ++j)
                if (per_form[j].count(p)) out.S_j[j].push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sigma
// ---------------------------------------------------------------------------

std::vector<TorsorClass> build_sigma(const SurfaceSpec& spec) {
    BadPrimeData bad = bad_prime_data(spec);
    // candidate values of each m_j: +- products of subsets of S_j
    std::array<std::vector<i64>, 5> candidates;
    for (int j = 1; j <= 4; ++j) {
        const auto& primes = bad.S_j[j];
        size_t n = primes.size();
        for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
            i64 prod = 1;
            for (size_t i = 0; i < n; ++i)
                if (mask >> i & 1) prod *= primes[i];
            candidates[j].push_back(prod);
            if (j > 1) candidates[j].push_back(-prod);  // m1 stays positive
        }
        std::sort(candidates[j].begin(), candidates[j].end());
    }
    std::vector<TorsorClass> sigma;
    for (i64 m1 : candidates[1])
        for (i64 m2 : candidates[2])
            for (i64 m3 : candidates[3])
                for (i64 m4 : candidates[4]) {
                    i64 prod = m1 * m2 * m3 * m4;
                    i64 root;
                    if (!is_square(prod, &root)) continue;
                    if (gcd3(std::gcd(m1, m2), m3, m4) != 1) continue;
                    TorsorClass tc;
                    tc.m = {0, m1, m2, m3, m4};
                    tc.alpha_m = root;
                    sigma.push_back(tc);
                }
    return sigma;
}

// ---------------------------------------------------------------------------
// Sigma'
// ---------------------------------------------------------------------------

// index-set elements delta_j^+/- encoded as bits: bit 2(j-1) = delta_j^+,
// bit 2(j-1)+1 = delta_j^-
static constexpr int BIT_PLUS(int j) { return 1 << (2 * (j - 1)); }
static constexpr int BIT_MINUS(int j) { return 2 << (2 * (j - 1)); }

std::vector<SigmaPrimeTerm> build_sigma_prime(const SurfaceSpec& spec) {
    BadPrimeData bad = bad_prime_data(spec);

    SigmaPrimeTerm unit;
    for (int j = 1; j <= 4; ++j) { unit.gen[j] = GaussInt(1, 0); unit.norm[j] = 1; }
    std::vector<SigmaPrimeTerm> terms{unit};

    for (i64 p : bad.Sprime) {
        // generating pair sets at p
        std::vector<int> gens;
        for (int j = 1; j <= 4; ++j)
            for (int k = j + 1; k <= 4; ++k)
                if (spec.delta[j][k] % p == 0)
                    gens.push_back(BIT_MINUS(j) | BIT_PLUS(k));
        // E_p: all unions of the generators (including the empty union)
        std::set<int> Ep{0};
        for (int g : gens) {
            std::set<int> next = Ep;
            for (int e : Ep) next.insert(e | g);
            Ep = next;
        }
        // mu_p by the subset-sum recursion, in increasing popcount order
        std::vector<int> order(Ep.begin(), Ep.end());
        std::sort(order.begin(), order.end(), [](int x, int y) {
            int px = __builtin_popcount(x), py = __builtin_popcount(y);
            return px != py ? px < py : x < y;
        });
        std::map<int, int> mu;
        for (int I : order) {
            if (I == 0) { mu[0] = 1; continue; }
            int acc = 0;
            for (int J : order)
                if (J != I && (J & ~I) == 0) acc += mu[J];
            mu[I] = -acc;
        }
        // extend every existing term by every choice of I in E_p
        GaussInt pi = canonical_split(p).pi;
        std::vector<SigmaPrimeTerm> next;
        next.reserve(terms.size() * Ep.size());
        for (const SigmaPrimeTerm& base : terms)
            for (int I : order) {
                SigmaPrimeTerm t = base;
                for (int j = 1; j <= 4; ++j) {
                    if (I & BIT_PLUS(j)) {
                        t.gen[j] = t.gen[j] * pi;
                        t.norm[j] *= p;
                    }
                    if (I & BIT_MINUS(j)) {
                        t.gen[j] = t.gen[j] * pi.conj();
                        t.norm[j] *= p;
                    }
                }
                t.mu *= mu[I];
                next.push_back(t);
            }
        terms = std::move(next);
    }
    for (SigmaPrimeTerm& t : terms)
        t.norm_product = t.norm[1] * t.norm[2] * t.norm[3] * t.norm[4];
    return terms;
}

// ---------------------------------------------------------------------------
// regions
// ---------------------------------------------------------------------------

using Pt = std::pair<Rat, Rat>;

// clip a convex polygon against the half-plane alpha*u + beta*v >= 0
static std::vector<Pt> clip_halfplane(const std::vector<Pt>& poly, i64 alpha, i64 beta) {
    std::vector<Pt> out;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Pt& cur = poly[i];
        const Pt& nxt = poly[(i + 1) % n];
        Rat fc = alpha * cur.first + beta * cur.second;
        Rat fn = alpha * nxt.first + beta * nxt.second;
        if (fc >= 0) out.push_back(cur);
        if ((fc > 0 && fn < 0) || (fc < 0 && fn > 0)) {
            Rat s = fc / (fc - fn);  // intersection parameter on [cur, nxt]
            out.push_back({cur.first + s * (nxt.first - cur.first),
                           cur.second + s * (nxt.second - cur.second)});
        }
    }
    return out;
}

static Rat shoelace(const std::vector<Pt>& poly) {
    Rat acc = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Pt& p = poly[i];
        const Pt& q = poly[(i + 1) % n];
        acc += p.first * q.second - q.first * p.second;
    }
    if (acc < 0) acc = -acc;
    return acc / 2;
}

// drop repeated vertices produced by clipping through corners
static void dedupe(std::vector<Pt>& poly) {
    std::vector<Pt> out;
    for (const Pt& p : poly)
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    poly = out;
}

Region region_polygon(const SurfaceSpec& spec, const TorsorClass& m) {
    std::vector<Pt> poly{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    for (int j = 1; j <= 4 && !poly.empty(); ++j) {
        int s = sgn(m.m[j]);
        poly = clip_halfplane(poly, s * spec.a[j], s * spec.b[j]);
        dedupe(poly);
    }
    Region r;
    r.m = m;
    if (poly.size() >= 3) {
        r.polygon = poly;
        r.area = shoelace(poly);
    } else {
        r.area = 0;
    }
    return r;
}

Rat positive_product_area(const SurfaceSpec& spec) {
    // the four lines L_j = 0 pass through the origin with directions
    // +-(b_j, -a_j); sort the eight rays by angle and add up the sector
    // pieces where the product of the forms is positive
    std::vector<std::pair<i64, i64>> dirs;
    for (int j = 1; j <= 4; ++j) {
        dirs.push_back({spec.b[j], -spec.a[j]});
        dirs.push_back({-spec.b[j], spec.a[j]});
    }
    auto half = [](const std::pair<i64, i64>& d) {
        // 0 for angle in [0, pi), 1 for [pi, 2pi)
        return (d.second > 0 || (d.second == 0 && d.first > 0)) ? 0 : 1;
    };
    std::sort(dirs.begin(), dirs.end(), [&](auto& x, auto& y) {
        if (half(x) != half(y)) return half(x) < half(y);
        return x.first * y.second - x.second * y.first > 0;  // x strictly before y
    });
    Rat total = 0;
    for (size_t i = 0; i < dirs.size(); ++i) {
        auto d1 = dirs[i];
        auto d2 = dirs[(i + 1) % dirs.size()];
        // interior direction of the (strictly convex) sector
        i64 mu = d1.first + d2.first, mv = d1.second + d2.second;
        i128 prod = 1;
        for (int j = 1; j <= 4; ++j) prod *= (i128)spec.L(j, mu, mv);
        if (prod <= 0) continue;
        // sector = {x : cross(d1,x) >= 0 and cross(x,d2) >= 0}; clip the square
        std::vector<Pt> poly{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
        poly = clip_halfplane(poly, -d1.second, d1.first);  // cross(d1, x) >= 0
        dedupe(poly);
        poly = clip_halfplane(poly, d2.second, -d2.first);  // cross(x, d2) >= 0
        dedupe(poly);
        if (poly.size() >= 3) total += shoelace(poly);
    }
    return total;
}

Rat cross_ratio(const SurfaceSpec& spec) {
    Rat lhs = Rat(spec.delta[3][1]) / Rat(spec.delta[3][2]);
    Rat rhs = Rat(spec.delta[4][1]) / Rat(spec.delta[4][2]);
    return lhs / rhs;
}

} // namespace chatelet
