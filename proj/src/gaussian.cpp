#include "chatelet/gaussian.hpp"

#include <algorithm>

namespace chatelet {

// ---------------------------------------------------------------------------
// r(n)
// ---------------------------------------------------------------------------

i64 rhat_count(i64 n) {
    if (n < 1) throw DomainError("rhat_count needs n >= 1");
    i64 out = 1;
    for (auto& [p, e] : factorize(n)) {
        if (p == 2) continue;
        if (p % 4 == 1) out *= e + 1;
        else if (e % 2) return 0;
    }
    return out;
}

i64 r_count(i64 n) { return 4 * rhat_count(n); }

i64 r_count_coprime(i64 n, i64 t) {
    if (n < 1 || t < 1) throw DomainError("r_count_coprime needs n, t >= 1");
    if (t > 1 && !all_factors_1mod4(t)) return 0;  // any other prime in t kills primitivity
    i64 out = 4;
    for (auto& [p, e] : factorize(t)) { (void)e; out *= 2; }
    for (auto& [p, e] : factorize(n)) {
        if (p == 2) continue;
        if (p % 4 == 3) {
            if (e % 2) return 0;
        } else if (t % p != 0) {
            out *= e + 1;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// canonical split primes
// ---------------------------------------------------------------------------

SplitPrime canonical_split(i64 p) {
    if (p == 2) return {2, GaussInt(1, 1)};
    if (p < 2 || !is_prime(p)) throw DomainError("canonical_split needs a prime");
    if (p % 4 == 3) throw NotSplitError("p = 3 mod 4 stays prime in Z[i]");
    if (p > 10000000000LL) throw ResourceError("canonical_split cap exceeded");
    // a^2 + b^2 = p with a > b > 0: scan b <= sqrt(p/2)
    for (i64 b = 1; 2 * b * b <= p; ++b) {
        i64 a;
        if (is_square(p - b * b, &a)) return {p, GaussInt(a, b)};
    }
    throw DomainError("no two-square decomposition found (not prime?)");
}

// ---------------------------------------------------------------------------
// representations via Gaussian factorization
// ---------------------------------------------------------------------------

std::vector<std::pair<i64, i64>> representations(i64 n) {
    if (n < 1) throw DomainError("representations needs n >= 1");
    std::vector<std::pair<i64, i64>> out;
    // z with N(z) = n: units * (1+i)^e2 * prod pi^j conj(pi)^(e-j) * prod q^(e_q/2)
    GaussInt base(1, 0);
    std::vector<std::pair<GaussInt, int>> split;  // (pi_p, e_p) for p = 1 mod 4
    for (auto& [p, e] : factorize(n)) {
        if (p == 2) {
            GaussInt ram(1, 1);
            for (int k = 0; k < e; ++k) base = base * ram;
        } else if (p % 4 == 3) {
            if (e % 2) return out;  // no representations
            for (int k = 0; k < e / 2; ++k) base = base * GaussInt(p, 0);
        } else {
            split.push_back({canonical_split(p).pi, e});
        }
    }
    std::vector<GaussInt> zs{base};
    for (auto& [pi, e] : split) {
        GaussInt bar = pi.conj();
        std::vector<GaussInt> next;
        next.reserve(zs.size() * (e + 1));
        for (const GaussInt& z : zs) {
            GaussInt w = z;
            for (int j = 0; j <= e; ++j) {       // w = z * pi^j at entry of step j
                GaussInt full = w;
                for (int k = j; k < e; ++k) full = full * bar;
                next.push_back(full);
                w = w * pi;
            }
        }
        zs = std::move(next);
    }
    out.reserve(zs.size() * 4);
    for (const GaussInt& z : zs) {
        // the four unit multiples z, iz, -z, -iz
        out.push_back({(i64)z.re, (i64)z.im});
        out.push_back({-(i64)z.im, (i64)z.re});
        out.push_back({-(i64)z.re, -(i64)z.im});
        out.push_back({(i64)z.im, -(i64)z.re});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// squarefree ideals
// ---------------------------------------------------------------------------

GaussInt IdealRep::generator() const {
    GaussInt g(1, 0);
    for (auto& [p, mask] : factors) {
        GaussInt pi = canonical_split(p).pi;
        if (mask & 1) g = g * pi;
        if (mask & 2) g = g * pi.conj();
    }
    return g;
}

std::vector<IdealRep> squarefree_ideals_up_to(i64 X) {
    if (X < 1) throw DomainError("squarefree_ideals_up_to needs X >= 1");
    std::vector<i64> ps;  // split primes with p <= X
    for (int32_t p : sieve::prime_list()) {
        if (p > X) break;
        if (p % 4 == 1) ps.push_back(p);
    }
    std::vector<IdealRep> out;
    IdealRep cur;
    // depth-first over ascending primes; each picks mask 0 (skip), 1, 2 or 3
    auto rec = [&](auto&& self, size_t idx) -> void {
        out.push_back(cur);
        for (size_t i = idx; i < ps.size(); ++i) {
            if (cur.norm > X / ps[i]) break;
            for (int mask = 1; mask <= 3; ++mask) {
                i64 pw = mask == 3 ? ps[i] * ps[i] : ps[i];
                if (pw > X / cur.norm) break;  // mask 3 costs p^2, tested last
                cur.factors.push_back({ps[i], mask});
                cur.norm *= pw;
                cur.mu *= (mask == 3) ? 1 : -1;
                self(self, i + 1);
                cur.mu *= (mask == 3) ? 1 : -1;
                cur.norm /= pw;
                cur.factors.pop_back();
            }
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const IdealRep& a, const IdealRep& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.factors < b.factors;
    });
    return out;
}

i64 ideal_intersection_norm(const IdealRep& b1, const IdealRep& b2,
                            const IdealRep& b3, const IdealRep& b4) {
    std::vector<std::pair<i64, int>> merged;
    for (const IdealRep* b : {&b1, &b2, &b3, &b4})
        for (auto& [p, mask] : b->factors) {
            auto it = std::find_if(merged.begin(), merged.end(),
                                   [&](auto& pm) { return pm.first == p; });
            if (it == merged.end()) merged.push_back({p, mask});
            else it->second |= mask;
        }
    i64 norm = 1;
    for (auto& [p, mask] : merged) {
        norm *= p;
        if (mask == 3) norm *= p;
    }
    return norm;
}

} // namespace chatelet
