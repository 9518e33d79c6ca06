#include "chatelet/points.hpp"
#include "chatelet/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

namespace chatelet {

// ---------------------------------------------------------------------------
// small helpers
// ---------------------------------------------------------------------------

static i64 iabs(i64 x) { return x < 0 ? -x : x; }

static i64 height_of(i64 u, i64 v, i64 t) {
    i64 m = std::max(iabs(u), iabs(v));
    return m * m * t;
}

// product of the four forms; i128 because each form can reach ~2e9
static i128 form_product(const SurfaceSpec& spec, i64 u, i64 v) {
    i128 n = 1;
    for (int j = 1; j <= 4; ++j) n *= (i128)spec.L(j, u, v);
    return n;
}

// merged factorization of |L_1 L_2 L_3 L_4| obtained form by form, so the
// product itself never has to fit an i64
static std::vector<std::pair<i64, int>> factor_forms(const SurfaceSpec& spec,
                                                     i64 u, i64 v) {
    std::map<i64, int> acc;
    for (int j = 1; j <= 4; ++j) {
        i64 L = spec.L(j, u, v);
        for (auto& [p, e] : factorize(L)) acc[p] += e;
    }
    return {acc.begin(), acc.end()};
}

// the four degenerate points (x=y=0, t=1): one per zero direction of a
// form, each sign-normalized
static std::vector<std::pair<i64, i64>> degenerate_directions(const SurfaceSpec& spec) {
    std::vector<std::pair<i64, i64>> dirs;
    dirs.push_back({1, 0});                                   // L2 = 0
    dirs.push_back({0, spec.b[3] * spec.b[4] > 0 ? 1 : -1});  // L1 = 0
    for (int j = 3; j <= 4; ++j) {                            // L_j = 0
        i64 s = sgn(spec.b[j]);
        dirs.push_back({s * spec.b[j], -s * spec.a[j]});
    }
    return dirs;
}

// ---------------------------------------------------------------------------
// normalize_lift
// ---------------------------------------------------------------------------

RationalPoint normalize_lift(const SurfaceSpec& spec, i64 x, i64 y, i64 t,
                             i64 u, i64 v) {
    if (u == 0 && v == 0) throw InvalidPoint("(u,v) = (0,0)");
    if (x == 0 && y == 0 && t == 0) throw InvalidPoint("(x,y,t) = (0,0,0)");
    {
        Int lhs = Int(x) * x + Int(y) * y;
        Int rhs = Int(t) * t;
        for (int j = 1; j <= 4; ++j) rhs *= Int(spec.a[j]) * u + Int(spec.b[j]) * v;
        if (lhs != rhs) throw InvalidPoint("x^2+y^2 != t^2 prod L_j(u,v)");
    }
    i64 g2 = std::gcd(u, v);
    u /= g2; v /= g2;
    i128 tw = (i128)t * g2 * g2;
    if (tw > INT64_MAX || tw < -INT64_MAX) throw OverflowError("t g^2 exceeds 64 bits");
    t = (i64)tw;
    i64 g1 = gcd3(x, y, t);
    x /= g1; y /= g1; t /= g1;
    if (t < 0) { x = -x; y = -y; t = -t; }
    i64 L1 = u;
    i128 tail = (i128)spec.L(2, u, v) * spec.L(3, u, v) * spec.L(4, u, v);
    if (L1 < 0 || (L1 == 0 && tail < 0)) { u = -u; v = -v; }
    RationalPoint P{x, y, t, u, v, height_of(u, v, t)};
    return P;
}

// ---------------------------------------------------------------------------
// height through the embedding coordinates
// ---------------------------------------------------------------------------

i64 height_via_psi(const SurfaceSpec& spec, const RationalPoint& P) {
    Int lhs = Int(P.x) * P.x + Int(P.y) * P.y;
    Int rhs = Int(P.t) * P.t;
    for (int j = 1; j <= 4; ++j) rhs *= Int(spec.L(j, P.u, P.v));
    if (lhs != rhs) throw InvalidPoint("not on the torsor");
    // coordinates (v^2 t : u v t : u^2 t : x : y), cleared of common factors
    i64 c1 = P.v * P.v * P.t, c2 = P.u * P.v * P.t, c3 = P.u * P.u * P.t;
    i64 g = std::gcd(std::gcd(gcd3(c1, c2, c3), P.x), P.y);
    c1 /= g; c2 /= g; c3 /= g;
    i64 x = P.x / g, y = P.y / g;
    i64 m = std::max({iabs(c1), iabs(c2), iabs(c3)});
    // the real-place entries |x|/C, |y|/C must not win the max; compare
    // squares against Csq exactly
    if ((i128)x * x > (i128)m * m * spec.Csq || (i128)y * y > (i128)m * m * spec.Csq)
        throw InvalidPoint("embedding height not attained at a monomial coordinate");
    return m;
}

// ---------------------------------------------------------------------------
// torsor class
// ---------------------------------------------------------------------------

static TorsorClass class_from_uv(const SurfaceSpec& spec, i64 u, i64 v,
                                 const std::vector<TorsorClass>& sigma) {
    TorsorClass out;
    int zero_j = 0;
    for (int j = 1; j <= 4; ++j) {
        i64 L = spec.L(j, u, v);
        if (L == 0) { zero_j = j; continue; }
        i64 m = 1;
        for (auto& [p, e] : factorize(L))
            if (p % 4 == 3 && e % 2 == 1) m *= p;
        out.m[j] = sgn(L) * m;
    }
    if (zero_j) {
        // the unique squarefree value making the product a square: the
        // squarefree kernel (with sign) of the other three entries
        i64 prod = 1;
        for (int j = 1; j <= 4; ++j)
            if (j != zero_j) prod *= out.m[j];
        i64 m = 1;
        for (auto& [p, e] : factorize(prod))
            if (e % 2 == 1) m *= p;
        out.m[zero_j] = sgn(prod) * m;
        if (zero_j == 1 && out.m[1] < 0)
            throw ClassNotInSigma("forced m_1 negative");
    }
    for (const TorsorClass& cand : sigma)
        if (cand.m == out.m) return cand;  // picks up alpha_m too
    throw ClassNotInSigma("computed class not listed in Sigma");
}

TorsorClass assign_class(const SurfaceSpec& spec, const RationalPoint& P) {
    return class_from_uv(spec, P.u, P.v, build_sigma(spec));
}

// ---------------------------------------------------------------------------
// torsor lift
// ---------------------------------------------------------------------------

// the unique associate with re > 0, im >= 0 (argument in [0, pi/2))
static GaussInt canonical_associate(GaussInt z) {
    for (int it = 0; it < 4; ++it) {
        if (z.re > 0 && z.im >= 0) return z;
        z = GaussInt(-z.im, z.re);
    }
    return z;
}

// canonical Gaussian integer of norm n: (1+i)^v2 * prod pi_p^e * prod q^(f/2),
// associate-normalized; requires the 3 mod 4 part of n to be a square
static GaussInt canonical_of_norm(i64 n, const char* what) {
    GaussInt z(1, 0);
    for (auto& [p, e] : factorize(n)) {
        if (p == 2) {
            for (int i = 0; i < e; ++i) z = z * GaussInt(1, 1);
        } else if (p % 4 == 1) {
            GaussInt pi = canonical_split(p).pi;
            for (int i = 0; i < e; ++i) z = z * pi;
        } else {
            if (e % 2) throw LiftFailure(std::string(what) + " has no Gaussian factorization");
            for (int i = 0; i < e / 2; ++i) z = z * GaussInt(p, 0);
        }
    }
    return canonical_associate(z);
}

TorsorLift lift_to_torsor(const SurfaceSpec& spec, const RationalPoint& P,
                          const TorsorClass& m) {
    std::array<i64, 5> L{};
    for (int j = 1; j <= 4; ++j) {
        L[j] = spec.L(j, P.u, P.v);
        if (L[j] == 0) throw DegeneratePoint("torsor lift needs a nondegenerate point");
    }
    for (int j = 1; j <= 4; ++j)
        if (m.m[j] == 0 || L[j] % m.m[j] != 0 || L[j] / m.m[j] <= 0)
            throw LiftFailure("class does not divide the form values");

    TorsorLift lift;
    lift.z0p = GaussRat(canonical_of_norm(P.t, "t"));
    GaussInt z1 = canonical_of_norm(L[1] / m.m[1], "L1/m1");
    GaussInt z2 = canonical_of_norm(L[2] / m.m[2], "L2/m2");
    GaussInt z3 = canonical_of_norm(L[3] / m.m[3], "L3/m3");
    lift.z1p = GaussRat(z1);
    lift.z2p = GaussRat(z2);
    lift.z3p = GaussRat(z3);

    GaussRat denom = GaussRat(GaussInt(m.alpha_m, 0)) * lift.z0p * lift.z0p *
                     lift.z1p * lift.z2p * lift.z3p;
    lift.z4p = GaussRat(GaussInt(P.x, P.y)) / denom;
    if (!(lift.z4p.norm() == Rat(L[4]) / Rat(m.m[4])))
        throw LiftFailure("z4 norm mismatch");

    // closed torsor identities on every triple (j,k,l)
    std::array<GaussRat, 5> z{GaussRat(), lift.z1p, lift.z2p, lift.z3p, lift.z4p};
    for (int j = 1; j <= 4; ++j)
        for (int k = j + 1; k <= 4; ++k)
            for (int l = k + 1; l <= 4; ++l) {
                GaussRat s;
                auto term = [&](int jk, int other) {
                    GaussRat w = z[other] * z[other].conj();
                    return GaussRat(Rat(jk) * Rat(m.m[other]) * w.re,
                                    Rat(jk) * Rat(m.m[other]) * w.im);
                };
                s = term(spec.delta[j][k], l);
                GaussRat s2 = term(spec.delta[k][l], j);
                GaussRat s3 = term(spec.delta[l][j], k);
                Rat re = s.re + s2.re + s3.re;
                Rat im = s.im + s2.im + s3.im;
                if (!(re == 0 && im == 0))
                    throw LiftFailure("closed torsor identity fails");
            }
    return lift;
}

// ---------------------------------------------------------------------------
// Hilbert symbols and Brauer data
// ---------------------------------------------------------------------------

static Int int_odd_part(Int n) {
    while (n % 2 == 0) n /= 2;
    return n;
}

int hilbert_minus_one(const Rat& q, i64 place) {
    if (q == 0) throw DomainError("Hilbert symbol at q = 0");
    if (place == 0) return q < 0 ? -1 : 1;
    Int num = boost::multiprecision::numerator(q);
    Int den = boost::multiprecision::denominator(q);
    if (place == 2) {
        Int u = int_odd_part(num) * int_odd_part(den);  // odd part of q mod 8
        i64 r = (i64)(u % 4);
        if (r < 0) r += 4;
        return r == 1 ? 1 : -1;
    }
    if (place % 4 == 1) return 1;  // (-1) is a square mod p
    auto vp = [&](Int n) {
        int e = 0;
        while (n % place == 0) { n /= place; ++e; }
        return e;
    };
    int v = vp(num) - vp(den);
    return v % 2 == 0 ? 1 : -1;
}

static Color color_from_uv(i64 u, i64 v) {
    i64 w = u * v;
    while (w % 2 == 0) w /= 2;
    i64 r = w % 4;
    if (r < 0) r += 4;
    return r == 1 ? Color::black : Color::white;
}

std::array<std::array<int, 5>, 2> realized_patterns(const SurfaceSpec& spec) {
    // eight rays +-(b_j, -a_j) sorted by angle; adjacent rays bound open
    // sectors on which every form has constant sign
    std::vector<std::pair<i64, i64>> dirs;
    for (int j = 1; j <= 4; ++j) {
        dirs.push_back({spec.b[j], -spec.a[j]});
        dirs.push_back({-spec.b[j], spec.a[j]});
    }
    auto half = [](const std::pair<i64, i64>& d) {
        return (d.second > 0 || (d.second == 0 && d.first > 0)) ? 0 : 1;
    };
    std::sort(dirs.begin(), dirs.end(), [&](auto& x, auto& y) {
        if (half(x) != half(y)) return half(x) < half(y);
        return x.first * y.second - x.second * y.first > 0;
    });
    std::vector<std::array<int, 5>> found;
    for (size_t i = 0; i < dirs.size(); ++i) {
        auto d1 = dirs[i];
        auto d2 = dirs[(i + 1) % dirs.size()];
        i64 mu = d1.first + d2.first, mv = d1.second + d2.second;
        if (mu <= 0) continue;  // keep the L1 > 0 representative of each pair
        std::array<int, 5> pat{};
        i128 prod = 1;
        for (int j = 1; j <= 4; ++j) {
            i64 Lj = spec.L(j, mu, mv);
            pat[j] = sgn(Lj);
            prod *= (i128)Lj;
        }
        if (prod <= 0) continue;
        if (std::find(found.begin(), found.end(), pat) == found.end())
            found.push_back(pat);
    }
    if (found.size() != 2)
        throw DomainError("expected exactly two realized sign patterns");
    std::sort(found.begin(), found.end(),
              [](const auto& x, const auto& y) { return x > y; });  // + first
    return {found[0], found[1]};
}

static Component component_from_uv(const SurfaceSpec& spec, i64 u, i64 v,
                                   const std::array<std::array<int, 5>, 2>& pats) {
    std::array<int, 5> pat{};
    for (int j = 1; j <= 4; ++j) pat[j] = sgn(spec.L(j, u, v));
    if (pat == pats[0]) return Component::A;
    if (pat == pats[1]) return Component::B;
    throw DomainError("sign pattern of the point is not a realized pattern");
}

BrauerEval brauer_color(const SurfaceSpec& spec, const RationalPoint& P,
                        int j, int k) {
    if (j < 1 || j > 4 || k < 1 || k > 4 || j == k)
        throw DomainError("form indices must be distinct and in 1..4");
    i64 Lj = spec.L(j, P.u, P.v), Lk = spec.L(k, P.u, P.v);
    if (form_product(spec, P.u, P.v) == 0)
        throw DegeneratePoint("Brauer evaluation needs a nondegenerate point");
    Rat q = Rat(Lj) / Rat(Lk);
    i64 g = std::gcd(Lj, Lk);
    std::vector<i64> places{0, 2};
    std::map<i64, int> odd;
    for (i64 n : {Lj / g, Lk / g})
        for (auto& [p, e] : factorize(n)) {
            (void)e;
            if (p != 2) odd[p] = 1;
        }
    for (auto& [p, e] : odd) { (void)e; places.push_back(p); }
    BrauerEval out;
    for (i64 w : places)
        out.local.push_back({w, hilbert_minus_one(q, w) == 1 ? Rat(0) : Rat(1, 2)});
    out.figure_color = color_from_uv(P.u, P.v);
    return out;
}

// ---------------------------------------------------------------------------
// counting machinery shared by enumerate_points and count_points
// ---------------------------------------------------------------------------

namespace {

// the t values with r(t^2 n) carrying coprime solutions: every prime
// factor 1 mod 4; stored with 2^omega and the distinct primes for the
// shared-prime correction
struct TEntry {
    i64 t;
    i64 pow2omega;
    std::array<i64, 6> primes{};
    int nprimes = 0;
};

std::vector<TEntry> build_t_list(i64 B) {
    std::vector<i64> primes1;
    for (i64 p : sieve::prime_list()) {
        if (p > B) break;
        if (p % 4 == 1) primes1.push_back(p);
    }
    std::vector<TEntry> out;
    TEntry cur{1, 1, {}, 0};
    // DFS over ascending primes, arbitrary exponents, product <= B
    auto rec = [&](auto&& self, size_t idx) -> void {
        out.push_back(cur);
        for (size_t i = idx; i < primes1.size(); ++i) {
            i64 p = primes1[i];
            if (p > B / cur.t) break;
            TEntry save = cur;
            cur.pow2omega *= 2;
            cur.primes[cur.nprimes++] = p;
            while (cur.t <= B / p) {
                cur.t *= p;
                self(self, i + 1);
            }
            cur = save;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(),
              [](const TEntry& x, const TEntry& y) { return x.t < y.t; });
    return out;
}

// per-(u,v) data: base = 4 prod (e_p + 1) over p = 1 mod 4 dividing the
// form product, paired with those primes for the gcd(t, .) correction
struct UVData {
    bool admissible = false;
    i64 base4 = 0;
    std::array<std::pair<i64, i64>, 24> split;  // (p, e_p + 1)
    int nsplit = 0;
};

UVData analyze_uv(const SurfaceSpec& spec, i64 u, i64 v) {
    UVData d;
    if (std::gcd(u, v) != 1) return d;
    if (form_product(spec, u, v) <= 0) return d;
    d.base4 = 4;
    for (auto& [p, e] : factor_forms(spec, u, v)) {
        if (p % 4 == 3) {
            if (e % 2) return d;  // no representations at any t
        } else if (p % 4 == 1) {
            if (d.nsplit == (int)d.split.size())
                throw OverflowError("too many split primes in a form product");
            d.split[d.nsplit++] = {p, e + 1};
            d.base4 *= e + 1;
        }
    }
    d.admissible = true;
    return d;
}

// sum of r_coprime over t <= T
i64 sum_over_t(const UVData& d, const std::vector<TEntry>& tlist, i64 T) {
    i64 acc = 0;
    for (const TEntry& te : tlist) {
        if (te.t > T) break;
        i64 val = d.base4 * te.pow2omega;
        for (int i = 0; i < te.nprimes; ++i)
            for (int s = 0; s < d.nsplit; ++s)
                if (d.split[s].first == te.primes[i]) val /= d.split[s].second;
        acc += val;
    }
    return acc;
}

} // namespace

std::pair<i64, i64> count_points(const SurfaceSpec& spec, i64 B, int threads) {
    if (B < 1) throw DomainError("bound must be >= 1");
    i64 R = isqrt(B);
    std::vector<TEntry> tlist = build_t_list(B);

    auto count_u = [&](i64 u) {
        i64 acc = 0;
        for (i64 v = -R; v <= R; ++v) {
            UVData d = analyze_uv(spec, u, v);
            if (!d.admissible) continue;
            i64 m = std::max(u, iabs(v));
            acc += sum_over_t(d, tlist, B / (m * m));
        }
        return acc;
    };

    i64 nondeg = 0;
    if (threads <= 1) {
        for (i64 u = 1; u <= R; ++u) nondeg += count_u(u);
    } else {
        std::atomic<i64> next{1}, total{0};
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back([&] {
                i64 local = 0;
                for (i64 u; (u = next.fetch_add(1)) <= R;) local += count_u(u);
                total += local;
            });
        for (auto& th : pool) th.join();
        nondeg = total;
    }

    i64 deg = 0;
    for (auto& [u, v] : degenerate_directions(spec))
        if (height_of(u, v, 1) <= B) ++deg;
    return {nondeg, deg};
}

std::vector<PointRecord> enumerate_points(const SurfaceSpec& spec, i64 B) {
    if (B < 1) throw DomainError("bound must be >= 1");
    std::vector<TorsorClass> sigma = build_sigma(spec);
    auto pats = realized_patterns(spec);
    std::vector<TEntry> tlist = build_t_list(B);
    std::vector<PointRecord> records;

    for (auto& [u, v] : degenerate_directions(spec)) {
        i64 h = height_of(u, v, 1);
        if (h > B) continue;
        PointRecord rec;
        rec.point = {0, 0, 1, u, v, h};
        rec.torsor_class = class_from_uv(spec, u, v, sigma);
        rec.degenerate = true;
        records.push_back(rec);
    }

    i64 R = isqrt(B);
    for (i64 u = 1; u <= R; ++u)
        for (i64 v = -R; v <= R; ++v) {
            UVData d = analyze_uv(spec, u, v);
            if (!d.admissible) continue;
            i64 m = std::max(u, iabs(v));
            i64 T = B / (m * m);
            i128 n = form_product(spec, u, v);
            TorsorClass cls = class_from_uv(spec, u, v, sigma);
            Color col = color_from_uv(u, v);
            Component comp = component_from_uv(spec, u, v, pats);
            for (const TEntry& te : tlist) {
                if (te.t > T) break;
                i128 val = (i128)te.t * te.t * n;
                if (val > INT64_MAX) throw OverflowError("t^2 n exceeds 64 bits");
                for (auto& [x, y] : representations((i64)val)) {
                    if (gcd3(x, y, te.t) != 1) continue;
                    PointRecord rec;
                    rec.point = {x, y, te.t, u, v, m * m * te.t};
                    rec.torsor_class = cls;
                    rec.degenerate = false;
                    rec.figure_color = col;
                    rec.real_component = comp;
                    records.push_back(rec);
                }
            }
        }

    std::sort(records.begin(), records.end(), [](const PointRecord& a, const PointRecord& b) {
        auto key = [](const PointRecord& r) {
            return std::make_tuple(r.point.height, r.point.u, r.point.v, r.point.x, r.point.y);
        };
        return key(a) < key(b);
    });
    return records;
}

} // namespace chatelet
