#include "qdyn/dynatomic.hpp"

#include "qdyn/rootfind.hpp"
#include "qdyn/zpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace qdyn {

int mobius(unsigned n)
{
    if (n == 0)
        throw std::domain_error("mobius: zero argument");
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return 0;
            mu = -mu;
        }
    }
    if (n > 1)
        mu = -mu;
    return mu;
}

mpz_class dynatomic_degree(unsigned N)
{
    if (N == 0)
        throw std::domain_error("dynatomic_degree: period must be positive");
    mpz_class nu = 0;
    for (unsigned d = 1; d <= N; ++d) {
        if (N % d)
            continue;
        int mu = mobius(N / d);
        if (mu == 0)
            continue;
        mpz_class p2 = mpz_class(1) << d;
        nu += mu * p2;
    }
    return nu;
}

namespace {
std::mutex cache_mutex;
std::map<unsigned, DynatomicPoly> phi_cache;
} // namespace

const MultiPoly& iterate_poly(unsigned m)
{
    if (m == 0)
        throw std::domain_error("iterate_poly: iterate count must be positive");
    static std::map<unsigned, MultiPoly> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(m);
    if (it != cache.end())
        return it->second;

    // build incrementally: phi^(k+1) = (phi^k)^2 + c
    unsigned have = 0;
    for (auto& [k, p] : cache)
        have = std::max(have, k);
    MultiPoly p = have ? cache[have]
                       : MultiPoly::variable("z") * MultiPoly::variable("z") +
                             MultiPoly::variable("c");
    if (!have)
        cache.emplace(have = 1, p);
    const MultiPoly c = MultiPoly::variable("c");
    while (have < m) {
        p = p * p + c;
        cache.emplace(++have, p);
    }
    return cache.at(m);
}

const DynatomicPoly& dynatomic_poly(unsigned N)
{
    if (N == 0)
        throw std::domain_error("dynatomic_poly: period must be positive");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = phi_cache.find(N);
        if (it != phi_cache.end())
            return it->second;
    }

    const MultiPoly z = MultiPoly::variable("z");
    MultiPoly num = MultiPoly::constant(Rational(1), {"z", "c"});
    MultiPoly den = num;
    for (unsigned d = 1; d <= N; ++d) {
        if (N % d)
            continue;
        int mu = mobius(N / d);
        if (mu == 0)
            continue;
        MultiPoly factor = iterate_poly(d) - z;
        if (mu > 0)
            num = num * factor;
        else
            den = den * factor;
    }
    DynatomicPoly result;
    result.period = N;
    result.poly = exact_divide(num, den);

    mpz_class nu = dynatomic_degree(N);
    if (mpz_class(result.poly.degree("z")) != nu)
        throw std::logic_error("dynatomic_poly: z-degree mismatch against nu(N)");
    for (const auto& [e, coef] : result.poly.terms())
        if (!coef.is_integer())
            throw std::logic_error("dynatomic_poly: non-integer coefficient");

    std::lock_guard<std::mutex> lock(cache_mutex);
    return phi_cache.emplace(N, std::move(result)).first->second;
}

void seed_dynatomic_cache(unsigned N, const MultiPoly& poly)
{
    if (N == 0)
        throw std::domain_error("seed_dynatomic_cache: period must be positive");

    MultiPoly clean = poly;
    for (const auto& v : poly.vars()) {
        if (v != "z" && v != "c") {
            if (poly.degree(v) > 0)
                throw std::logic_error("seed_dynatomic_cache: unexpected variable " + v);
            clean = clean.without_var(v);
        }
    }
    clean = clean.with_vars({"z", "c"});

    if (mpz_class(clean.degree("z")) != dynatomic_degree(N))
        throw std::logic_error("seed_dynatomic_cache: z-degree mismatch against nu(N)");
    for (const auto& [e, coef] : clean.terms())
        if (!coef.is_integer())
            throw std::logic_error("seed_dynatomic_cache: non-integer coefficient");

    // Mobius-product spot checks: prod_{d | N} Phi_d(z0, c0) = phi^N(z0) - z0
    // with the lower factors built internally; two large sample points make a
    // coincidental match implausible
    const std::pair<Rational, Rational> samples[] = {
        {Rational(10007, 3), Rational(-20011, 7)},
        {Rational(-4391, 5), Rational(7919, 2)},
    };
    for (const auto& [z0, c0] : samples) {
        Rational product = clean.eval({{"z", z0}, {"c", c0}});
        for (unsigned d = 1; d < N; ++d) {
            if (N % d)
                continue;
            product = product * dynatomic_poly(d).poly.eval({{"z", z0}, {"c", c0}});
        }
        if (product != iterate(c0, z0, N) - z0)
            throw std::logic_error("seed_dynatomic_cache: Mobius product check failed");
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = phi_cache.find(N);
    if (it != phi_cache.end()) {
        if (it->second.poly != clean)
            throw std::logic_error(
                "seed_dynatomic_cache: stored polynomial disagrees with the internal one");
        return;
    }
    phi_cache.emplace(N, DynatomicPoly{N, std::move(clean)});
}

MultiPoly specialize(unsigned N, const Rational& c0)
{
    const DynatomicPoly& d = dynatomic_poly(N);
    return d.poly.substitute("c", c0).without_var("c");
}

Rational iterate(const Rational& c, const Rational& z, unsigned n)
{
    Rational w = z;
    for (unsigned i = 0; i < n; ++i)
        w = w * w + c;
    return w;
}

QuadraticElement iterate(const Rational& c, const QuadraticElement& z, unsigned n)
{
    QuadraticElement cc(c, Rational(0), z.disc());
    QuadraticElement w = z;
    for (unsigned i = 0; i < n; ++i)
        w = w * w + cc;
    return w;
}

std::optional<unsigned> exact_period(const Rational& c, const Rational& z, unsigned bound)
{
    Rational w = z;
    for (unsigned n = 1; n <= bound; ++n) {
        w = w * w + c;
        if (w == z)
            return n;
    }
    return std::nullopt;
}

std::optional<unsigned> exact_period(const Rational& c, const QuadraticElement& z, unsigned bound)
{
    QuadraticElement cc(c, Rational(0), z.disc());
    QuadraticElement w = z;
    for (unsigned n = 1; n <= bound; ++n) {
        w = w * w + cc;
        if (w == z)
            return n;
    }
    return std::nullopt;
}

std::vector<Rational> rational_periodic_points(const Rational& c, unsigned N)
{
    MultiPoly F = specialize(N, c);
    std::vector<Rational> out;
    for (const Rational& r : rational_roots(F))
        if (exact_period(c, r, N) == N)
            out.push_back(r);
    return out; // rational_roots is already ascending
}

std::vector<std::vector<Rational>> rational_cycles(const Rational& c, unsigned N)
{
    std::vector<Rational> pts = rational_periodic_points(c, N);
    std::set<Rational> seen;
    std::vector<std::vector<Rational>> cycles;
    for (const Rational& p : pts) {
        if (seen.count(p))
            continue;
        std::vector<Rational> orbit;
        Rational w = p;
        for (unsigned i = 0; i < N; ++i) {
            orbit.push_back(w);
            seen.insert(w);
            w = w * w + c;
        }
        // start the orbit at its least point
        auto mn = std::min_element(orbit.begin(), orbit.end());
        std::rotate(orbit.begin(), mn, orbit.end());
        cycles.push_back(std::move(orbit));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return cycles;
}

// --- OrbitCycle -----------------------------------------------------------

const Discriminant& OrbitCycle::disc() const
{
    if (points.empty())
        throw std::domain_error("OrbitCycle: empty point list");
    return points.front().disc();
}

QuadraticElement OrbitCycle::trace() const
{
    if (points.empty())
        throw std::domain_error("OrbitCycle: empty point list");
    QuadraticElement t(Rational(0), Rational(0), disc());
    for (const auto& p : points)
        t += p;
    return t;
}

bool OrbitCycle::is_rational_cycle() const
{
    return std::all_of(points.begin(), points.end(),
                       [](const QuadraticElement& p) { return p.is_rational(); });
}

void OrbitCycle::validate() const
{
    if (points.empty())
        throw std::domain_error("OrbitCycle: empty point list");
    const Discriminant& D = points.front().disc();
    QuadraticElement cc(c, Rational(0), D);
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i].disc() != D)
            throw std::domain_error("OrbitCycle: points from different fields");
        const QuadraticElement& next = points[(i + 1) % points.size()];
        if (points[i] * points[i] + cc != next)
            throw std::domain_error("OrbitCycle: point list is not an orbit of z^2 + c");
    }
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::domain_error("OrbitCycle: points are not pairwise distinct");
}

OrbitCycle OrbitCycle::from_seed(const Rational& c, const QuadraticElement& z0, unsigned N)
{
    if (N == 0)
        throw std::domain_error("OrbitCycle: period must be positive");
    OrbitCycle cyc;
    cyc.c = c;
    QuadraticElement cc(c, Rational(0), z0.disc());
    QuadraticElement w = z0;
    for (unsigned i = 0; i < N; ++i) {
        cyc.points.push_back(w);
        w = w * w + cc;
    }
    if (w != z0)
        throw std::domain_error("OrbitCycle: seed does not close after N steps");
    cyc.validate();
    return cyc;
}

// --- certified low-degree factors ------------------------------------------

namespace {

struct DensePoly {
    std::vector<Rational> a; // ascending

    static DensePoly of(const MultiPoly& p)
    {
        if (p.is_zero())
            throw std::domain_error("low_degree_factors: zero polynomial");
        int idx = -1;
        for (size_t i = 0; i < p.vars().size(); ++i)
            for (const auto& [e, c] : p.terms())
                if (e[i] > 0) {
                    if (idx >= 0 && idx != static_cast<int>(i))
                        throw std::domain_error("low_degree_factors: not univariate");
                    idx = static_cast<int>(i);
                }
        DensePoly d;
        if (idx < 0) {
            d.a = {p.constant_value()};
            return d;
        }
        int deg = 0;
        for (const auto& [e, c] : p.terms())
            deg = std::max(deg, static_cast<int>(e[static_cast<size_t>(idx)]));
        d.a.assign(static_cast<size_t>(deg) + 1, Rational(0));
        for (const auto& [e, c] : p.terms())
            d.a[e[static_cast<size_t>(idx)]] += c;
        return d;
    }

    int degree() const
    {
        for (size_t i = a.size(); i-- > 0;)
            if (!a[i].is_zero())
                return static_cast<int>(i);
        return -1;
    }

    Rational eval(const Rational& x) const
    {
        Rational acc(0);
        for (size_t i = a.size(); i-- > 0;)
            acc = acc * x + a[i];
        return acc;
    }

    std::vector<mpz_class> cleared() const
    {
        mpz_class L = 1;
        for (const auto& r : a)
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), r.den().get_mpz_t());
        std::vector<mpz_class> z(a.size());
        for (size_t i = 0; i < a.size(); ++i)
            z[i] = a[i].num() * (L / a[i].den());
        return z;
    }
};

// remainder of f by z^2 - s z + n: returns {r1, r0} with remainder r1 z + r0
std::pair<Rational, Rational> mod_quadratic(const DensePoly& f, const Rational& s,
                                            const Rational& n)
{
    // Horner with reduction: (r1 z + r0) z + a_i = r1 (s z - n) + r0 z + a_i
    Rational r1(0), r0(0);
    for (size_t i = f.a.size(); i-- > 0;) {
        Rational nr1 = r1 * s + r0;
        Rational nr0 = f.a[i] - r1 * n;
        r1 = std::move(nr1);
        r0 = std::move(nr0);
    }
    return {r1, r0};
}

// exact univariate gcd over Q (monic), Euclid on dense vectors
std::vector<Rational> dense_gcd(std::vector<Rational> f, std::vector<Rational> g)
{
    auto deg = [](const std::vector<Rational>& p) {
        for (size_t i = p.size(); i-- > 0;)
            if (!p[i].is_zero())
                return static_cast<int>(i);
        return -1;
    };
    auto rem = [&](std::vector<Rational> a, const std::vector<Rational>& b) {
        int db = deg(b);
        Rational lead = b[static_cast<size_t>(db)];
        for (int k = deg(a); k >= db; k = deg(a)) {
            Rational t = a[static_cast<size_t>(k)] / lead;
            for (int i = 0; i <= db; ++i)
                a[static_cast<size_t>(k - db + i)] -= t * b[static_cast<size_t>(i)];
            a[static_cast<size_t>(k)] = Rational(0); // kill rounding-free residue exactly
            if (deg(a) < db)
                break;
        }
        a.resize(static_cast<size_t>(std::max(0, deg(a) + 1)));
        return a;
    };
    while (deg(g) >= 0) {
        auto r = rem(f, g);
        f = std::move(g);
        g = std::move(r);
    }
    int df = deg(f);
    if (df < 0)
        return f;
    Rational lead = f[static_cast<size_t>(df)];
    for (auto& ci : f)
        ci = ci / lead;
    return f;
}

} // namespace

LowDegreeFactors low_degree_factors(const MultiPoly& F)
{
    LowDegreeFactors out;
    DensePoly dense = DensePoly::of(F);
    int n = dense.degree();
    if (n <= 0)
        return out;

    std::vector<mpz_class> G = dense.cleared();

    if (n == 1) {
        out.roots.push_back(-dense.a[0] / dense.a[1]);
        return out;
    }

    // mod-p prescreen: one sufficiently negative verdict is a proof of
    // absence, and the two verdicts may come from different primes
    bool maybe_linear = true, maybe_quadratic = true;
    bool squarefree_certified = false;
    for (uint64_t p : zp::screening_primes()) {
        auto fp = zp::factor_pattern(G, p);
        if (!fp.usable)
            continue;
        squarefree_certified = true; // usable means the reduction was squarefree
        if (fp.linear_degree == 0)
            maybe_linear = false;
        if (fp.quadratic_degree == 0 && fp.linear_degree <= 1)
            maybe_quadratic = false;
        if (!maybe_linear && !maybe_quadratic)
            break;
    }
    out.rational_excluded_by_modp = !maybe_linear;
    out.quadratic_excluded_by_modp = !maybe_quadratic;
    if (!maybe_linear && !maybe_quadratic)
        return out;

    // squarefree part (exact when the mod-p certificate is unavailable)
    std::vector<Rational> sf;
    if (squarefree_certified) {
        sf = dense.a;
    } else {
        std::vector<Rational> der(dense.a.size() > 1 ? dense.a.size() - 1 : 0);
        for (size_t i = 1; i < dense.a.size(); ++i)
            der[i - 1] = dense.a[i] * Rational(static_cast<long>(i));
        auto g = dense_gcd(dense.a, der);
        if (g.size() <= 1) {
            sf = dense.a;
        } else {
            // exact deflation by the gcd
            MultiPoly gz(std::vector<std::string>{"z"});
            for (size_t i = 0; i < g.size(); ++i)
                gz.set_term({static_cast<uint32_t>(i)}, g[i]);
            MultiPoly fz(std::vector<std::string>{"z"});
            for (size_t i = 0; i < dense.a.size(); ++i)
                fz.set_term({static_cast<uint32_t>(i)}, dense.a[i]);
            sf = DensePoly::of(exact_divide(fz, gz)).a;
        }
    }

    DensePoly sfd;
    sfd.a = sf;
    int m = sfd.degree();
    sfd.a.resize(static_cast<size_t>(m) + 1);

    std::set<Rational> roots;
    std::set<std::pair<Rational, Rational>> quads;

    auto consider_root = [&](const Rational& r) {
        if (dense.eval(r).is_zero())
            roots.insert(r);
    };
    auto consider_quad = [&](const Rational& s, const Rational& nn) {
        Rational disc = s * s - Rational(4) * nn;
        if (disc.is_zero() || disc.is_square())
            return; // reducible over Q: belongs to the rational path
        auto [r1, r0] = mod_quadratic(dense, s, nn);
        if (r1.is_zero() && r0.is_zero())
            quads.insert({s, nn});
    };

    if (m <= 2) {
        // direct formulas; no numeric stage needed
        if (m == 1) {
            consider_root(-sfd.a[0] / sfd.a[1]);
        } else if (m == 2) {
            Rational s = -sfd.a[1] / sfd.a[2];
            Rational nn = sfd.a[0] / sfd.a[2];
            Rational disc = s * s - Rational(4) * nn;
            if (disc.is_square()) {
                Rational rt = disc.sqrt_exact();
                consider_root((s + rt) / Rational(2));
                consider_root((s - rt) / Rational(2));
            } else {
                consider_quad(s, nn);
            }
        }
    } else {
        std::vector<mpz_class> sfz = sfd.cleared();
        size_t maxbits = 0;
        for (const auto& zc : sfz)
            maxbits = std::max(maxbits, mpz_sizeinbase(zc.get_mpz_t(), 2));
        unsigned prec = std::max<unsigned>(256, static_cast<unsigned>(maxbits) + 160);

        std::optional<std::vector<ApproxRoot>> rts;
        for (int attempt = 0; attempt < 4 && !rts; ++attempt) {
            rts = complex_roots(sfz, prec);
            if (!rts)
                prec *= 2;
        }
        if (!rts)
            throw std::runtime_error("low_degree_factors: root iteration failed to converge");

        const auto& R = *rts;
        const Rational tiny(mpz_class(1), mpz_class(1) << 60);
        const Rational eps(mpz_class(1), mpz_class(1) << (prec / 2));
        const mpz_class den_bound = mpz_class(1) << 48;

        if (maybe_linear) {
            for (const auto& r : R) {
                if (abs(r.im) > tiny)
                    continue;
                auto rec = reconstruct_rational(r.re, den_bound, eps);
                if (rec)
                    consider_root(*rec);
            }
        }
        if (maybe_quadratic) {
            for (size_t i = 0; i < R.size(); ++i) {
                for (size_t j = i + 1; j < R.size(); ++j) {
                    Rational sim = R[i].im + R[j].im;
                    if (abs(sim) > tiny)
                        continue;
                    Rational pim = R[i].re * R[j].im + R[i].im * R[j].re;
                    if (abs(pim) > tiny)
                        continue;
                    Rational sre = R[i].re + R[j].re;
                    Rational pre = R[i].re * R[j].re - R[i].im * R[j].im;
                    auto s = reconstruct_rational(sre, den_bound, eps * Rational(256));
                    if (!s)
                        continue;
                    auto nn = reconstruct_rational(pre, den_bound, eps * Rational(256));
                    if (!nn)
                        continue;
                    consider_quad(*s, *nn);
                }
            }
        }
    }

    out.roots.assign(roots.begin(), roots.end());
    for (const auto& [s, nn] : quads)
        out.quadratics.push_back({s, nn});
    return out; // set iteration already ordered the factors by (s, n)
}

std::vector<OrbitCycle> assemble_quadratic_cycles(const Rational& c, unsigned N,
                                                  const std::vector<MonicQuadFactor>& factors)
{
    std::vector<QuadraticElement> pool;
    for (const auto& q : factors) {
        Rational disc = q.s * q.s - Rational(4) * q.n;
        SurdForm surd = normalize_surd(disc);
        if (!surd.disc)
            continue; // rational pair; not a quadratic point
        Rational half(1, 2);
        QuadraticElement z0(q.s * half, surd.coefficient * half, *surd.disc);
        pool.push_back(z0);
        pool.push_back(z0.conjugate());
    }

    std::vector<OrbitCycle> cycles;
    std::vector<bool> used(pool.size(), false);
    auto pt_less = [](const QuadraticElement& a, const QuadraticElement& b) {
        if (a.rational_part() != b.rational_part())
            return a.rational_part() < b.rational_part();
        return a.surd_part() < b.surd_part();
    };

    for (size_t i = 0; i < pool.size(); ++i) {
        if (used[i])
            continue;
        used[i] = true;
        if (exact_period(c, pool[i], N) != N)
            continue;
        OrbitCycle cyc = OrbitCycle::from_seed(c, pool[i], N);
        // canonical rotation
        auto mn = std::min_element(cyc.points.begin(), cyc.points.end(), pt_less);
        std::rotate(cyc.points.begin(), mn, cyc.points.end());
        // mark pool members of this orbit and drop duplicates
        bool dup = false;
        for (const auto& existing : cycles)
            if (existing.points == cyc.points)
                dup = true;
        for (size_t j = i + 1; j < pool.size(); ++j)
            if (!used[j] &&
                std::find(cyc.points.begin(), cyc.points.end(), pool[j]) != cyc.points.end())
                used[j] = true;
        if (!dup)
            cycles.push_back(std::move(cyc));
    }

    std::sort(cycles.begin(), cycles.end(), [&](const OrbitCycle& a, const OrbitCycle& b) {
        if (a.disc().value() != b.disc().value())
            return a.disc().value() < b.disc().value();
        return pt_less(a.points.front(), b.points.front());
    });
    return cycles;
}

std::vector<OrbitCycle> quadratic_periodic_points(const Rational& c, unsigned N)
{
    LowDegreeFactors lf = low_degree_factors(specialize(N, c));
    return assemble_quadratic_cycles(c, N, lf.quadratics);
}

} // namespace qdyn
