#include "qdyn/zpoly.hpp"

#include <stdexcept>

namespace qdyn::zp {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p)
{
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p)
{
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a, uint64_t p)
{
    // p prime
    return powmod(a % p, p - 2, p);
}

int deg(const Poly& f)
{
    for (size_t i = f.size(); i-- > 0;)
        if (f[i])
            return static_cast<int>(i);
    return -1;
}

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

Poly reduce(const std::vector<mpz_class>& coeffs, uint64_t p)
{
    Poly f(coeffs.size());
    mpz_class t;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        t = coeffs[i] % mpz_class(p);
        if (t < 0)
            t += p;
        f[i] = t.get_ui();
    }
    trim(f);
    return f;
}

Poly mul(const Poly& a, const Poly& b, uint64_t p)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!b[j])
                continue;
            uint64_t t = r[i + j] + mulmod(a[i], b[j], p);
            r[i + j] = t >= p ? t - p : t;
        }
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, uint64_t p)
{
    Poly r = a;
    if (r.size() < b.size())
        r.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i)
        r[i] = (r[i] + p - b[i]) % p;
    trim(r);
    return r;
}

Poly monic(Poly f, uint64_t p)
{
    trim(f);
    if (f.empty())
        return f;
    uint64_t inv = invmod(f.back(), p);
    for (auto& c : f)
        c = mulmod(c, inv, p);
    return f;
}

DivModP divmod(const Poly& a, const Poly& b, uint64_t p)
{
    int db = deg(b);
    if (db < 0)
        throw std::domain_error("zp::divmod: division by zero polynomial");
    Poly r = a;
    trim(r);
    int dr = deg(r);
    if (dr < db)
        return {Poly{}, r};
    Poly q(static_cast<size_t>(dr - db) + 1, 0);
    uint64_t inv = invmod(b[static_cast<size_t>(db)], p);
    for (int k = dr; k >= db; --k) {
        uint64_t top = r[static_cast<size_t>(k)];
        if (!top)
            continue;
        uint64_t t = mulmod(top, inv, p);
        q[static_cast<size_t>(k - db)] = t;
        for (int i = 0; i <= db; ++i) {
            auto& ri = r[static_cast<size_t>(k - db + i)];
            ri = (ri + p - mulmod(t, b[static_cast<size_t>(i)], p)) % p;
        }
    }
    trim(r);
    trim(q);
    return {q, r};
}

Poly gcd(Poly a, Poly b, uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b, p).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a), p);
}

Poly derivative(const Poly& f, uint64_t p)
{
    if (f.size() <= 1)
        return {};
    Poly d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i)
        d[i - 1] = mulmod(f[i], i % p, p);
    trim(d);
    return d;
}

Poly powmod_poly(Poly base, mpz_class e, const Poly& mod, uint64_t p)
{
    Poly r{1};
    base = divmod(base, mod, p).remainder;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = divmod(mul(r, base, p), mod, p).remainder;
        base = divmod(mul(base, base, p), mod, p).remainder;
        e >>= 1;
    }
    return r;
}

FactorPattern factor_pattern(const std::vector<mpz_class>& coeffs, uint64_t p)
{
    FactorPattern out;
    if (coeffs.empty())
        return out;
    if (mpz_divisible_ui_p(coeffs.back().get_mpz_t(), p))
        return out; // leading coefficient vanished: bad prime

    Poly f = monic(reduce(coeffs, p), p);
    int n = deg(f);
    if (n < 1)
        return out;
    if (deg(gcd(f, derivative(f, p), p)) > 0)
        return out; // repeated factors mod p: stay conservative

    // x^p mod f, then the linear part
    Poly x{0, 1};
    Poly u = powmod_poly(x, mpz_class(p), f, p);
    Poly g1 = gcd(sub(u, x, p), f, p);
    out.linear_degree = std::max(0, deg(g1));

    Poly f2 = deg(g1) > 0 ? divmod(f, g1, p).quotient : f;
    if (deg(f2) >= 2) {
        Poly u2 = divmod(u, f2, p).remainder;       // x^p mod f2
        Poly w = powmod_poly(u2, mpz_class(p), f2, p); // x^(p^2) mod f2
        Poly g2 = gcd(sub(w, x, p), f2, p);
        out.quadratic_degree = std::max(0, deg(g2));
    }
    out.usable = true;
    return out;
}

const std::vector<uint64_t>& screening_primes()
{
    static const std::vector<uint64_t> primes = [] {
        std::vector<uint64_t> ps;
        mpz_class p = mpz_class(1) << 60;
        for (int i = 0; i < 48; ++i) {
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
            ps.push_back(p.get_ui());
        }
        return ps;
    }();
    return primes;
}

} // namespace qdyn::zp
