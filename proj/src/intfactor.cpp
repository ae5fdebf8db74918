#include "qdyn/intfactor.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdyn {

bool is_probable_prime(const mpz_class& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

// Pollard-Brent rho; n must be odd, composite, > 1, and not a prime power we
// care to special-case.  Returns a nontrivial factor.
mpz_class pollard_brent(const mpz_class& n)
{
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        return r;
    }
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (mpz_class i = 0; i < r; ++i)
                y = (y * y + c) % n;
            mpz_class k = 0;
            while (k < r && g == 1) {
                ys = y;
                mpz_class lim = std::min(m, mpz_class(r - k));
                for (mpz_class i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                mpz_class d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n)
            return g;
        // cycle degenerated for this increment; retry with the next c
    }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out)
{
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    mpz_class d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::map<mpz_class, unsigned> factor(mpz_class n)
{
    if (sgn(n) < 0)
        n = -n;
    if (n == 0)
        throw std::domain_error("factor: zero input");

    std::map<mpz_class, unsigned> out;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[mpz_class(p)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    // modest wheel of trial division before handing composites to rho
    for (unsigned long p = 37; p < 10000 && n > 1; p += 2) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[mpz_class(p)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    if (n > 1)
        factor_into(n, out);
    return out;
}

std::vector<mpz_class> divisors(const mpz_class& n)
{
    auto fac = factor(n);
    std::vector<mpz_class> out{1};
    for (const auto& [p, e] : fac) {
        size_t base = out.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SquarefreeDecomposition squarefree_decompose(const mpz_class& n)
{
    if (sgn(n) == 0)
        throw std::domain_error("squarefree_decompose: zero input");
    auto fac = factor(n);
    SquarefreeDecomposition r{mpz_class(sgn(n)), 1};
    for (const auto& [p, e] : fac) {
        if (e % 2)
            r.squarefree *= p;
        mpz_class ph;
        mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), e / 2);
        r.factor *= ph;
    }
    return r;
}

} // namespace qdyn
