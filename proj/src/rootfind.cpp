#include "qdyn/rootfind.hpp"

#include <mpfr.h>

#include <stdexcept>
#include <vector>

namespace qdyn {

namespace {

// minimal complex bigfloat; just enough for Horner and Aberth updates
struct MpC {
    mpfr_t re, im;

    explicit MpC(mpfr_prec_t prec)
    {
        mpfr_init2(re, prec);
        mpfr_init2(im, prec);
        mpfr_set_zero(re, 1);
        mpfr_set_zero(im, 1);
    }
    MpC(const MpC& o)
    {
        mpfr_init2(re, mpfr_get_prec(o.re));
        mpfr_init2(im, mpfr_get_prec(o.im));
        mpfr_set(re, o.re, MPFR_RNDN);
        mpfr_set(im, o.im, MPFR_RNDN);
    }
    MpC& operator=(const MpC& o)
    {
        if (this != &o) {
            mpfr_set(re, o.re, MPFR_RNDN);
            mpfr_set(im, o.im, MPFR_RNDN);
        }
        return *this;
    }
    ~MpC()
    {
        mpfr_clear(re);
        mpfr_clear(im);
    }
};

void c_add(MpC& r, const MpC& a, const MpC& b)
{
    mpfr_add(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_add(r.im, a.im, b.im, MPFR_RNDN);
}

void c_sub(MpC& r, const MpC& a, const MpC& b)
{
    mpfr_sub(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_sub(r.im, a.im, b.im, MPFR_RNDN);
}

// r must not alias a or b
void c_mul(MpC& r, const MpC& a, const MpC& b, MpC& t)
{
    mpfr_mul(t.re, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t.im, a.im, b.im, MPFR_RNDN);
    mpfr_sub(r.re, t.re, t.im, MPFR_RNDN);
    mpfr_mul(t.re, a.re, b.im, MPFR_RNDN);
    mpfr_mul(t.im, a.im, b.re, MPFR_RNDN);
    mpfr_add(r.im, t.re, t.im, MPFR_RNDN);
}

// r = a / b; r must not alias a or b
void c_div(MpC& r, const MpC& a, const MpC& b, MpC& t, mpfr_t& n)
{
    // n = |b|^2
    mpfr_mul(t.re, b.re, b.re, MPFR_RNDN);
    mpfr_mul(t.im, b.im, b.im, MPFR_RNDN);
    mpfr_add(n, t.re, t.im, MPFR_RNDN);
    // r = a * conj(b) / n
    mpfr_mul(t.re, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t.im, a.im, b.im, MPFR_RNDN);
    mpfr_add(r.re, t.re, t.im, MPFR_RNDN);
    mpfr_mul(t.re, a.im, b.re, MPFR_RNDN);
    mpfr_mul(t.im, a.re, b.im, MPFR_RNDN);
    mpfr_sub(r.im, t.re, t.im, MPFR_RNDN);
    mpfr_div(r.re, r.re, n, MPFR_RNDN);
    mpfr_div(r.im, r.im, n, MPFR_RNDN);
}

bool c_is_zero(const MpC& a)
{
    return mpfr_zero_p(a.re) && mpfr_zero_p(a.im);
}

void c_abs2(mpfr_t& out, const MpC& a, mpfr_t& t)
{
    mpfr_mul(out, a.re, a.re, MPFR_RNDN);
    mpfr_mul(t, a.im, a.im, MPFR_RNDN);
    mpfr_add(out, out, t, MPFR_RNDN);
}

Rational mpfr_to_rational(const mpfr_t x)
{
    if (mpfr_zero_p(x))
        return Rational(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    mpz_class num = m, den = 1;
    if (e >= 0)
        num <<= static_cast<unsigned long>(e);
    else
        den <<= static_cast<unsigned long>(-e);
    return Rational(num, den);
}

} // namespace

std::optional<std::vector<ApproxRoot>> complex_roots(const std::vector<mpz_class>& coeffs,
                                                     unsigned prec_bits)
{
    std::vector<mpz_class> a = coeffs;
    while (!a.empty() && a.back() == 0)
        a.pop_back();
    if (a.size() < 2)
        throw std::domain_error("complex_roots: positive degree required");
    const size_t n = a.size() - 1;
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(prec_bits);

    // coefficients as bigfloats
    std::vector<MpC> cf;
    cf.reserve(a.size());
    for (const auto& z : a) {
        MpC c(prec);
        mpfr_set_z(c.re, z.get_mpz_t(), MPFR_RNDN);
        cf.push_back(c);
    }

    // Fujiwara radius: 2 * max_k |a_(n-k)/a_n|^(1/k); much tighter than the
    // Cauchy bound when the leading coefficient is a large cleared denominator
    mpfr_t R, t1, t2, lead;
    mpfr_inits2(prec, R, t1, t2, lead, static_cast<mpfr_ptr>(nullptr));
    mpfr_abs(lead, cf[n].re, MPFR_RNDN);
    mpfr_set_ui(R, 0, MPFR_RNDN);
    for (size_t k = 1; k <= n; ++k) {
        mpfr_abs(t1, cf[n - k].re, MPFR_RNDN);
        if (mpfr_zero_p(t1))
            continue;
        mpfr_div(t1, t1, lead, MPFR_RNDN);
        mpfr_rootn_ui(t1, t1, static_cast<unsigned long>(k), MPFR_RNDN);
        mpfr_max(R, R, t1, MPFR_RNDN);
    }
    mpfr_mul_ui(R, R, 2, MPFR_RNDN);
    if (mpfr_zero_p(R))
        mpfr_set_ui(R, 1, MPFR_RNDN); // p = a_n x^n: all roots at the origin

    // initial points on the circle with an angle offset breaking symmetry
    std::vector<MpC> z(n, MpC(prec));
    mpfr_t pi, ang;
    mpfr_inits2(prec, pi, ang, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    for (size_t k = 0; k < n; ++k) {
        mpfr_mul_ui(ang, pi, 2 * static_cast<unsigned long>(k), MPFR_RNDN);
        mpfr_div_ui(ang, ang, static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_add_d(ang, ang, 0.377214, MPFR_RNDN);
        mpfr_sin_cos(z[k].im, z[k].re, ang, MPFR_RNDN);
        mpfr_mul(z[k].re, z[k].re, R, MPFR_RNDN);
        mpfr_mul(z[k].im, z[k].im, R, MPFR_RNDN);
    }

    mpfr_t tol, dz2, zk2, nrm;
    mpfr_inits2(prec, tol, dz2, zk2, nrm, static_cast<mpfr_ptr>(nullptr));
    // squared relative step tolerance
    mpfr_set_ui_2exp(tol, 1, -2 * (static_cast<mpfr_exp_t>(prec) - 48), MPFR_RNDN);

    MpC p(prec), dp(prec), w(prec), s(prec), d(prec), tmp(prec), tmp2(prec), delta(prec);
    MpC one(prec), denom(prec);
    mpfr_set_ui(one.re, 1, MPFR_RNDN);
    const unsigned max_iter = 3000;

    // a root freezes once its own update is below tolerance; frozen roots
    // still contribute to the repulsion sums of the rest
    std::vector<bool> frozen(n, false);
    size_t active = n;

    for (unsigned iter = 0; iter < max_iter && active > 0; ++iter) {
        for (size_t k = 0; k < n; ++k) {
            if (frozen[k])
                continue;
            // Horner for p(z_k) and p'(z_k)
            p = cf[n];
            mpfr_set_zero(dp.re, 1);
            mpfr_set_zero(dp.im, 1);
            for (size_t i = n; i-- > 0;) {
                c_mul(tmp, dp, z[k], tmp2);
                c_add(dp, tmp, p);
                c_mul(tmp, p, z[k], tmp2);
                c_add(p, tmp, cf[i]);
            }
            if (c_is_zero(p)) {
                frozen[k] = true;
                --active;
                continue;
            }
            if (c_is_zero(dp))
                return std::nullopt; // degenerate spot; retry at higher precision

            c_div(w, p, dp, tmp, nrm); // Newton step

            // Aberth correction: sum over 1/(z_k - z_j)
            mpfr_set_zero(s.re, 1);
            mpfr_set_zero(s.im, 1);
            for (size_t j = 0; j < n; ++j) {
                if (j == k)
                    continue;
                c_sub(d, z[k], z[j]);
                if (c_is_zero(d))
                    return std::nullopt; // collided points
                c_div(tmp, one, d, tmp2, nrm);
                c_add(s, s, tmp);
            }
            c_mul(tmp, w, s, tmp2);
            mpfr_ui_sub(denom.re, 1, tmp.re, MPFR_RNDN);
            mpfr_neg(denom.im, tmp.im, MPFR_RNDN);
            if (c_is_zero(denom))
                delta = w;
            else
                c_div(delta, w, denom, tmp, nrm);

            c_sub(z[k], z[k], delta);

            c_abs2(dz2, delta, t2);
            c_abs2(zk2, z[k], t2);
            if (mpfr_cmp_ui(zk2, 1) < 0)
                mpfr_set_ui(zk2, 1, MPFR_RNDN);
            mpfr_mul(zk2, zk2, tol, MPFR_RNDN);
            if (mpfr_cmp(dz2, zk2) <= 0) {
                frozen[k] = true;
                --active;
            }
        }
    }
    const bool converged = active == 0;

    std::optional<std::vector<ApproxRoot>> out;
    if (converged) {
        std::vector<ApproxRoot> roots;
        roots.reserve(n);
        for (size_t k = 0; k < n; ++k)
            roots.push_back({mpfr_to_rational(z[k].re), mpfr_to_rational(z[k].im)});
        out = std::move(roots);
    }

    mpfr_clears(R, t1, t2, lead, pi, ang, tol, dz2, zk2, nrm, static_cast<mpfr_ptr>(nullptr));
    return out;
}

std::optional<Rational> reconstruct_rational(const Rational& x, const mpz_class& den_bound,
                                             const Rational& eps)
{
    if (x.den() <= den_bound)
        return x;

    // continued fraction convergents h_i/k_i of x until the denominator bound
    mpz_class hm1 = 1, hm2 = 0, km1 = 0, km2 = 1;
    mpz_class num = x.num(), den = x.den();
    mpz_class best_h, best_k;
    bool have = false;

    while (den != 0) {
        mpz_class a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        mpz_class h = a * hm1 + hm2;
        mpz_class k = a * km1 + km2;
        if (k > den_bound)
            break;
        best_h = h;
        best_k = k;
        have = true;
        hm2 = hm1;
        hm1 = h;
        km2 = km1;
        km1 = k;
        num = den;
        den = r;
    }
    if (!have)
        return std::nullopt;
    Rational cand(best_h, best_k);
    if (abs(cand - x) <= eps)
        return cand;
    return std::nullopt;
}

} // namespace qdyn
