#include "qdyn/rational.hpp"

#include <cctype>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace qdyn {

Rational::Rational(long n, long d) : v_(n, d)
{
    if (d == 0)
        throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d)
{
    if (sgn(d) == 0)
        throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(n);
    v_ /= mpq_class(d);
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(std::string_view text)
{
    // strip surrounding whitespace; grammar is [-]digits[/digits]
    size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string s(text.substr(b, e - b));
    if (s.empty())
        throw std::invalid_argument("Rational::parse: empty input");

    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("Rational::parse: bad rational '" + s + "'");
    if (q.get_den() == 0)
        throw std::domain_error("Rational::parse: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

mpz_class Rational::height() const
{
    mpz_class n = abs(v_.get_num());
    return n > v_.get_den() ? n : mpz_class(v_.get_den());
}

bool Rational::is_square() const
{
    if (sgn(v_) < 0)
        return false;
    return mpz_perfect_square_p(v_.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(v_.get_den().get_mpz_t());
}

Rational Rational::sqrt_exact() const
{
    if (!is_square())
        throw std::domain_error("Rational::sqrt_exact: not a perfect square");
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), v_.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), v_.get_den().get_mpz_t());
    return Rational(n, d);
}

Rational Rational::pow(unsigned e) const
{
    mpq_class r;
    mpz_pow_ui(r.get_num().get_mpz_t(), v_.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), v_.get_den().get_mpz_t(), e);
    // num/den are coprime, so their powers are too: no canonicalize needed
    return Rational(r);
}

std::string Rational::str() const
{
    if (v_.get_den() == 1)
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.str();
}

Rational abs(const Rational& r)
{
    return r.sign() < 0 ? -r : r;
}

std::vector<Rational> height_ordered_rationals(unsigned H)
{
    std::vector<Rational> out;
    for (unsigned long h = 1; h <= H; ++h) {
        for (unsigned long q = 1; q <= h; ++q) {
            if (q < h) {
                // |p| = h exactly
                if (std::gcd(h, q) != 1) continue;
                out.emplace_back(-static_cast<long>(h), static_cast<long>(q));
                out.emplace_back(static_cast<long>(h), static_cast<long>(q));
            } else {
                // q = h, |p| <= h
                for (long p = -static_cast<long>(h); p <= static_cast<long>(h); ++p) {
                    if (std::gcd(static_cast<unsigned long>(p < 0 ? -p : p), h) != 1)
                        continue;
                    out.emplace_back(p, static_cast<long>(h));
                }
            }
        }
    }
    return out;
}

} // namespace qdyn
