#include "qdyn/quadratic.hpp"

#include "qdyn/intfactor.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace qdyn {

Discriminant::Discriminant(const mpz_class& d) : v_(d)
{
    if (d == 0 || d == 1)
        throw std::domain_error("Discriminant: value must not be 0 or 1");
    auto dec = squarefree_decompose(d);
    if (dec.squarefree != d)
        throw std::domain_error("Discriminant: " + d.get_str() +
                                " is not squarefree; normalize the surd first");
}

SurdForm normalize_surd(const Rational& r)
{
    if (r.is_zero())
        return {Rational(0), std::nullopt};
    // sqrt(u/v) = sqrt(u*v)/v; split u*v into squarefree * square
    mpz_class uv = r.num() * r.den();
    auto dec = squarefree_decompose(uv);
    Rational coeff(dec.factor, r.den());
    if (dec.squarefree == 1)
        return {coeff, std::nullopt};
    return {coeff, Discriminant(dec.squarefree)};
}

void QuadraticElement::check_same_field(const QuadraticElement& o) const
{
    if (d_ != o.d_)
        throw std::domain_error("QuadraticElement: mixed discriminants " +
                                d_.value().get_str() + " and " + o.d_.value().get_str());
}

QuadraticElement& QuadraticElement::operator+=(const QuadraticElement& o)
{
    check_same_field(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadraticElement& QuadraticElement::operator-=(const QuadraticElement& o)
{
    check_same_field(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadraticElement& QuadraticElement::operator*=(const QuadraticElement& o)
{
    check_same_field(o);
    Rational D(d_.value());
    Rational na = a_ * o.a_ + b_ * o.b_ * D;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QuadraticElement& QuadraticElement::operator/=(const QuadraticElement& o)
{
    check_same_field(o);
    Rational n = o.norm();
    if (n.is_zero())
        throw std::domain_error("QuadraticElement: division by zero");
    // multiply by conjugate / norm
    QuadraticElement t = *this;
    t *= o.conjugate();
    a_ = t.a_ / n;
    b_ = t.b_ / n;
    return *this;
}

bool operator==(const QuadraticElement& a, const QuadraticElement& b)
{
    // rational values are equal across field tags; irrational ones need the same tag
    if (a.is_rational() && b.is_rational())
        return a.a_ == b.a_;
    return a.d_ == b.d_ && a.a_ == b.a_ && a.b_ == b.b_;
}

std::string QuadraticElement::str() const
{
    if (is_rational())
        return a_.str();
    std::string surd;
    Rational ab = qdyn::abs(b_);
    if (ab == Rational(1))
        surd = "sqrt(" + d_.value().get_str() + ")";
    else
        surd = ab.str() + "*sqrt(" + d_.value().get_str() + ")";
    if (a_.is_zero())
        return (b_.sign() < 0 ? "-" : "") + surd;
    return a_.str() + (b_.sign() < 0 ? " - " : " + ") + surd;
}

std::ostream& operator<<(std::ostream& os, const QuadraticElement& x)
{
    return os << x.str();
}

QuadraticElement QuadraticElement::parse(std::string_view text)
{
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s.push_back(ch);
    if (s.empty())
        throw std::invalid_argument("QuadraticElement::parse: empty input");

    auto parse_surd_term = [](const std::string& term, Rational& coeff, mpz_class& disc) {
        // term is [r/s*]sqrt(D) with no sign and no spaces
        size_t sp = term.find("sqrt(");
        if (sp == std::string::npos || term.back() != ')')
            throw std::invalid_argument("QuadraticElement::parse: bad surd term '" + term + "'");
        std::string pre = term.substr(0, sp);
        if (pre.empty())
            coeff = Rational(1);
        else {
            if (pre.back() != '*')
                throw std::invalid_argument("QuadraticElement::parse: expected '*' before sqrt");
            coeff = Rational::parse(pre.substr(0, pre.size() - 1));
        }
        disc = mpz_class(term.substr(sp + 5, term.size() - sp - 6));
    };

    // split at the top-level '+'/'-' separating rational and surd parts (sign
    // at position 0 binds to the first part)
    size_t split = std::string::npos;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s.find("sqrt(", i) != std::string::npos &&
            std::isdigit(static_cast<unsigned char>(s[i - 1]))) {
            split = i;
            break;
        }
    }

    if (s.find("sqrt(") == std::string::npos)
        throw std::invalid_argument("QuadraticElement::parse: no sqrt() in '" + s +
                                    "'; use Rational::parse for plain rationals");

    Rational a(0), b;
    mpz_class disc;
    if (split == std::string::npos) {
        // pure surd term, possibly with a leading sign
        bool neg = false;
        std::string t = s;
        if (t[0] == '+' || t[0] == '-') {
            neg = t[0] == '-';
            t = t.substr(1);
        }
        parse_surd_term(t, b, disc);
        if (neg)
            b = -b;
    } else {
        a = Rational::parse(s.substr(0, split));
        bool neg = s[split] == '-';
        parse_surd_term(s.substr(split + 1), b, disc);
        if (neg)
            b = -b;
    }
    return {a, b, Discriminant(disc)};
}

MultiPoly minimal_polynomial(const QuadraticElement& x, const std::string& var)
{
    MultiPoly t = MultiPoly::variable(var);
    if (x.is_rational())
        return t - MultiPoly::constant(x.rational_part(), {var});
    return t * t - MultiPoly::constant(x.trace(), {var}) * t +
           MultiPoly::constant(x.norm(), {var});
}

QuadraticElement eval_at(const MultiPoly& p, const QuadraticElement& x)
{
    const Rational zero(0);
    QuadraticElement acc(zero, zero, x.disc());
    if (p.is_zero())
        return acc;

    // locate the single active variable and build dense coefficients
    int idx = -1;
    for (size_t i = 0; i < p.vars().size(); ++i)
        for (const auto& [e, c] : p.terms())
            if (e[i] > 0) {
                if (idx >= 0 && idx != static_cast<int>(i))
                    throw std::domain_error("eval_at: polynomial is not univariate");
                idx = static_cast<int>(i);
            }
    if (idx < 0)
        return {p.constant_value(), zero, x.disc()};

    int deg = 0;
    for (const auto& [e, c] : p.terms())
        deg = std::max(deg, static_cast<int>(e[static_cast<size_t>(idx)]));
    std::vector<Rational> a(static_cast<size_t>(deg) + 1, zero);
    for (const auto& [e, c] : p.terms())
        a[e[static_cast<size_t>(idx)]] += c;

    for (size_t k = a.size(); k-- > 0;) {
        acc *= x;
        acc += QuadraticElement(a[k], zero, x.disc());
    }
    return acc;
}

} // namespace qdyn
