#pragma once

#include "qdyn/multipoly.hpp"
#include "qdyn/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace qdyn {

/*
 * A quadratic field discriminant tag: a squarefree integer other than 0 and 1.
 * Construction validates squarefreeness, so inputs like 12 must be normalized
 * first (see normalize_surd, which rewrites sqrt(12) as 2*sqrt(3)).
 */
class Discriminant {
public:
    explicit Discriminant(const mpz_class& d);
    explicit Discriminant(long d) : Discriminant(mpz_class(d)) {}

    const mpz_class& value() const { return v_; }

    friend bool operator==(const Discriminant& a, const Discriminant& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Discriminant& a, const Discriminant& b) { return a.v_ != b.v_; }

private:
    mpz_class v_;
};

// sqrt(r) written as coefficient * sqrt(disc) with disc squarefree;
// disc is empty when r is a perfect square (then sqrt(r) = coefficient)
struct SurdForm {
    Rational coefficient;
    std::optional<Discriminant> disc;
};

SurdForm normalize_surd(const Rational& r);

/*
 * Element a + b*sqrt(D) of the quadratic field Q(sqrt(D)).  Every element
 * carries its discriminant tag, including rational ones (b = 0); mixing tags
 * in arithmetic throws.  Text form is "p/q + r/s*sqrt(D)", or just "p/q" for
 * rational elements.
 */
class QuadraticElement {
public:
    QuadraticElement(Rational a, Rational b, Discriminant d)
        : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

    static QuadraticElement parse(std::string_view text);

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    const Discriminant& disc() const { return d_; }

    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QuadraticElement conjugate() const { return {a_, -b_, d_}; }
    Rational trace() const { return a_ + a_; }
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_.value()); }

    QuadraticElement operator-() const { return {-a_, -b_, d_}; }
    QuadraticElement& operator+=(const QuadraticElement& o);
    QuadraticElement& operator-=(const QuadraticElement& o);
    QuadraticElement& operator*=(const QuadraticElement& o);
    QuadraticElement& operator/=(const QuadraticElement& o);

    friend QuadraticElement operator+(QuadraticElement x, const QuadraticElement& y) { return x += y; }
    friend QuadraticElement operator-(QuadraticElement x, const QuadraticElement& y) { return x -= y; }
    friend QuadraticElement operator*(QuadraticElement x, const QuadraticElement& y) { return x *= y; }
    friend QuadraticElement operator/(QuadraticElement x, const QuadraticElement& y) { return x /= y; }

    QuadraticElement operator+(const Rational& r) const { return {a_ + r, b_, d_}; }
    QuadraticElement operator*(const Rational& r) const { return {a_ * r, b_ * r, d_}; }

    friend bool operator==(const QuadraticElement& a, const QuadraticElement& b);
    friend bool operator!=(const QuadraticElement& a, const QuadraticElement& b) { return !(a == b); }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const QuadraticElement& x);

private:
    Rational a_, b_;
    Discriminant d_;

    void check_same_field(const QuadraticElement& o) const;
};

// monic minimal polynomial of x over Q in the named variable:
// degree 1 when x is rational, else t^2 - trace*t + norm
MultiPoly minimal_polynomial(const QuadraticElement& x, const std::string& var = "t");

// evaluate a univariate polynomial at a quadratic element (Horner)
QuadraticElement eval_at(const MultiPoly& p, const QuadraticElement& x);

} // namespace qdyn
