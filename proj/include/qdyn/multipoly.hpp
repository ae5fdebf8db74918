#pragma once

#include "qdyn/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qdyn {

using Exponents = std::vector<uint32_t>;

// graded-lex, larger monomial first (so map iteration starts at the leading term)
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/*
 * Sparse multivariate polynomial over Q.  Terms are keyed by exponent vectors
 * aligned with the variable list; binary operations merge variable sets by
 * name (left operand's order first, then the right operand's new variables).
 * Canonical text and JSON forms list terms in graded-lex descending order.
 */
class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexGreater>;

    MultiPoly() = default; // zero polynomial, no variables
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(const Rational& c, std::vector<std::string> vars = {});
    static MultiPoly variable(const std::string& name);
    static MultiPoly monomial(std::vector<std::string> vars, Exponents exps, const Rational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // precondition: is_constant()

    // degree of the zero polynomial is -1 by convention
    int degree(const std::string& var) const;
    int total_degree() const;
    bool uses(const std::string& var) const { return degree(var) > 0; }

    Rational coeff(const Exponents& e) const;
    void set_term(Exponents e, const Rational& c);

    int var_index(const std::string& name) const; // -1 if absent
    MultiPoly with_vars(const std::vector<std::string>& vars) const; // re-embed; must cover vars()
    MultiPoly without_var(const std::string& name) const; // precondition: degree(name) <= 0

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const Rational& c);
    friend MultiPoly operator*(const Rational& c, const MultiPoly& a) { return a * c; }
    friend MultiPoly operator+(const MultiPoly& a, const Rational& c)
    {
        return a + MultiPoly::constant(c, a.vars());
    }
    friend MultiPoly operator+(const Rational& c, const MultiPoly& a) { return a + c; }
    friend MultiPoly operator-(const MultiPoly& a, const Rational& c) { return a + (-c); }
    friend MultiPoly operator-(const Rational& c, const MultiPoly& a)
    {
        return MultiPoly::constant(c, a.vars()) - a;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    MultiPoly pow(unsigned e) const;

    MultiPoly substitute(const std::string& var, const MultiPoly& value) const;
    MultiPoly substitute(const std::string& var, const Rational& value) const;
    Rational eval(const std::map<std::string, Rational>& point) const;

    std::string str() const;
    nlohmann::json to_json() const;
    static MultiPoly from_json(const nlohmann::json& j);

    friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    friend std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b);
};

// coefficient view of p along one variable; invariant: reassemble() == p
struct UniView {
    std::string var;
    std::vector<std::string> all_vars;   // variable list shared by the coefficients
    std::vector<MultiPoly> coeffs;       // ascending degree in var

    static UniView of(const MultiPoly& p, const std::string& var);
    int degree() const;
    MultiPoly reassemble() const;
};

// quotient of an exact polynomial division; throws std::domain_error when the
// division leaves a remainder (callers rely on that as a correctness check)
MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& q);

struct DivMod {
    MultiPoly quotient;
    MultiPoly remainder;
};

// division by a divisor that is monic in `var`; remainder has smaller var-degree
DivMod divide_monic(const MultiPoly& p, const MultiPoly& divisor, const std::string& var);

// Sylvester-determinant resultant via fraction-free Bareiss elimination;
// both inputs must have positive degree in `var`
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, const std::string& var);

// independent route: subresultant polynomial remainder sequence
MultiPoly resultant_prs(const MultiPoly& p, const MultiPoly& q, const std::string& var);

// all rational roots of a univariate polynomial (each listed once), ascending
std::vector<Rational> rational_roots(const MultiPoly& p);

// multiplicity of r as a root of univariate p (0 when not a root)
unsigned root_multiplicity(const MultiPoly& p, const Rational& r);

struct ContentPrimitive {
    mpz_class content;  // positive for nonzero input, 0 for zero input
    MultiPoly primitive;
};

// integer-coefficient polynomials only; content * primitive == p
ContentPrimitive content_primitive(const MultiPoly& p);

} // namespace qdyn
