#pragma once

#include "qdyn/multipoly.hpp"
#include "qdyn/quadratic.hpp"
#include "qdyn/rational.hpp"

#include <string>
#include <vector>

namespace qdyn {

/*
 * The period-5 parameter curve pipeline.  Starting from the fixed sextic
 * model y^2 = f(x) and the auxiliary polynomials g, h, P0, P1 tied to it by
 * g*h = 2*(P0^2 - P1^2*f), the remainder of (c*h - P0)^2 - P1^2*f modulo
 * x^2 + ax + b yields the pair lambda1*x + lambda0; eliminating c gives the
 * plane curve P(a, b) = 0 whose rational points are the candidates for a
 * quadratic 5-cycle, and each candidate is settled end to end against the
 * dynatomic certificate.
 */

struct CurveConstants {
    MultiPoly f, g, h, P0, P1; // univariate in x, integer coefficients
};

const CurveConstants& curve_constants();

struct IdentityReport {
    bool pass = false;
    MultiPoly difference; // g*h - 2*(P0^2 - P1^2*f)
};

// coherence of the two closed forms for c; the difference polynomial is
// returned so negative controls can show exactly what broke
IdentityReport identity_check(const CurveConstants& constants = curve_constants());

struct LambdaPair {
    MultiPoly lambda1, lambda0; // vars {a, b, c}, integer coefficients
};

// remainder pair of (c*h - P0)^2 - P1^2*f modulo x^2 + ax + b, certified:
// the sextic quotient step is an exact division, the remainder identity is
// re-multiplied, and the printed c^2 leading coefficients are re-derived
const LambdaPair& build_lambdas();

struct CPPolynomial {
    MultiPoly primitive; // vars {a, b}, integer coefficients
    mpz_class content;   // positive; content * primitive = Res_c(lambda1, lambda0)
};

// fraction-free resultant of the lambda pair with respect to c; throws
// std::logic_error if the degree profile (8 in a, 9 in b) fails to verify
const CPPolynomial& build_cp();

struct CommonCResult {
    std::vector<Rational> roots; // rational c with lambda1 = lambda0 = 0, ascending
    bool degenerate = false;     // both specializations vanish identically
};

CommonCResult solve_common_c(const Rational& a, const Rational& b);

// one validity record for a candidate (a, b, c) triple
struct CandidateCheck {
    Rational c;
    bool irreducible = false;     // a^2 - 4b is not a rational square
    bool h_nonzero = false;       // neither root of x^2 + ax + b is 0 or -3
    bool y_on_curve = false;      // y = (c*h(x) - P0(x)) / P1(x) satisfies y^2 = f(x)
    std::string disc;             // squarefree field discriminant when irreducible
    unsigned quadratic_5cycles = 0; // dynatomic certificate at this c
    std::string verdict;
};

struct CaseBranchReport {
    std::string name;                      // constraint defining the branch
    std::string remaining_var;             // variable the branch resultant lives in
    MultiPoly resultant_poly;              // Res_c of the two specialized lambdas
    std::vector<Rational> rational_roots;  // of resultant_poly, ascending
    std::vector<std::string> outcomes;     // one computed conclusion per root
    bool survivors = false;
};

struct CaseAnalysisReport {
    std::string assumption; // recorded reading of the source's lambda indices
    std::vector<CaseBranchReport> branches;
    bool any_survivors = false;
};

// degenerate branches of the elimination: a = 3, b = a(a-3)/2 (leading c^2
// coefficient of lambda1 vanishes) and b = 0, b = (a-3)^2 (same for lambda0);
// every conclusion is recomputed, nothing is transcribed
CaseAnalysisReport case_analysis();

struct CPRationalPoint {
    Rational a, b;
};

// rational points of P(a, b) = 0 whose a-coordinate has height <= bound;
// b is recovered exactly by rational-root extraction, so the sweep is
// complete in b; sorted by (a, b)
std::vector<CPRationalPoint> search_points(unsigned height_bound, unsigned workers = 0);

struct EndToEndReport {
    CPRationalPoint point;
    CommonCResult common_c;
    std::vector<CandidateCheck> candidates;
    bool genuine_5cycle = false;
    std::string note;
};

// full pipeline for one curve point: common c, field checks, y recovery,
// and the dynatomic certificate for period 5
EndToEndReport end_to_end_5cycle_check(const CPRationalPoint& point);

} // namespace qdyn
