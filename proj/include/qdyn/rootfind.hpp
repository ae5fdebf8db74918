#pragma once

#include "qdyn/rational.hpp"

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace qdyn {

/*
 * Numeric stage of the quadratic-factor finder: Aberth–Ehrlich simultaneous
 * iteration in MPFR bigfloats.  Roots come back as exact rational values of
 * the bigfloat approximants; everything downstream re-verifies exactly, so
 * this layer only needs to be deterministic and accurate, never trusted.
 */
struct ApproxRoot {
    Rational re, im; // exact dyadic values of the approximation
};

// all complex roots of a squarefree integer polynomial (ascending
// coefficients, positive degree); empty optional when the iteration failed
// to converge at this precision (caller escalates)
std::optional<std::vector<ApproxRoot>> complex_roots(const std::vector<mpz_class>& coeffs,
                                                     unsigned prec_bits);

// best rational with denominator <= den_bound within eps of x (continued
// fractions); empty when no convergent lands inside the eps window
std::optional<Rational> reconstruct_rational(const Rational& x, const mpz_class& den_bound,
                                             const Rational& eps);

} // namespace qdyn
