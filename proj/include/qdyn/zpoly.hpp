#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace qdyn::zp {

/*
 * Dense univariate polynomials over Z/p for word-size primes, ascending
 * coefficients.  Used for cheap rigorous prescreens: a factor over Q reduces
 * modulo every prime that preserves the leading coefficient, so a missing
 * factor pattern mod one good prime proves absence over Q.
 */

using Poly = std::vector<uint64_t>;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod(uint64_t a, uint64_t p);

int deg(const Poly& f); // -1 for the zero polynomial
void trim(Poly& f);
Poly reduce(const std::vector<mpz_class>& coeffs, uint64_t p);
Poly mul(const Poly& a, const Poly& b, uint64_t p);
Poly sub(const Poly& a, const Poly& b, uint64_t p);
Poly monic(Poly f, uint64_t p);
struct DivModP {
    Poly quotient, remainder;
};
DivModP divmod(const Poly& a, const Poly& b, uint64_t p);
Poly gcd(Poly a, Poly b, uint64_t p); // monic
Poly derivative(const Poly& f, uint64_t p);
Poly powmod_poly(Poly base, mpz_class e, const Poly& mod, uint64_t p);

struct FactorPattern {
    bool usable = false; // prime preserved degree and the reduction is squarefree
    int linear_degree = 0;    // degree of the product of linear factors
    int quadratic_degree = 0; // degree of the product of irreducible quadratic factors
};

// distinct-degree probe of an integer polynomial mod p
FactorPattern factor_pattern(const std::vector<mpz_class>& coeffs, uint64_t p);

// deterministic supply of large primes for the prescreens
const std::vector<uint64_t>& screening_primes();

} // namespace qdyn::zp
