#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

namespace qdyn {

/*
 * Integer factoring helpers: trial division for small primes, Pollard-Brent
 * rho beyond, with GMP's Miller-Rabin as the primality gate.  Deterministic
 * (fixed rho increments), intended for the coefficient sizes that appear in
 * height-bounded searches.
 */

bool is_probable_prime(const mpz_class& n);

// prime -> exponent, for |n| >= 1; sign is the caller's business
std::map<mpz_class, unsigned> factor(mpz_class n);

// all positive divisors of |n|, ascending
std::vector<mpz_class> divisors(const mpz_class& n);

struct SquarefreeDecomposition {
    mpz_class squarefree; // same sign as the input
    mpz_class factor;     // positive; input = squarefree * factor^2
};

// precondition: n != 0
SquarefreeDecomposition squarefree_decompose(const mpz_class& n);

} // namespace qdyn
