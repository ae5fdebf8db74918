#pragma once

#include "qdyn/multipoly.hpp"
#include "qdyn/quadratic.hpp"
#include "qdyn/rational.hpp"

#include <optional>
#include <vector>

namespace qdyn {

/*
 * Dynatomic machinery for the family phi_c(z) = z^2 + c.  The N-th dynatomic
 * polynomial Phi_N(z, c) is built by Mobius inversion over the divisors of N;
 * the negative exponents become exact divisions, so a corrupted iterate
 * surfaces immediately as a division error instead of a wrong polynomial.
 */

struct DynatomicPoly {
    unsigned period = 0;
    MultiPoly poly; // vars {z, c}, integer coefficients, z-degree nu(N)
};

// z-degree of Phi_N: nu(N) = sum_{d | N} mu(N/d) * 2^d
mpz_class dynatomic_degree(unsigned N);

int mobius(unsigned n);

// phi_c^m(z) as a polynomial in {z, c}; cached
const MultiPoly& iterate_poly(unsigned m);

// Phi_N, cached; construction cross-checks the z-degree against nu(N)
const DynatomicPoly& dynatomic_poly(unsigned N);

// adopt an externally stored Phi_N into the cache; the candidate is verified
// first (degree profile, integrality, Mobius-product spot checks against the
// internal lower-period polynomials), so a stale or tampered store cannot
// poison later results; throws std::logic_error when verification fails
void seed_dynatomic_cache(unsigned N, const MultiPoly& poly);

// Phi_N(z, c0) as a univariate polynomial in z
MultiPoly specialize(unsigned N, const Rational& c0);

Rational iterate(const Rational& c, const Rational& z, unsigned n);
QuadraticElement iterate(const Rational& c, const QuadraticElement& z, unsigned n);

// least n in [1, bound] with phi_c^n(z) = z
std::optional<unsigned> exact_period(const Rational& c, const Rational& z, unsigned bound);
std::optional<unsigned> exact_period(const Rational& c, const QuadraticElement& z, unsigned bound);

// rational points of exact period N at this c, ascending
std::vector<Rational> rational_periodic_points(const Rational& c, unsigned N);

// the same points grouped into orbits; each orbit starts at its smallest
// point and orbits are ordered by that point
std::vector<std::vector<Rational>> rational_cycles(const Rational& c, unsigned N);

/*
 * An exact N-cycle whose points live in one quadratic field.  The point list
 * is consecutive under phi_c and wraps around.  validate() re-checks the
 * invariants so classifiers can reject hand-built corrupted cycles.
 */
struct OrbitCycle {
    Rational c;
    std::vector<QuadraticElement> points;

    unsigned period() const { return static_cast<unsigned>(points.size()); }
    const Discriminant& disc() const;
    QuadraticElement trace() const;
    bool is_rational_cycle() const;

    void validate() const; // throws std::domain_error on any violated invariant

    // iterate z0 for N steps and package the orbit; validates on the way
    static OrbitCycle from_seed(const Rational& c, const QuadraticElement& z0, unsigned N);
};

// quadratic-irrational exact N-cycles at c, deduplicated; each cycle is
// rotated to start at its lexicographically least point, cycles ordered by
// (disc, first point)
std::vector<OrbitCycle> quadratic_periodic_points(const Rational& c, unsigned N);

struct MonicQuadFactor {
    Rational s, n; // z^2 - s z + n
};

// orbit assembly step of quadratic_periodic_points, reusable when the factor
// list is already at hand
std::vector<OrbitCycle> assemble_quadratic_cycles(const Rational& c, unsigned N,
                                                  const std::vector<MonicQuadFactor>& factors);

/*
 * Certified low-degree factor data of a univariate polynomial over Q:
 * every reported root/factor has been verified by exact arithmetic, and the
 * excluded_* flags record when a mod-p distinct-degree probe already proved
 * that nothing of that shape can exist (skipping the numeric stage).
 */
struct LowDegreeFactors {
    std::vector<Rational> roots;                // all rational roots, ascending
    std::vector<MonicQuadFactor> quadratics;    // irreducible monic quadratic factors
    bool rational_excluded_by_modp = false;
    bool quadratic_excluded_by_modp = false;
};

LowDegreeFactors low_degree_factors(const MultiPoly& F);

} // namespace qdyn
