#include "qdyn/intfactor.hpp"
#include "qdyn/rational.hpp"

#include <doctest.h>

#include <numeric>
#include <set>
#include <stdexcept>

using namespace qdyn;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(-4, -8).str() == "1/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(5).is_integer());
    CHECK_FALSE(Rational(5, 3).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parse accepts p/q text and rejects junk") {
    CHECK(Rational::parse("22/7") == Rational(22, 7));
    CHECK(Rational::parse("-71/48") == Rational(-71, 48));
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse("0") == Rational(0));
    CHECK_THROWS_AS(Rational::parse("3/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("str round trip") {
    for (const char* s : {"0", "1", "-1", "22/7", "-71/48", "100000000000000000001/3"})
        CHECK(Rational::parse(s).str() == s);
}

TEST_CASE("height is max(|p|, q) in lowest terms") {
    CHECK(Rational(0).height() == 1);
    CHECK(Rational(-71, 48).height() == 71);
    CHECK(Rational(1, 48).height() == 48);
    CHECK(Rational(2, 4).height() == 2);
}

TEST_CASE("square detection and exact square roots") {
    CHECK(Rational(9, 4).is_square());
    CHECK(Rational(9, 4).sqrt_exact() == Rational(3, 2));
    CHECK(Rational(0).is_square());
    CHECK_FALSE(Rational(2).is_square());
    CHECK_FALSE(Rational(-9, 4).is_square());
    CHECK(Rational(44, 3) * Rational(3, 44) == Rational(1));
}

TEST_CASE("arithmetic and division guard") {
    Rational a(3, 4), b(-2, 5);
    CHECK(a + b == Rational(7, 20));
    CHECK(a * b == Rational(-3, 10));
    CHECK(a / b == Rational(-15, 8));
    CHECK(a.pow(3) == Rational(27, 64));
    CHECK(abs(b) == Rational(2, 5));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);
}

TEST_CASE("height_ordered_rationals enumerates each height class once") {
    const auto v = height_ordered_rationals(5);

    std::set<Rational> seen(v.begin(), v.end());
    CHECK(seen.size() == v.size()); // no duplicates

    // complete: every reduced p/q with max(|p|, q) <= 5 appears
    unsigned long expected = 0;
    for (long p = -5; p <= 5; ++p)
        for (long q = 1; q <= 5; ++q)
            if (std::gcd(p < 0 ? -p : p, q) == 1 && std::max(p < 0 ? -p : p, q) <= 5)
                expected += seen.count(Rational(p, q));
    CHECK(expected == v.size());

    // ordered by height, and heights are exact
    mpz_class last_height = 0;
    for (const auto& r : v) {
        CHECK(r.height() >= last_height);
        CHECK(r.height() <= 5);
        last_height = r.height();
    }

    // the low heights come out in the documented deterministic order
    const auto two = height_ordered_rationals(2);
    REQUIRE(two.size() == 7);
    CHECK(two[0] == Rational(-1));
    CHECK(two[1] == Rational(0));
    CHECK(two[2] == Rational(1));
    CHECK(two[3] == Rational(-2));
    CHECK(two[4] == Rational(2));
    CHECK(two[5] == Rational(-1, 2));
    CHECK(two[6] == Rational(1, 2));
}

TEST_CASE("integer factoring helpers") {
    CHECK(is_probable_prime(mpz_class(1000003)));
    CHECK_FALSE(is_probable_prime(mpz_class(1000001)));

    auto f = factor(mpz_class(2 * 2 * 3 * 7 * 7 * 7));
    CHECK(f[mpz_class(2)] == 2);
    CHECK(f[mpz_class(3)] == 1);
    CHECK(f[mpz_class(7)] == 3);

    // a product of two 10-digit primes exercises the rho stage
    mpz_class p("2147483647"), q("2305843009");
    auto g = factor(p * q);
    CHECK(g[p] == 1);
    CHECK(g[q] == 1);

    auto d = divisors(mpz_class(12));
    CHECK(d == std::vector<mpz_class>{1, 2, 3, 4, 6, 12});

    auto s = squarefree_decompose(mpz_class(44));
    CHECK(s.squarefree == 11);
    CHECK(s.factor == 2);
    auto t = squarefree_decompose(mpz_class(-48));
    CHECK(t.squarefree == -3);
    CHECK(t.factor == 4);
    CHECK(t.squarefree * t.factor * t.factor == -48);
}
