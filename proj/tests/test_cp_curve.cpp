#include "qdyn/cp_curve.hpp"
#include "qdyn/dynatomic.hpp"

#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace qdyn;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string golden_dir = QDYN_GOLDEN_DIR;

// the five known rational points of P(a, b) = 0
const std::vector<std::pair<Rational, Rational>> known_points{
    {Rational(3), Rational(0)},  {Rational(0), Rational(0)}, {Rational(4), Rational(1, 3)},
    {Rational(1), Rational(8, 3)}, {Rational(6), Rational(9)},
};

} // namespace

TEST_CASE("the g*h identity holds and perturbations break it") {
    CHECK(identity_check().pass);
    CHECK(identity_check().difference.is_zero());

    CurveConstants bent = curve_constants();
    bent.P1 = bent.P1 + Rational(1);
    IdentityReport rep = identity_check(bent);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.difference.is_zero());

    bent = curve_constants();
    bent.f = bent.f + MultiPoly::variable("x");
    rep = identity_check(bent);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("remainder pair matches its published factored form") {
    const MultiPoly a = MultiPoly::variable("a");
    const MultiPoly b = MultiPoly::variable("b");
    const MultiPoly c = MultiPoly::variable("c");

    const MultiPoly q1 = a.pow(5) - a.pow(4) * Rational(10) - a.pow(3) * b * Rational(4) +
                         a.pow(3) * Rational(46) + a.pow(2) * b * Rational(30) +
                         a * b * b * Rational(3) - a.pow(2) * Rational(104) -
                         a * b * Rational(92) - b * b * Rational(10) + a * Rational(95) +
                         b * Rational(104) - Rational(24);
    const MultiPoly q0 = a.pow(5) * Rational(8) - a.pow(4) * Rational(74) -
                         a.pow(3) * b * Rational(32) + a.pow(3) * Rational(271) +
                         a.pow(2) * b * Rational(222) + a * b * b * Rational(24) -
                         a.pow(2) * Rational(452) - a * b * Rational(542) -
                         b * b * Rational(74) + a * Rational(325) + b * Rational(452) -
                         Rational(110);
    const MultiPoly lam1 = (a - Rational(3)) * (b * Rational(2) - a * (a - Rational(3))) * c *
                               c * Rational(16) -
                           q1 * c * Rational(4) - q0;

    const MultiPoly r1 = a.pow(4) * b - a.pow(3) * b * Rational(10) -
                         a.pow(2) * b * b * Rational(3) + a.pow(2) * b * Rational(46) +
                         a * b * b * Rational(20) + b.pow(3) - a * b * Rational(104) -
                         b * b * Rational(46) + b * Rational(95) - Rational(9);
    const MultiPoly r0 = a.pow(4) * b * Rational(8) - a.pow(3) * b * Rational(74) -
                         a.pow(2) * b * b * Rational(24) + a.pow(2) * b * Rational(271) +
                         a * b * b * Rational(148) + b.pow(3) * Rational(8) -
                         a * b * Rational(452) - b * b * Rational(271) + b * Rational(325) -
                         Rational(64);
    const MultiPoly lam0 = b * (b - (a - Rational(3)) * (a - Rational(3))) * c * c *
                               Rational(16) -
                           r1 * c * Rational(4) - r0;

    const LambdaPair& L = build_lambdas();
    CHECK(L.lambda1 == lam1);
    CHECK(L.lambda0 == lam0);

    // spot coefficients of the c^0 block of lambda0 (vars are {a, b, c})
    CHECK(L.lambda0.coeff({0, 1, 0}) == Rational(-325));
    CHECK(L.lambda0.coeff({0, 0, 0}) == Rational(64));

    // lambda1 collapses to the constant -64 at (a, b) = (3, 0)
    const MultiPoly at30 = L.lambda1.substitute("a", Rational(3)).substitute("b", Rational(0));
    CHECK(at30.is_constant());
    CHECK(at30.constant_value() == Rational(-64));
}

TEST_CASE("frozen specializations of the lambda pair") {
    const MultiPoly c = MultiPoly::variable("c");
    const LambdaPair& L = build_lambdas();
    const auto spec = [&](const MultiPoly& p, long a0, long b0) {
        return p.substitute("a", Rational(a0)).substitute("b", Rational(b0)).without_var("a").without_var("b");
    };
    CHECK(spec(L.lambda0, 3, 0) == c * Rational(36) + Rational(64));
    CHECK(spec(L.lambda1, 0, 0) == c * Rational(96) + Rational(110));
    CHECK(spec(L.lambda0, 0, 0) == c * Rational(36) + Rational(64));
    CHECK(spec(L.lambda1, 6, 9) == c * Rational(-456) - Rational(598));
    CHECK(spec(L.lambda0, 6, 9) == c * Rational(-1332) - Rational(1538));
}

TEST_CASE("golden files pin the lambda pair and the eliminant") {
    const LambdaPair& L = build_lambdas();
    CHECK(slurp(golden_dir + "/lambda1.txt") == L.lambda1.str() + "\n");
    CHECK(slurp(golden_dir + "/lambda0.txt") == L.lambda0.str() + "\n");

    const nlohmann::json j = nlohmann::json::parse(slurp(golden_dir + "/cp_primitive.json"));
    const CPPolynomial& cp = build_cp();
    CHECK(j.at("content").get<std::string>() == cp.content.get_str());
    CHECK(MultiPoly::from_json(j.at("primitive")) == cp.primitive);
}

TEST_CASE("eliminant P(a, b): degree profile, content, and frozen values") {
    const CPPolynomial& cp = build_cp();
    CHECK(cp.content == 256);
    CHECK(cp.primitive.degree("a") == 8);
    CHECK(cp.primitive.degree("b") == 9);
    CHECK(cp.primitive.term_count() == 60);
    for (const auto& [exps, coef] : cp.primitive.terms())
        CHECK(coef.is_integer());

    const auto val = [&](long a0, const Rational& b0) {
        return cp.primitive.eval({{"a", Rational(a0)}, {"b", b0}});
    };
    CHECK(val(0, Rational(1)) == Rational(1154144));
    CHECK(val(1, Rational(1)) == Rational(365215));
    CHECK(val(-1, Rational(2)) == Rational(81428480));

    // leading graded-lex terms
    auto it = cp.primitive.terms().begin();
    CHECK(it->first == Exponents{8, 2});
    CHECK(it->second == Rational(-72));
    ++it;
    CHECK(it->first == Exponents{7, 3});
    CHECK(it->second == Rational(786));
    ++it;
    CHECK(it->first == Exponents{6, 4});
    CHECK(it->second == Rational(769));
    ++it;
    CHECK(it->first == Exponents{5, 5});
    CHECK(it->second == Rational(-800));

    for (const auto& [a0, b0] : known_points)
        CHECK(cp.primitive.eval({{"a", a0}, {"b", b0}}).is_zero());
}

TEST_CASE("specialization commutes with the c-resultant") {
    const LambdaPair& L = build_lambdas();
    const CPPolynomial& cp = build_cp();
    const Rational content(cp.content);

    std::mt19937 rng(550914);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 3);
    int compared = 0;
    while (compared < 20) {
        const Rational a0(num(rng), den(rng));
        const Rational b0(num(rng), den(rng));
        const MultiPoly s1 =
            L.lambda1.substitute("a", a0).substitute("b", b0).without_var("a").without_var("b");
        const MultiPoly s0 =
            L.lambda0.substitute("a", a0).substitute("b", b0).without_var("a").without_var("b");
        if (s1.degree("c") != 2 || s0.degree("c") != 2)
            continue; // a degenerate branch: the specialized resultant differs
        const MultiPoly res = resultant(s1, s0, "c");
        REQUIRE(res.is_constant());
        CHECK(res.constant_value() ==
              content * cp.primitive.eval({{"a", a0}, {"b", b0}}));
        ++compared;
    }
}

TEST_CASE("common-c solver on the known points") {
    CommonCResult cc = solve_common_c(Rational(4), Rational(1, 3));
    CHECK_FALSE(cc.degenerate);
    CHECK(cc.roots == std::vector<Rational>{Rational(-2)});

    cc = solve_common_c(Rational(1), Rational(8, 3));
    CHECK(cc.roots == std::vector<Rational>{Rational(-4, 3)});

    const std::vector<std::pair<Rational, Rational>> no_common{
        {Rational(3), Rational(0)}, {Rational(0), Rational(0)}, {Rational(6), Rational(9)}};
    for (const auto& [a0, b0] : no_common) {
        cc = solve_common_c(a0, b0);
        CHECK_FALSE(cc.degenerate);
        CHECK(cc.roots.empty());
    }
}

TEST_CASE("degenerate-branch case analysis") {
    const CaseAnalysisReport rep = case_analysis();
    CHECK_FALSE(rep.assumption.empty());
    CHECK(rep.assumption.find("lambda0") != std::string::npos);
    REQUIRE(rep.branches.size() == 4);

    const CaseBranchReport& a3 = rep.branches[0];
    CHECK(a3.name == "a = 3");
    CHECK(a3.remaining_var == "b");
    CHECK(a3.rational_roots == std::vector<Rational>{Rational(0)});
    CHECK_FALSE(a3.survivors);
    REQUIRE(a3.outcomes.size() == 1);
    CHECK(a3.outcomes[0].find("no common c (lambda1 = -64") != std::string::npos);

    // the a = 3 resultant, written out
    const MultiPoly b = MultiPoly::variable("b");
    const MultiPoly expected = b.pow(7) * Rational(-96) + b.pow(6) * Rational(-1264) +
                               b.pow(5) * Rational(-4256) + b.pow(4) * Rational(32) +
                               b.pow(3) * Rational(13248) + b.pow(2) * Rational(37632) +
                               b * Rational(92160);
    CHECK(a3.resultant_poly == expected);

    const CaseBranchReport& mid = rep.branches[1];
    CHECK(mid.name == "b = a(a-3)/2");
    CHECK(mid.remaining_var == "a");
    CHECK(mid.rational_roots == std::vector<Rational>{Rational(3)});
    CHECK_FALSE(mid.survivors);

    CHECK(rep.branches[2].name == "b = 0");
    CHECK(rep.branches[2].rational_roots.empty());
    CHECK(rep.branches[3].name == "b = (a-3)^2");
    CHECK(rep.branches[3].rational_roots.empty());
    CHECK_FALSE(rep.any_survivors);
}

TEST_CASE("bounded-height point search finds exactly the known points") {
    const auto small = search_points(1);
    REQUIRE(small.size() == 2);
    CHECK(small[0].a == Rational(0));
    CHECK(small[0].b == Rational(0));
    CHECK(small[1].a == Rational(1));
    CHECK(small[1].b == Rational(8, 3));

    const auto pts = search_points(10, 1);
    REQUIRE(pts.size() == 5);
    const CPPolynomial& cp = build_cp();
    for (const CPRationalPoint& p : pts) {
        CHECK(cp.primitive.eval({{"a", p.a}, {"b", p.b}}).is_zero());
        bool known = false;
        for (const auto& [a0, b0] : known_points)
            known = known || (p.a == a0 && p.b == b0);
        CHECK(known);
    }
    // sorted by (a, b)
    CHECK(pts[0].a == Rational(0));
    CHECK(pts[4].a == Rational(6));
}

TEST_CASE("end-to-end period-5 verdicts") {
    EndToEndReport rep = end_to_end_5cycle_check({Rational(4), Rational(1, 3)});
    REQUIRE(rep.candidates.size() == 1);
    const CandidateCheck& chk = rep.candidates[0];
    CHECK(chk.c == Rational(-2));
    CHECK(chk.irreducible);
    CHECK(chk.h_nonzero);
    CHECK(chk.y_on_curve);
    CHECK(chk.disc == "33");
    CHECK(chk.quadratic_5cycles == 0);
    CHECK_FALSE(rep.genuine_5cycle);
    CHECK(rep.note.find("affine") != std::string::npos);

    rep = end_to_end_5cycle_check({Rational(1), Rational(8, 3)});
    REQUIRE(rep.candidates.size() == 1);
    CHECK(rep.candidates[0].c == Rational(-4, 3));
    CHECK(rep.candidates[0].irreducible);
    CHECK(rep.candidates[0].disc == "-87");
    CHECK(rep.candidates[0].y_on_curve);
    CHECK(rep.candidates[0].quadratic_5cycles == 0);
    CHECK_FALSE(rep.genuine_5cycle);

    rep = end_to_end_5cycle_check({Rational(3), Rational(0)});
    CHECK(rep.common_c.roots.empty());
    CHECK(rep.candidates.empty());
    CHECK_FALSE(rep.genuine_5cycle);

    CHECK_THROWS_AS(end_to_end_5cycle_check({Rational(1), Rational(1)}),
                    std::domain_error);
}
