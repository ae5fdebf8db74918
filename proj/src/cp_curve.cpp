#include "qdyn/cp_curve.hpp"

#include "qdyn/dynatomic.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace qdyn {

namespace {

MultiPoly upoly(std::vector<long> ascending) {
    MultiPoly p(std::vector<std::string>{"x"});
    for (std::size_t i = 0; i < ascending.size(); ++i) {
        if (ascending[i] != 0)
            p.set_term({static_cast<uint32_t>(i)}, Rational(ascending[i]));
    }
    return p;
}

const std::vector<std::string> kLambdaVars{"a", "b", "c"};

} // namespace

const CurveConstants& curve_constants() {
    static const CurveConstants k = {
        /* f  */ upoly({1, 6, 5, 22, 22, 8, 1}),
        /* g  */ upoly({64, 110, 325, 452, 271, 74, 8}),
        /* h  */ upoly({0, 0, 72, 48, 8}),
        /* P0 */ upoly({-9, -24, -95, -104, -46, -10, -1}),
        /* P1 */ upoly({-9, 3, 6, 1}),
    };
    return k;
}

IdentityReport identity_check(const CurveConstants& k) {
    IdentityReport rep;
    rep.difference =
        k.g * k.h - Rational(2) * (k.P0 * k.P0 - k.P1 * k.P1 * k.f);
    rep.pass = rep.difference.is_zero();
    return rep;
}

namespace {

LambdaPair compute_lambdas() {
    const CurveConstants& k = curve_constants();
    if (!identity_check(k).pass)
        throw std::logic_error("build_lambdas: curve constants are incoherent");

    const std::vector<std::string> work_vars{"x", "a", "b", "c"};
    const MultiPoly c = MultiPoly::variable("c");
    const MultiPoly B =
        ((c * k.h - k.P0).pow(2) - k.P1 * k.P1 * k.f).with_vars(work_vars);

    // h * E = 2 * B certifies the sextic E = 2c^2 h - 4c P0 + g
    const MultiPoly E = exact_divide(Rational(2) * B, k.h.with_vars(work_vars));
    const MultiPoly E_direct =
        (Rational(2) * c * c * k.h - Rational(4) * c * k.P0 + k.g).with_vars(work_vars);
    if (E != E_direct)
        throw std::logic_error("build_lambdas: quotient disagrees with the closed form");

    MultiPoly modulus(work_vars);
    modulus.set_term({2, 0, 0, 0}, Rational(1));
    modulus.set_term({1, 1, 0, 0}, Rational(1));
    modulus.set_term({0, 0, 1, 0}, Rational(1));

    const DivMod dm = divide_monic(E, modulus, "x");
    if (dm.quotient * modulus + dm.remainder != E)
        throw std::logic_error("build_lambdas: remainder identity failed to verify");
    if (dm.remainder.degree("x") > 1)
        throw std::logic_error("build_lambdas: remainder degree exceeds 1 in x");

    const UniView rem = UniView::of(dm.remainder, "x");
    LambdaPair out;
    out.lambda1 = rem.coeffs.size() > 1 ? rem.coeffs[1].without_var("x").with_vars(kLambdaVars)
                                        : MultiPoly(kLambdaVars);
    out.lambda0 = rem.coeffs[0].without_var("x").with_vars(kLambdaVars);

    for (const MultiPoly* lp : {&out.lambda1, &out.lambda0}) {
        if (lp->degree("c") != 2)
            throw std::logic_error("build_lambdas: lambda degree in c is not 2");
        for (const auto& [exp, coef] : lp->terms()) {
            if (!coef.is_integer())
                throw std::logic_error("build_lambdas: non-integer lambda coefficient");
        }
    }

    // the leading c^2 coefficients drive the case analysis; re-derive them
    const MultiPoly a = MultiPoly::variable("a");
    const MultiPoly b = MultiPoly::variable("b");
    const MultiPoly lead1_expected =
        Rational(16) * (a - Rational(3)) * (Rational(2) * b - a * (a - Rational(3)));
    const MultiPoly lead0_expected =
        Rational(16) * b * (b - (a - Rational(3)).pow(2));
    if (UniView::of(out.lambda1, "c").coeffs[2].without_var("c") != lead1_expected)
        throw std::logic_error("build_lambdas: lambda1 c^2 coefficient mismatch");
    if (UniView::of(out.lambda0, "c").coeffs[2].without_var("c") != lead0_expected)
        throw std::logic_error("build_lambdas: lambda0 c^2 coefficient mismatch");

    return out;
}

} // namespace

const LambdaPair& build_lambdas() {
    static const LambdaPair pair = compute_lambdas();
    return pair;
}

const CPPolynomial& build_cp() {
    static const CPPolynomial cp = [] {
        const LambdaPair& L = build_lambdas();
        const MultiPoly res = resultant(L.lambda1, L.lambda0, "c");
        ContentPrimitive split = content_primitive(res);
        CPPolynomial out{split.primitive.with_vars({"a", "b"}), split.content};
        if (out.primitive.degree("a") != 8 || out.primitive.degree("b") != 9)
            throw std::logic_error(
                "build_cp: resultant degrees (" +
                std::to_string(out.primitive.degree("a")) + " in a, " +
                std::to_string(out.primitive.degree("b")) +
                " in b) do not match the expected profile 8/9");
        return out;
    }();
    return cp;
}

namespace {

std::vector<Rational> roots_or_empty(const MultiPoly& p) {
    if (p.is_constant()) return {}; // nonzero constant: no roots
    return rational_roots(p);
}

} // namespace

CommonCResult solve_common_c(const Rational& a, const Rational& b) {
    const LambdaPair& L = build_lambdas();
    const MultiPoly l1 = L.lambda1.substitute("a", a).substitute("b", b);
    const MultiPoly l0 = L.lambda0.substitute("a", a).substitute("b", b);

    CommonCResult out;
    if (l1.is_zero() && l0.is_zero()) {
        out.degenerate = true;
        return out;
    }
    if (l1.is_zero()) {
        out.roots = roots_or_empty(l0);
        return out;
    }
    if (l0.is_zero()) {
        out.roots = roots_or_empty(l1);
        return out;
    }
    for (const Rational& r : roots_or_empty(l1)) {
        if (l0.substitute("c", r).is_zero())
            out.roots.push_back(r);
    }
    return out;
}

namespace {

CandidateCheck check_candidate(const Rational& a, const Rational& b, const Rational& c) {
    const CurveConstants& k = curve_constants();
    CandidateCheck chk;
    chk.c = c;

    // roots of x^2 + ax + b land on a zero of h exactly when 0 or -3 is a root
    chk.h_nonzero = !(b.is_zero() || b == Rational(3) * a - Rational(9));

    const Rational disc = a * a - Rational(4) * b;
    const SurdForm surd = normalize_surd(disc);
    chk.irreducible = surd.disc.has_value();

    if (!chk.h_nonzero) {
        chk.verdict = "rejected: a root of x^2 + ax + b lies in {0, -3}, so h(x) = 0";
        return chk;
    }
    if (!chk.irreducible) {
        chk.verdict = "rejected: a^2 - 4b is a rational square, so x is rational "
                      "(settled by the rational-periodic-point theory)";
        return chk;
    }

    chk.disc = surd.disc->value().get_str();
    const Rational half(1, 2);
    const QuadraticElement x(-a * half, surd.coefficient * half, *surd.disc);

    const QuadraticElement p1x = eval_at(k.P1, x);
    if (p1x.is_zero()) {
        chk.verdict = "rejected: P1(x) = 0, y cannot be recovered";
        return chk;
    }
    const QuadraticElement y = (eval_at(k.h, x) * c - eval_at(k.P0, x)) / p1x;
    chk.y_on_curve = (y * y == eval_at(k.f, x));
    if (!chk.y_on_curve) {
        chk.verdict = "rejected: recovered y fails y^2 = f(x)";
        return chk;
    }

    chk.quadratic_5cycles =
        static_cast<unsigned>(quadratic_periodic_points(c, 5).size());
    if (chk.quadratic_5cycles == 0) {
        chk.verdict = "rejected: no quadratic 5-cycle at c = " + c.str() +
                      " (dynatomic certificate)";
    } else {
        chk.verdict = "genuine quadratic 5-cycle at c = " + c.str();
    }
    return chk;
}

std::string outcome_line(const Rational& a, const Rational& b) {
    const CommonCResult cc = solve_common_c(a, b);
    std::string line = "(a, b) = (" + a.str() + ", " + b.str() + "): ";
    if (cc.degenerate)
        return line + "degenerate (both lambdas vanish identically)";
    if (cc.roots.empty()) {
        const MultiPoly l1 =
            build_lambdas().lambda1.substitute("a", a).substitute("b", b);
        if (l1.is_constant() && !l1.is_zero())
            return line + "no common c (lambda1 = " + l1.constant_value().str() +
                   " identically)";
        return line + "no common rational c";
    }
    for (std::size_t i = 0; i < cc.roots.size(); ++i) {
        const CandidateCheck chk = check_candidate(a, b, cc.roots[i]);
        line += (i ? "; " : "") + ("c = " + cc.roots[i].str() + ": " + chk.verdict);
    }
    return line;
}

struct BranchSpec {
    std::string name;
    std::string subst_var;
    MultiPoly value;        // substituted for subst_var
    std::string remaining;  // branch polynomial's variable
    // (a, b) pair induced by one rational root of the branch resultant
    std::pair<Rational, Rational> (*pair_of_root)(const Rational&);
};

CaseBranchReport run_branch(const BranchSpec& spec) {
    const LambdaPair& L = build_lambdas();
    const MultiPoly l1 = L.lambda1.substitute(spec.subst_var, spec.value);
    const MultiPoly l0 = L.lambda0.substitute(spec.subst_var, spec.value);
    if (l1.degree("c") < 1 || l0.degree("c") < 1)
        throw std::logic_error("case_analysis: branch lost its c-dependence");

    CaseBranchReport rep;
    rep.name = spec.name;
    rep.remaining_var = spec.remaining;
    rep.resultant_poly =
        resultant(l1, l0, "c").without_var(spec.subst_var).with_vars({spec.remaining});
    if (rep.resultant_poly.is_zero())
        throw std::logic_error("case_analysis: branch resultant vanished identically");
    rep.rational_roots = roots_or_empty(rep.resultant_poly);

    for (const Rational& r : rep.rational_roots) {
        auto [a0, b0] = spec.pair_of_root(r);
        std::string line = outcome_line(a0, b0);
        rep.survivors = rep.survivors || line.find("genuine") != std::string::npos;
        rep.outcomes.push_back(std::move(line));
    }
    return rep;
}

} // namespace

CaseAnalysisReport case_analysis() {
    const MultiPoly a = MultiPoly::variable("a");
    const Rational three(3);

    CaseAnalysisReport rep;
    rep.assumption =
        "the source display alternates between lambda_2 and lambda_0; "
        "both are read as lambda0 (the x^0 remainder coefficient) throughout";

    const std::vector<BranchSpec> specs = {
        {"a = 3", "a", MultiPoly::constant(three), "b",
         [](const Rational& r) { return std::pair<Rational, Rational>(Rational(3), r); }},
        {"b = a(a-3)/2", "b", a * (a - three) * Rational(1, 2), "a",
         [](const Rational& r) {
             return std::pair<Rational, Rational>(r, r * (r - Rational(3)) * Rational(1, 2));
         }},
        {"b = 0", "b", MultiPoly::constant(Rational(0)), "a",
         [](const Rational& r) { return std::pair<Rational, Rational>(r, Rational(0)); }},
        {"b = (a-3)^2", "b", (a - three).pow(2), "a",
         [](const Rational& r) {
             return std::pair<Rational, Rational>(r, (r - Rational(3)) * (r - Rational(3)));
         }},
    };
    for (const auto& spec : specs) {
        rep.branches.push_back(run_branch(spec));
        rep.any_survivors = rep.any_survivors || rep.branches.back().survivors;
    }
    return rep;
}

std::vector<CPRationalPoint> search_points(unsigned height_bound, unsigned workers) {
    const MultiPoly& P = build_cp().primitive;
    const std::vector<Rational> avals = height_ordered_rationals(height_bound);

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, std::max<std::size_t>(avals.size(), 1));

    std::vector<std::vector<CPRationalPoint>> found(avals.size());
    std::atomic<std::size_t> next{0};

    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= avals.size()) return;
            const MultiPoly pa = P.substitute("a", avals[i]);
            if (pa.is_zero())
                throw std::logic_error("search_points: vertical line on the curve");
            for (const Rational& b : roots_or_empty(pa))
                found[i].push_back({avals[i], b});
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }

    std::vector<CPRationalPoint> out;
    for (auto& chunk : found)
        for (auto& pt : chunk) out.push_back(std::move(pt));
    std::sort(out.begin(), out.end(), [](const CPRationalPoint& p, const CPRationalPoint& q) {
        if (p.a != q.a) return p.a < q.a;
        return p.b < q.b;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const CPRationalPoint& p, const CPRationalPoint& q) {
                              return p.a == q.a && p.b == q.b;
                          }),
              out.end());
    return out;
}

EndToEndReport end_to_end_5cycle_check(const CPRationalPoint& point) {
    const MultiPoly& P = build_cp().primitive;
    if (P.eval({{"a", point.a}, {"b", point.b}}) != Rational(0))
        throw std::domain_error("end_to_end_5cycle_check: point is not on the curve");

    EndToEndReport rep;
    rep.point = point;
    rep.note = "affine model only: the curve's rational points at infinity are "
               "outside this check's scope";
    rep.common_c = solve_common_c(point.a, point.b);
    for (const Rational& c : rep.common_c.roots) {
        rep.candidates.push_back(check_candidate(point.a, point.b, c));
        rep.genuine_5cycle = rep.genuine_5cycle || rep.candidates.back().quadratic_5cycles > 0;
    }
    return rep;
}

} // namespace qdyn
