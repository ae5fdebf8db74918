// Acceptance gate: one line per criterion, exit 0 only when every criterion
// passes.  Usage: acceptance <qdyn-binary> <golden-dir>
#include "qdyn/cp_curve.hpp"
#include "qdyn/galois.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace qdyn;
using nlohmann::json;

namespace {

std::string qdyn_bin;
std::string golden_dir;

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args)
{
    const std::string cmd = "'" + qdyn_bin + "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("popen failed for: " + cmd);
    CliResult res;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        res.output.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<json> json_lines(const std::string& text)
{
    std::vector<json> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            lines.push_back(json::parse(line));
    return lines;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in.good())
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// re-derivation of the dichotomy by brute membership, independent of classify()
struct Dichotomy {
    bool case_i = false;
    bool case_ii = false;
};

Dichotomy rederive(const OrbitCycle& cyc)
{
    const unsigned N = cyc.period();
    int shift = -1;
    for (unsigned i = 0; i < N && shift < 0; ++i)
        if (cyc.points[i] == cyc.points[0].conjugate())
            shift = static_cast<int>(i);
    Dichotomy d;
    if (shift >= 0) {
        d.case_i = true;
        for (unsigned i = 0; i < N; ++i)
            d.case_i = d.case_i &&
                       cyc.points[(i + static_cast<unsigned>(shift)) % N] ==
                           cyc.points[i].conjugate();
    }
    d.case_ii = true;
    for (unsigned i = 0; i < N && d.case_ii; ++i)
        for (unsigned j = 0; j < N && d.case_ii; ++j)
            d.case_ii = !(cyc.points[j] == cyc.points[i].conjugate());
    return d;
}

bool check(bool cond, std::string& detail, const std::string& what)
{
    if (!cond && detail.empty())
        detail = what;
    return cond;
}

// --- criteria ----------------------------------------------------------------

bool crit_dynatomic_degrees(std::string& detail)
{
    const std::vector<long> expected{2, 2, 6, 12, 30, 54};
    bool ok = true;
    for (unsigned N = 1; N <= 6; ++N) {
        ok &= check(dynatomic_degree(N) == expected[N - 1], detail,
                    "formula degree mismatch at N = " + std::to_string(N));
        ok &= check(dynatomic_poly(N).poly.degree("z") == expected[N - 1], detail,
                    "constructed degree mismatch at N = " + std::to_string(N));
    }
    return ok;
}

bool crit_mobius_product(std::string& detail)
{
    const MultiPoly z = MultiPoly::variable("z");
    bool ok = true;
    for (unsigned N = 1; N <= 6; ++N) {
        MultiPoly product = MultiPoly::constant(Rational(1));
        for (unsigned d = 1; d <= N; ++d)
            if (N % d == 0)
                product = product * dynatomic_poly(d).poly;
        ok &= check(product == iterate_poly(N) - z, detail,
                    "product != phi^N - z at N = " + std::to_string(N));
    }
    return ok;
}

bool crit_lambda_golden(std::string& detail)
{
    const LambdaPair& L = build_lambdas();
    bool ok = check(slurp(golden_dir + "/lambda1.txt") == L.lambda1.str() + "\n", detail,
                    "lambda1 differs from golden file");
    ok &= check(slurp(golden_dir + "/lambda0.txt") == L.lambda0.str() + "\n", detail,
                "lambda0 differs from golden file");
    return ok;
}

bool crit_resultant_degrees(std::string& detail)
{
    const CPPolynomial& cp = build_cp();
    return check(cp.primitive.degree("a") == 8, detail, "degree in a != 8") &
           check(cp.primitive.degree("b") == 9, detail, "degree in b != 9");
}

bool crit_known_points(std::string& detail)
{
    const CPPolynomial& cp = build_cp();
    const std::vector<std::pair<Rational, Rational>> pts{
        {Rational(3), Rational(0)},    {Rational(0), Rational(0)},
        {Rational(4), Rational(1, 3)}, {Rational(1), Rational(8, 3)},
        {Rational(6), Rational(9)}};
    bool ok = true;
    for (const auto& [a, b] : pts)
        ok &= check(cp.primitive.eval({{"a", a}, {"b", b}}).is_zero(), detail,
                    "P does not vanish at (" + a.str() + ", " + b.str() + ")");
    ok &= check(!cp.primitive.eval({{"a", Rational(0)}, {"b", Rational(1)}}).is_zero(),
                detail, "P vanishes at the off-curve control point (0, 1)");
    return ok;
}

bool crit_cli_point_search(std::string& detail)
{
    const CliResult res = run_cli("cp search --height 10");
    if (!check(res.exit_code == 0, detail,
               "cp search exited with " + std::to_string(res.exit_code)))
        return false;
    const std::vector<json> lines = json_lines(res.output);
    bool ok = check(lines.size() == 5, detail,
                    "expected 5 points, got " + std::to_string(lines.size()));
    const std::vector<std::pair<std::string, std::string>> expected{
        {"0", "0"}, {"1", "8/3"}, {"3", "0"}, {"4", "1/3"}, {"6", "9"}};
    for (const auto& [a, b] : expected) {
        bool found = false;
        for (const json& j : lines)
            found = found || (j.at("a") == a && j.at("b") == b);
        ok &= check(found, detail, "missing point (" + a + ", " + b + ")");
    }
    return ok;
}

bool crit_case_analysis(std::string& detail)
{
    const CaseAnalysisReport rep = case_analysis();
    bool ok = check(rep.branches.size() == 4, detail, "expected 4 branches");
    if (!ok)
        return false;
    const CaseBranchReport& a3 = rep.branches[0];
    ok &= check(a3.name == "a = 3", detail, "first branch is not a = 3");
    ok &= check(a3.rational_roots == std::vector<Rational>{Rational(0)}, detail,
                "a = 3 branch roots differ from {0}");
    const MultiPoly l1_at =
        build_lambdas().lambda1.substitute("a", Rational(3)).substitute("b", Rational(0));
    ok &= check(l1_at.is_constant() && l1_at.constant_value() == Rational(-64), detail,
                "lambda1(3, 0, c) is not identically -64");
    for (size_t i = 1; i < rep.branches.size(); ++i)
        ok &= check(!rep.branches[i].survivors, detail,
                    "branch " + rep.branches[i].name + " has survivors");
    ok &= check(!rep.any_survivors, detail, "case analysis reports survivors");
    return ok;
}

bool crit_six_cycle(std::string& detail)
{
    const Rational c(-71, 48);
    const QuadraticElement z0(Rational(-1), Rational(1, 12), Discriminant(33));
    const OrbitCycle cyc = OrbitCycle::from_seed(c, z0, 6);
    bool ok = check(cyc.points[3] == z0.conjugate(), detail, "z3 != conj(z0)");
    const CycleClassification cls = classify(cyc);
    ok &= check(cls.kind == CycleCase::case_i && cls.m == 1, detail,
                "6-cycle is not Case I with m = 1");
    const TraceRationality tr = cycle_trace_rationality(cyc);
    ok &= check(tr.is_rational &&
                    tr.trace == QuadraticElement(Rational(-7, 2), Rational(0),
                                                 Discriminant(33)),
                detail, "trace is not the rational -7/2");

    const CliResult res = run_cli("scan --period 6 --height 71 --format json-lines");
    if (!check(res.exit_code == 0, detail,
               "scan exited with " + std::to_string(res.exit_code)))
        return false;
    std::vector<json> quad;
    for (const json& j : json_lines(res.output))
        if (j.at("type") == "quadratic")
            quad.push_back(j);
    ok &= check(quad.size() == 1, detail,
                "expected exactly 1 quadratic 6-cycle, got " + std::to_string(quad.size()));
    if (quad.size() == 1) {
        ok &= check(quad[0].at("c") == "-71/48", detail, "found cycle at wrong c");
        ok &= check(quad[0].at("disc") == "33", detail, "wrong field discriminant");
        ok &= check(quad[0].at("case") == "I", detail, "wrong classification case");
        ok &= check(quad[0].at("rational_trace").get<bool>(), detail,
                    "trace not reported rational");
    }
    return ok;
}

bool crit_five_cycle_absence(std::string& detail)
{
    const CliResult res = run_cli("scan --period 5 --height 50 --format json-lines");
    if (!check(res.exit_code == 0, detail,
               "scan exited with " + std::to_string(res.exit_code)))
        return false;
    unsigned long quad = 0, summaries = 0;
    for (const json& j : json_lines(res.output)) {
        if (j.at("type") == "quadratic")
            ++quad;
        if (j.at("type") == "summary") {
            ++summaries;
            if (!check(j.at("quadratic_cycles") == 0, detail,
                       "summary reports quadratic 5-cycles"))
                return false;
        }
    }
    return check(quad == 0, detail, std::to_string(quad) + " quadratic 5-cycles found") &
           check(summaries == 1, detail, "missing summary record");
}

bool crit_dichotomy_suite(std::string& detail)
{
    bool ok = true;

    // every cycle produced by scans at N <= 6 satisfies exactly one case
    const unsigned heights[6] = {6, 6, 8, 8, 10, 10};
    unsigned classified = 0;
    for (unsigned N = 1; N <= 6; ++N) {
        ScanOptions opt;
        opt.period = N;
        opt.height = heights[N - 1];
        opt.workers = 1;
        const ScanReport rep = conjecture_scan(opt);
        for (const QuadraticCycleRecord& rec : rep.quadratic) {
            ++classified;
            const Dichotomy d = rederive(rec.cycle);
            ok &= check(d.case_i != d.case_ii, detail,
                        "dichotomy is not exclusive at c = " + rec.cycle.c.str());
            ok &= check(d.case_i == (rec.cls.kind == CycleCase::case_i), detail,
                        "classification disagrees with re-derivation at c = " +
                            rec.cycle.c.str());
            if (N % 2 == 1)
                ok &= check(rec.cls.kind == CycleCase::case_ii, detail,
                            "odd-period irrational cycle classified Case I at c = " +
                                rec.cycle.c.str());
        }
    }
    // the deep known cycles, classified directly
    for (const auto& [c, N] : {std::pair<Rational, unsigned>{Rational(-31, 48), 4},
                               std::pair<Rational, unsigned>{Rational(-71, 48), 6}}) {
        for (const OrbitCycle& cyc : quadratic_periodic_points(c, N)) {
            ++classified;
            const Dichotomy d = rederive(cyc);
            const CycleClassification cls = classify(cyc);
            ok &= check(d.case_i != d.case_ii, detail, "dichotomy fails at c = " + c.str());
            ok &= check(d.case_i == (cls.kind == CycleCase::case_i), detail,
                        "classification disagrees at c = " + c.str());
        }
    }
    ok &= check(classified > 0, detail, "no cycles were classified");

    // conjugation commutes with iteration on randomized triples
    std::mt19937 rng(190866);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    std::uniform_int_distribution<size_t> pick_disc(0, 5);
    std::uniform_int_distribution<unsigned> steps(1, 4);
    const long discs[6] = {5, -3, 33, -15, 2, -1};
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const Discriminant D(discs[pick_disc(rng)]);
        const QuadraticElement z(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                                 D);
        const Rational c(num(rng), den(rng));
        const unsigned n = steps(rng);
        ok &= check(iterate(c, z, n).conjugate() == iterate(c, z.conjugate(), n), detail,
                    "conjugation does not commute with iteration at trial " +
                        std::to_string(trial));
    }
    return ok;
}

bool crit_oracle_equivalence(std::string& detail)
{
    const MultiPoly z = MultiPoly::variable("z");
    bool ok = true;
    for (long q = 1; q <= 10 && ok; ++q)
        for (long p = -10; p <= 10 && ok; ++p) {
            if (std::gcd(std::abs(p), q) != 1)
                continue;
            const Rational c(p, q);
            for (unsigned N = 1; N <= 3; ++N) {
                // brute-force oracle: rational roots of phi_c^N(z) - z with
                // exact-period filtering, no dynatomic machinery involved
                const MultiPoly F = iterate_poly(N).substitute("c", c) - z;
                std::vector<Rational> brute;
                for (const Rational& r : rational_roots(F))
                    if (exact_period(c, r, N) == N)
                        brute.push_back(r);
                ok &= check(brute == rational_periodic_points(c, N), detail,
                            "mismatch at c = " + c.str() + ", N = " + std::to_string(N));
            }
        }
    return ok;
}

bool crit_identity(std::string& detail)
{
    const IdentityReport rep = identity_check();
    return check(rep.pass && rep.difference.is_zero(), detail,
                 "g*h != 2*(P0^2 - P1^2*f)");
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 3) {
        std::cerr << "usage: acceptance <qdyn-binary> <golden-dir>\n";
        return 1;
    }
    qdyn_bin = argv[1];
    golden_dir = argv[2];

    const std::vector<std::pair<std::string, std::function<bool(std::string&)>>> criteria{
        {"dynatomic degrees 2, 2, 6, 12, 30, 54 for N = 1..6", crit_dynatomic_degrees},
        {"Mobius product rebuilds phi_c^N(z) - z for N <= 6", crit_mobius_product},
        {"lambda pair matches the golden files term-for-term", crit_lambda_golden},
        {"primitive P(a, b) has degree 8 in a and 9 in b", crit_resultant_degrees},
        {"P vanishes at the five known points and not off-curve", crit_known_points},
        {"cp search --height 10 returns exactly the five points", crit_cli_point_search},
        {"case analysis: a = 3 gives {0}, no branch survives", crit_case_analysis},
        {"6-cycle at c = -71/48 verifies and is the only scan hit", crit_six_cycle},
        {"scan --period 5 --height 50 finds no quadratic 5-cycle", crit_five_cycle_absence},
        {"dichotomy suite: exclusive cases, conjugation commutes", crit_dichotomy_suite},
        {"dynatomic points match the brute-force oracle (N <= 3)", crit_oracle_equivalence},
        {"identity g*h = 2*(P0^2 - P1^2*f) holds exactly", crit_identity},
    };

    unsigned passed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].second(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[pass] " : "[FAIL] ") << (i + 1) << ": " << criteria[i].first;
        if (!ok && !detail.empty())
            std::cout << " -- " << detail;
        std::cout << "\n" << std::flush;
        passed += ok ? 1 : 0;
    }
    std::cout << "acceptance: " << passed << "/" << criteria.size() << " criteria passed\n";
    return passed == criteria.size() ? 0 : 1;
}
