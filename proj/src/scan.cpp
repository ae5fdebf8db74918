#include "qdyn/galois.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace qdyn {

namespace {

// everything found at one parameter value, kept per candidate so that the
// merged report is independent of scheduling
struct CandidateResult {
    std::vector<RationalCycleRecord> rational;
    std::vector<QuadraticCycleRecord> quadratic;
};

CandidateResult scan_one(const Rational& c, const ScanOptions& opt) {
    CandidateResult res;
    const unsigned N = opt.period;

    MultiPoly F = specialize(N, c);
    LowDegreeFactors lf = low_degree_factors(F);

    if (opt.include_rational) {
        std::vector<Rational> pts;
        for (const auto& r : lf.roots) {
            if (exact_period(c, r, N) == N) pts.push_back(r);
        }
        // group into orbits, each starting at its least point
        std::vector<bool> used(pts.size(), false);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (used[i]) continue;
            std::vector<Rational> orbit;
            Rational z = pts[i];
            for (unsigned k = 0; k < N; ++k) {
                orbit.push_back(z);
                z = z * z + c;
            }
            auto mn = std::min_element(orbit.begin(), orbit.end());
            std::rotate(orbit.begin(), mn, orbit.end());
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (std::find(orbit.begin(), orbit.end(), pts[j]) != orbit.end())
                    used[j] = true;
            }
            RationalCycleRecord rec;
            rec.c = c;
            rec.multiplicity = root_multiplicity(F, orbit.front());
            rec.points = std::move(orbit);
            res.rational.push_back(std::move(rec));
        }
        std::sort(res.rational.begin(), res.rational.end(),
                  [](const RationalCycleRecord& a, const RationalCycleRecord& b) {
                      return a.points.front() < b.points.front();
                  });
    }

    for (auto& cyc : assemble_quadratic_cycles(c, N, lf.quadratics)) {
        QuadraticCycleRecord rec;
        rec.cls = classify(cyc);
        if (N == 1 && rec.cls.kind == CycleCase::case_ii) {
            rec.note = "conjugate fixed points always split into two 1-cycles; "
                       "not a counterexample";
        }
        rec.cycle = std::move(cyc);
        res.quadratic.push_back(std::move(rec));
    }
    return res;
}

} // namespace

ScanReport conjecture_scan(const ScanOptions& options) {
    ScanReport report;
    report.options = options;

    const std::vector<Rational> params = height_ordered_rationals(options.height);
    report.candidates = params.size();

    // build Phi_N once before any worker needs it
    dynatomic_poly(options.period);

    unsigned workers = options.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, std::max<std::size_t>(params.size(), 1));

    std::vector<CandidateResult> results(params.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= params.size() || failed.load()) return;
            try {
                results[i] = scan_one(params[i], options);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                if (failure.empty())
                    failure = "scan at c = " + params[i].str() + ": " + e.what();
                return;
            }
        }
    };

    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error(failure);

    for (auto& res : results) {
        for (auto& rec : res.rational) report.rational.push_back(std::move(rec));
        for (auto& rec : res.quadratic) {
            if (rec.cls.kind == CycleCase::case_i) {
                ++report.case_i_count;
            } else {
                ++report.case_ii_count;
                if (options.period > 1) ++report.case_ii_nontrivial;
            }
            report.quadratic.push_back(std::move(rec));
        }
    }
    return report;
}

} // namespace qdyn
