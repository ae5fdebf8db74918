#include "qdyn/galois.hpp"

#include <numeric>

namespace qdyn {

namespace {

// index of value in points, or points.size() when absent
std::size_t find_point(const std::vector<QuadraticElement>& points,
                       const QuadraticElement& value) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] == value) return i;
    }
    return points.size();
}

} // namespace

CycleClassification classify(const OrbitCycle& cycle) {
    cycle.validate();
    const auto& points = cycle.points;
    const unsigned n = static_cast<unsigned>(points.size());
    const unsigned g = std::gcd(n, 2u);

    CycleClassification out;
    out.g = g;

    if (cycle.is_rational_cycle()) {
        out.kind = CycleCase::case_i;
        out.m = 0;
        out.rational_cycle = true;
        return out;
    }

    const std::size_t shift = find_point(points, points[0].conjugate());
    if (shift < points.size()) {
        // Case I: conjugation must shift the whole orbit by the same amount,
        // and the shift must be a multiple of N/g
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[(i + shift) % points.size()] != points[i].conjugate()) {
                throw theorem_violation(
                    "classify: conjugation does not act as a uniform orbit shift");
            }
        }
        const unsigned step = n / g;
        if (shift % step != 0) {
            throw theorem_violation("classify: conjugate shift " +
                                    std::to_string(shift) +
                                    " is not a multiple of N/gcd(N,2)");
        }
        out.kind = CycleCase::case_i;
        out.m = static_cast<unsigned>(shift) / step;
        return out;
    }

    // Case II: the conjugate orbit must avoid this orbit entirely
    for (const auto& z : points) {
        if (find_point(points, z.conjugate()) < points.size()) {
            throw theorem_violation(
                "classify: conjugate orbit meets the cycle only partially");
        }
    }
    out.kind = CycleCase::case_ii;
    return out;
}

TraceRationality cycle_trace_rationality(const OrbitCycle& cycle) {
    const CycleClassification cls = classify(cycle);

    TraceRationality out{cycle.trace(), false};
    out.is_rational = out.trace.is_rational();

    if (cls.kind == CycleCase::case_i && cls.m == 1 &&
        cycle.points.size() % 2 == 0 && !out.is_rational) {
        throw theorem_violation(
            "cycle_trace_rationality: even-period Case I cycle with m = 1 "
            "has irrational trace " + out.trace.str());
    }
    return out;
}

} // namespace qdyn
