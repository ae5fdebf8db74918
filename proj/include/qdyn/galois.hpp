#pragma once

#include "qdyn/dynatomic.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qdyn {

/*
 * Galois classification of exact N-cycles over a quadratic field: the
 * conjugate orbit is either the same orbit, met after a shift of m*N/g steps
 * with g = gcd(N, 2) (Case I), or entirely disjoint (Case II).  Anything else
 * contradicts the dichotomy and raises theorem_violation.
 */

enum class CycleCase { case_i, case_ii };

class theorem_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct CycleClassification {
    CycleCase kind = CycleCase::case_i;
    unsigned m = 0;              // Case I shift index: conjugate(z_0) = z_(m*N/g)
    unsigned g = 1;              // gcd(N, 2)
    bool rational_cycle = false; // all points rational: trivially Case I with m = 0

    std::string label() const { return kind == CycleCase::case_i ? "I" : "II"; }
};

// validates the cycle, classifies it, and cross-checks the shift against the
// full conjugated orbit before returning
CycleClassification classify(const OrbitCycle& cycle);

struct TraceRationality {
    QuadraticElement trace;
    bool is_rational = false;
};

// trace of the cycle plus a consistency check: an even-period Case I cycle
// with m = 1 must have rational trace
TraceRationality cycle_trace_rationality(const OrbitCycle& cycle);

// --- height-ordered scans --------------------------------------------------

struct ScanOptions {
    unsigned period = 1;
    unsigned height = 1;
    unsigned workers = 0; // 0 = hardware concurrency
    bool include_rational = true;
};

struct RationalCycleRecord {
    Rational c;
    std::vector<Rational> points; // one orbit, starting at its least point
    unsigned multiplicity = 1;    // dynatomic root multiplicity of the points
};

struct QuadraticCycleRecord {
    OrbitCycle cycle;
    CycleClassification cls;
    std::string note; // structural flags, e.g. the N = 1 conjugate-pair case
};

struct ScanReport {
    ScanOptions options;
    unsigned long candidates = 0;
    std::vector<RationalCycleRecord> rational;
    std::vector<QuadraticCycleRecord> quadratic;
    unsigned case_i_count = 0;
    unsigned case_ii_count = 0;
    unsigned case_ii_nontrivial = 0; // Case II with period > 1
};

// scan every c up to the height bound for exact N-cycles (rational and
// quadratic), classify the quadratic ones, and tally the dichotomy; the
// output is deterministic and independent of the worker count
ScanReport conjecture_scan(const ScanOptions& options);

} // namespace qdyn
