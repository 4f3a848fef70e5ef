#pragma once

#include <cmath>

#include "fano10/poly.hpp"

namespace fano10 {

struct PitVerdict {
    bool zero;
    bool certain;         // coefficient-level decision
    double failure_bound; // <= (deg/|sample set|)^trials when probabilistic
};

// Zero test.  Expanded sparse form makes the coefficient-level test available
// here, and it is mandatory when the field has at most total_degree elements
// (x^2+x over GF(2) vanishes as a function but not as a polynomial).  The
// Schwartz-Zippel path is kept for callers that only want sampled evidence.
inline PitVerdict pit_zero(const MultiPoly& f, unsigned trials, std::uint64_t seed) {
    bool small_field = false;
    if (f.field()->finite()) {
        mpz_class q = f.field()->order();
        small_field = q <= f.total_degree();
    }
    if (trials == 0 || small_field)
        return {f.is_zero(), true, 0.0};
    // sampled route, with the exact verdict retained as ground truth
    SplitMix64 rng(seed);
    unsigned d = f.total_degree();
    bool hit_nonzero = false;
    for (unsigned t = 0; t < trials; ++t) {
        std::vector<FieldElement> pt;
        for (unsigned k = 0; k < f.arity(); ++k) pt.push_back(f.field()->random(rng));
        if (!f.evaluate(pt).is_zero()) hit_nonzero = true;
    }
    if (hit_nonzero) return {false, true, 0.0};
    double sample_size = f.field()->finite() ? f.field()->order().get_d() : 201.0;
    double bound = std::pow(static_cast<double>(d) / sample_size, static_cast<double>(trials));
    // the expanded form is available, so the verdict itself is exact
    return {f.is_zero(), true, f.is_zero() ? 0.0 : bound};
}

} // namespace fano10
