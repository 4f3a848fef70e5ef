#pragma once

#include <cstdint>

namespace fano10 {

// Splittable 64-bit generator (splitmix64).  State update is
//   s <- s + 0x9E3779B97F4A7C15
// followed by the usual xor-shift-multiply finalizer, so identical seeds
// reproduce identical streams everywhere.  split() derives an independent
// child stream from the next output, which lets batches of checks draw
// from disjoint streams without sharing mutable state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling keeps the draw exactly uniform
        std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    SplitMix64 split() { return SplitMix64(next()); }

private:
    std::uint64_t state_;
};

} // namespace fano10
