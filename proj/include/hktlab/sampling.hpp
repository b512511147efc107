#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hktlab/point.hpp"

namespace hktlab {

// splitmix64; hand-rolled so streams are identical across platforms and
// standard library implementations.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9E3779B97f4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // uniform in [0,1) from the top 53 bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct SampleConfig {
    int points = 100;
    uint64_t seed = 42;
    double box_low = 0.5;  // coordinates drawn from +-[box_low, box_high]
    double box_high = 1.5;
    std::optional<double> tolerance; // overrides each check's default
    int jet_order = 3;
    int threads = 1;

    void validate() const;
};

// Coordinates i.i.d. uniform on [-high,-low] U [low,high]; the box keeps
// every sample away from the singular loci of the built-in geometries.
// Points are generated up front in one stream, so results do not depend on
// the thread count.
std::vector<Point> sample_points(int dim, const SampleConfig& cfg);

} // namespace hktlab
