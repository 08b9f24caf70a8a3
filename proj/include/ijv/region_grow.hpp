//
// region_grow.hpp
//
// Seeded region growing: 8-connected breadth-first growth accepting
// pixels whose intensity is within a threshold of the running region
// mean.
//

#pragma once

#include "ijv/core.hpp"

namespace ijv {

struct Seed {
    int x = 0;
    int y = 0;
    bool operator==(const Seed&) const = default;
};

// One acceptance event, in order; mean_before is the region mean the
// candidate was compared against.
struct GrowthStep {
    int x = 0;
    int y = 0;
    double mean_before = 0.0;
};

struct GrowthResult {
    Mask mask;
    double mean_intensity = 0.0;
    std::size_t pixel_count = 0;
    double threshold_used = 0.0;
    std::vector<GrowthStep> log;
};

// T = 0.05 * (Imax - Imin) of the frame.
double compute_threshold(const Frame& frame);

// FIFO growth, neighbors scanned NW, N, NE, W, E, SW, S, SE. A candidate
// is accepted iff |I(candidate) - region mean| < threshold; the mean is
// updated on every acceptance. Throws LeakError once the region exceeds
// max_fraction of the frame area.
GrowthResult grow(const Frame& frame, const Seed& seed, double threshold,
                  double max_fraction);

}  // namespace ijv
