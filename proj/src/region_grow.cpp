#include "ijv/region_grow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace ijv {

double compute_threshold(const Frame& frame) {
    auto [lo, hi] = std::minmax_element(frame.data.begin(), frame.data.end());
    return 0.05 * (static_cast<double>(*hi) - static_cast<double>(*lo));
}

GrowthResult grow(const Frame& frame, const Seed& seed, double threshold,
                  double max_fraction) {
    if (!frame.in_bounds(seed.x, seed.y))
        throw Error("grow: seed out of bounds");
    if (threshold < 0.0) throw Error("grow: negative threshold");
    if (!(max_fraction > 0.0 && max_fraction <= 1.0))
        throw Error("grow: max_fraction must be in (0, 1]");

    const int w = frame.width, h = frame.height;
    const std::size_t limit = static_cast<std::size_t>(
        max_fraction * static_cast<double>(w) * h);

    // dx/dy pairs in scan order NW, N, NE, W, E, SW, S, SE.
    static constexpr int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    static constexpr int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

    GrowthResult res;
    res.mask = Mask(w, h);
    res.threshold_used = threshold;

    std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
    std::deque<std::pair<int, int>> frontier;

    double sum = 0.0;
    std::size_t count = 0;
    auto accept = [&](int x, int y, double mean_before) {
        res.mask.set(x, y);
        res.log.push_back({x, y, mean_before});
        sum += frame.at(x, y);
        ++count;
        if (count > limit)
            throw LeakError("grow: region exceeded " +
                            std::to_string(max_fraction) +
                            " of the frame area (seed escaped the lumen)");
        frontier.emplace_back(x, y);
    };

    visited[static_cast<std::size_t>(seed.y) * w + seed.x] = 1;
    accept(seed.x, seed.y, static_cast<double>(frame.at(seed.x, seed.y)));

    while (!frontier.empty()) {
        auto [cx, cy] = frontier.front();
        frontier.pop_front();
        for (int k = 0; k < 8; ++k) {
            const int nx = cx + kDx[k];
            const int ny = cy + kDy[k];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            std::uint8_t& seen = visited[static_cast<std::size_t>(ny) * w + nx];
            if (seen) continue;
            seen = 1;
            const double mean = sum / static_cast<double>(count);
            if (std::abs(static_cast<double>(frame.at(nx, ny)) - mean) <
                threshold)
                accept(nx, ny, mean);
        }
    }

    res.mean_intensity = sum / static_cast<double>(count);
    res.pixel_count = count;
    return res;
}

}  // namespace ijv
