#include "ijv/tracker.hpp"

#include <cmath>
#include <cstdio>

#include "ijv/geometry.hpp"

namespace ijv {

std::string to_string(FrameStatus s) {
    switch (s) {
        case FrameStatus::Ok: return "ok";
        case FrameStatus::Collapsed: return "collapsed";
        case FrameStatus::Leaked: return "leaked";
        case FrameStatus::Failed: return "failed";
    }
    return "failed";
}

namespace {

// A grown region too small to trace is a vanished lumen; stand in a
// sub-pixel triangle at the seed so centroid propagation keeps working.
Contour seed_triangle(const Seed& seed) {
    const double x = seed.x, y = seed.y;
    return Contour{{{x - 0.5, y - 0.5}, {x + 0.5, y - 0.5}, {x, y + 0.5}}};
}

Mask pad_mask(const Mask& m) {
    Mask out(m.width + 2, m.height + 2);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x)
            if (m.at(x, y)) out.set(x + 1, y + 1);
    return out;
}

}  // namespace

FrameResult segment_frame(const Frame& frame, const Seed& seed,
                          const PipelineParams& params) {
    FrameResult res;
    res.seed = seed;
    if (!frame.in_bounds(seed.x, seed.y))
        throw Error("segment_frame: seed out of bounds");

    const Frame pre = preprocess(frame, params.filter);
    const double threshold = compute_threshold(pre);

    GrowthResult grown;
    try {
        grown = grow(pre, seed, threshold, params.max_fraction);
    } catch (const LeakError&) {
        res.status = FrameStatus::Leaked;
        res.contour = seed_triangle(seed);
        res.csa = 0.0;
        return res;
    }
    res.grown_pixels = grown.pixel_count;

    Contour initial;
    try {
        Contour boundary = trace_boundary(pad_mask(grown.mask));
        for (Point& p : boundary.points) {
            p.x -= 1.0;
            p.y -= 1.0;
        }
        initial = resample_closed_contour(boundary, params.resample);
    } catch (const Error&) {
        // Region of a handful of pixels: treat as a collapsed vessel.
        res.status = FrameStatus::Collapsed;
        res.contour = seed_triangle(seed);
        res.csa = polygon_area(res.contour);
        return res;
    }

    const SnakeResult snake = run_snake(initial, pre, params.snake);
    res.contour = snake.contour;
    res.csa = polygon_area(snake.contour);
    res.iterations = snake.diagnostics.iterations_run;
    res.diagnostics = snake.diagnostics;
    res.status = snake.diagnostics.collapsed ? FrameStatus::Collapsed
                                             : FrameStatus::Ok;
    return res;
}

Seed propagate_seed(const FrameResult& previous, int width, int height) {
    if (previous.status != FrameStatus::Ok &&
        previous.status != FrameStatus::Collapsed)
        throw Error("propagate_seed: previous frame has no usable contour");
    const Point c = centroid(previous.contour);
    Seed s{static_cast<int>(std::round(c.x)),
           static_cast<int>(std::round(c.y))};
    s.x = std::clamp(s.x, 0, width - 1);
    s.y = std::clamp(s.y, 0, height - 1);
    return s;
}

TrackingRecord track_video(const std::vector<Frame>& frames,
                           const Seed& initial_seed,
                           const PipelineParams& params) {
    if (frames.empty()) throw Error("track_video: no frames");

    TrackingRecord record;
    record.params = params;
    record.results.reserve(frames.size());

    Seed seed = initial_seed;
    for (std::size_t k = 0; k < frames.size(); ++k) {
        FrameResult res;
        try {
            res = segment_frame(frames[k], seed, params);
        } catch (const Error&) {
            res.seed = seed;
            res.status = FrameStatus::Failed;
        }
        res.frame_index = static_cast<int>(k);
        record.results.push_back(res);

        if (res.status == FrameStatus::Ok ||
            res.status == FrameStatus::Collapsed)
            seed = propagate_seed(res, frames[k].width, frames[k].height);
        // Otherwise keep the most recent usable seed.
    }
    return record;
}

std::string TrackingRecord::to_csv() const {
    std::string out = "frame,seed_x,seed_y,csa_px2,iterations,status\n";
    char buf[160];
    for (const FrameResult& r : results) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.6f,%d,%s\n", r.frame_index,
                      r.seed.x, r.seed.y, r.csa, r.iterations,
                      to_string(r.status).c_str());
        out += buf;
    }
    return out;
}

}  // namespace ijv
