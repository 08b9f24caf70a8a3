//
// tracker.hpp
//
// Per-frame pipeline (preprocess -> grow -> trace -> resample -> snake)
// orchestrated over a video, with the seed propagated as the previous
// contour's centroid.
//

#pragma once

#include "ijv/filters.hpp"
#include "ijv/region_grow.hpp"
#include "ijv/snake.hpp"

namespace ijv {

enum class FrameStatus { Ok, Collapsed, Leaked, Failed };

std::string to_string(FrameStatus s);

struct PipelineParams {
    FilterParams filter;
    SnakeParams snake;
    ResampleParams resample;
    double max_fraction = 0.25;  // region-growing leak guard
};

struct FrameResult {
    int frame_index = 0;
    Seed seed;
    Contour contour;
    double csa = 0.0;
    int iterations = 0;
    FrameStatus status = FrameStatus::Failed;
    // Filled for Ok / Collapsed frames.
    std::size_t grown_pixels = 0;
    SnakeDiagnostics diagnostics;
};

struct TrackingRecord {
    std::vector<FrameResult> results;
    PipelineParams params;

    // CSV: frame,seed_x,seed_y,csa_px2,iterations,status
    std::string to_csv() const;
};

FrameResult segment_frame(const Frame& frame, const Seed& seed,
                          const PipelineParams& params);

// Rounded (half away from zero) centroid of the previous contour,
// clamped into the frame bounds.
Seed propagate_seed(const FrameResult& previous, int width, int height);

TrackingRecord track_video(const std::vector<Frame>& frames,
                           const Seed& initial_seed,
                           const PipelineParams& params);

}  // namespace ijv
