//
// phantom.hpp
//
// Synthetic speckled vessel videos with analytic ground truth, used in
// place of clinical recordings.
//

#pragma once

#include "ijv/core.hpp"

namespace ijv {

enum class PhantomPreset { Distended, Collapsing };

struct PhantomSpec {
    PhantomPreset preset = PhantomPreset::Distended;
    int n_frames = 450;
    int width = 256;
    int height = 256;
    double fps = 30.0;
    std::uint64_t rng_seed = 1;
    double lumen_intensity = 20.0;
    double background_intensity = 140.0;
    double speckle_strength = 0.3;
    double center_x = 128.0;
    double center_y = 128.0;
    double base_a = 40.0;  // horizontal semi-axis
    double base_b = 26.0;  // vertical semi-axis
    double pulse_amplitude = 0.15;
    double pulse_hz = 1.2;
    double collapse_depth = 0.95;  // collapsing preset only
    double collapse_hz = 0.25;
};

struct PhantomVideo {
    std::vector<Frame> frames;
    std::vector<Mask> truth_masks;
    std::vector<double> truth_csa;
};

// Semi-axes at frame t (pulsation, plus collapse for that preset).
double axis_a(const PhantomSpec& spec, int t);
double axis_b(const PhantomSpec& spec, int t);

// pi * a(t) * b(t)
double true_csa(const PhantomSpec& spec, int t);

Frame render_frame(const PhantomSpec& spec, int t);
Mask truth_mask(const PhantomSpec& spec, int t);

PhantomVideo generate(const PhantomSpec& spec);

}  // namespace ijv
