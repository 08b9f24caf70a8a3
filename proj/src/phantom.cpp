#include "ijv/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ijv {

namespace {

// Counter-based noise: the value at (frame, x, y) never depends on the
// order frames are generated in.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double noise01(std::uint64_t seed, int frame, int x, int y) {
    std::uint64_t h = splitmix64(seed ^ 0x5bf03635aca1c3c7ULL);
    h = splitmix64(h ^ static_cast<std::uint64_t>(frame));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(y))
                            << 32 |
                        static_cast<std::uint32_t>(x)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double pulse(const PhantomSpec& spec, int t) {
    return 1.0 + spec.pulse_amplitude *
                     std::sin(2.0 * std::numbers::pi * spec.pulse_hz * t /
                              spec.fps);
}

void validate(const PhantomSpec& spec) {
    if (spec.n_frames < 1) throw Error("phantom: n_frames must be >= 1");
    if (spec.width < 16 || spec.height < 16)
        throw Error("phantom: frame too small");
    if (!(spec.base_a > 0.0 && spec.base_b > 0.0))
        throw Error("phantom: semi-axes must be positive");
    if (spec.lumen_intensity < 0 || spec.lumen_intensity > 255 ||
        spec.background_intensity < 0 || spec.background_intensity > 255)
        throw Error("phantom: intensities must be in [0, 255]");
    if (spec.lumen_intensity >= spec.background_intensity)
        throw Error("phantom: lumen must be darker than the background");
    const double max_a = spec.base_a * (1.0 + spec.pulse_amplitude) + 3.0;
    const double max_b = spec.base_b * (1.0 + spec.pulse_amplitude) + 3.0;
    if (spec.center_x - max_a < 1.0 || spec.center_x + max_a > spec.width - 2 ||
        spec.center_y - max_b < 1.0 || spec.center_y + max_b > spec.height - 2)
        throw Error("phantom: ellipse exceeds the frame bounds");
}

}  // namespace

double axis_a(const PhantomSpec& spec, int t) {
    return spec.base_a * pulse(spec, t);
}

double axis_b(const PhantomSpec& spec, int t) {
    double b = spec.base_b * pulse(spec, t);
    if (spec.preset == PhantomPreset::Collapsing) {
        const double breath = std::sin(2.0 * std::numbers::pi *
                                       spec.collapse_hz * t / spec.fps);
        b *= 1.0 - spec.collapse_depth * std::max(0.0, breath);
    }
    return b;
}

double true_csa(const PhantomSpec& spec, int t) {
    if (t < 0 || t >= spec.n_frames)
        throw Error("true_csa: frame index out of range");
    return std::numbers::pi * axis_a(spec, t) * axis_b(spec, t);
}

Frame render_frame(const PhantomSpec& spec, int t) {
    validate(spec);
    const double a = axis_a(spec, t);
    const double b = axis_b(spec, t);
    Frame frame(spec.width, spec.height);

    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const double dx = x - spec.center_x;
            const double dy = y - spec.center_y;
            const double q = std::sqrt((dx / a) * (dx / a) +
                                       (dy / b) * (dy / b));
            // Approximate signed distance to the ellipse boundary
            // (negative inside), driving a 2 px smoothstep edge ramp.
            double base;
            if (q < 1e-9) {
                base = spec.lumen_intensity;
            } else {
                const double grad = std::sqrt(dx * dx / (a * a * a * a) +
                                              dy * dy / (b * b * b * b));
                const double d = (q - 1.0) * q / grad;
                const double u = std::clamp((d + 1.0) / 2.0, 0.0, 1.0);
                const double ramp = u * u * (3.0 - 2.0 * u);
                base = spec.lumen_intensity +
                       (spec.background_intensity - spec.lumen_intensity) * ramp;
            }
            const double u2 = noise01(spec.rng_seed, t, x, y);
            const double speckle =
                1.0 + spec.speckle_strength * (u2 * u2 - 1.0 / 3.0);
            const double v = std::round(base * speckle);
            frame.at(x, y) = static_cast<std::uint8_t>(
                std::clamp(v, 0.0, 255.0));
        }
    }
    return frame;
}

Mask truth_mask(const PhantomSpec& spec, int t) {
    const double a = axis_a(spec, t);
    const double b = axis_b(spec, t);
    Mask mask(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            const double dx = (x - spec.center_x) / a;
            const double dy = (y - spec.center_y) / b;
            if (dx * dx + dy * dy < 1.0) mask.set(x, y);
        }
    return mask;
}

PhantomVideo generate(const PhantomSpec& spec) {
    validate(spec);
    PhantomVideo video;
    video.frames.reserve(spec.n_frames);
    video.truth_masks.reserve(spec.n_frames);
    video.truth_csa.reserve(spec.n_frames);
    for (int t = 0; t < spec.n_frames; ++t) {
        video.frames.push_back(render_frame(spec, t));
        video.truth_masks.push_back(truth_mask(spec, t));
        video.truth_csa.push_back(true_csa(spec, t));
    }
    return video;
}

}  // namespace ijv
