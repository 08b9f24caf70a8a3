//
// core.hpp
//
// Shared value types (Frame, Mask, Contour), PGM I/O and contour
// rasterization.
//

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ijv {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// File-format and filesystem problems.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Region growing escaped the lumen (grew past the allowed fraction).
struct LeakError : Error {
    explicit LeakError(const std::string& msg) : Error(msg) {}
};

// One grayscale video frame, row-major, 8-bit.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    Frame() = default;
    Frame(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    bool operator==(const Frame&) const = default;
};

// Binary pixel set over a frame grid.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // 0 or 1

    Mask() = default;
    Mask(int w, int h)
        : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

    bool at(int x, int y) const {
        return bits[static_cast<std::size_t>(y) * width + x] != 0;
    }
    void set(int x, int y, bool v = true) {
        bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
    }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    std::size_t count() const;
    bool operator==(const Mask&) const = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

// Ordered closed point list; last point connects back to the first.
struct Contour {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
    bool operator==(const Contour&) const = default;
};

// Binary PGM (P5), maxval 255.
Frame load_frame(const std::string& path);
void save_frame(const Frame& frame, const std::string& path);

// Masks travel as PGM with 255 = inside.
Mask load_mask(const std::string& path);
void save_mask(const Mask& mask, const std::string& path);

// Pixels whose centers lie inside the closed polygon, even-odd rule,
// half-open scanline spans (left edge in, right edge out). Pixel (x, y)
// has its center at coordinates (x, y).
Mask rasterize_contour(const Contour& contour, int width, int height);

}  // namespace ijv
