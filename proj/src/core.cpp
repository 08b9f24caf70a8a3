#include "ijv/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

namespace ijv {

std::size_t Mask::count() const {
    return static_cast<std::size_t>(
        std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

namespace {

// Reads one whitespace-delimited token from a PGM header, skipping
// '#' comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            // skip
        } else {
            break;
        }
        c = in.get();
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok;
}

int parse_dim(const std::string& tok, const std::string& what,
              const std::string& path) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw IoError(path + ": malformed PGM header (" + what + ")");
    return std::stoi(tok);
}

}  // namespace

Frame load_frame(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");

    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (!in || m0 != 'P')
        throw IoError(path + ": not a PGM file");
    if (m1 != '5')
        throw IoError(path + ": unsupported PGM variant (expected P5)");

    const int width = parse_dim(next_token(in), "width", path);
    const int height = parse_dim(next_token(in), "height", path);
    const int maxval = parse_dim(next_token(in), "maxval", path);
    if (maxval != 255)
        throw IoError(path + ": unsupported maxval " + std::to_string(maxval) +
                      " (expected 255)");
    if (width < 1 || height < 1)
        throw IoError(path + ": bad dimensions");

    // Exactly one whitespace byte separates the header from the payload;
    // next_token already consumed it.
    Frame frame;
    frame.width = width;
    frame.height = height;
    frame.data.resize(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(frame.data.data()),
            static_cast<std::streamsize>(frame.data.size()));
    if (static_cast<std::size_t>(in.gcount()) != frame.data.size())
        throw IoError(path + ": truncated pixel payload");
    return frame;
}

void save_frame(const Frame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "P5\n" << frame.width << ' ' << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.data.data()),
              static_cast<std::streamsize>(frame.data.size()));
    if (!out) throw IoError(path + ": write failed");
}

Mask load_mask(const std::string& path) {
    const Frame f = load_frame(path);
    Mask m(f.width, f.height);
    for (std::size_t i = 0; i < f.data.size(); ++i)
        m.bits[i] = f.data[i] >= 128 ? 1 : 0;
    return m;
}

void save_mask(const Mask& mask, const std::string& path) {
    Frame f(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.bits.size(); ++i)
        f.data[i] = mask.bits[i] ? 255 : 0;
    save_frame(f, path);
}

Mask rasterize_contour(const Contour& contour, int width, int height) {
    const auto& pts = contour.points;
    if (pts.size() < 3)
        throw Error("rasterize_contour: contour needs at least 3 points");

    Mask mask(width, height);
    const std::size_t n = pts.size();
    std::vector<double> xs;
    xs.reserve(8);

    for (int y = 0; y < height; ++y) {
        xs.clear();
        const double yc = static_cast<double>(y);
        for (std::size_t i = 0; i < n; ++i) {
            const Point& p = pts[i];
            const Point& q = pts[(i + 1) % n];
            // Half-open in y: each edge contributes on [min_y, max_y).
            if ((p.y <= yc && yc < q.y) || (q.y <= yc && yc < p.y)) {
                const double t = (yc - p.y) / (q.y - p.y);
                xs.push_back(p.x + t * (q.x - p.x));
            }
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
            // Include the left edge, exclude the right.
            int x0 = static_cast<int>(std::ceil(xs[i]));
            int x1 = static_cast<int>(std::ceil(xs[i + 1])) - 1;
            x0 = std::max(x0, 0);
            x1 = std::min(x1, width - 1);
            for (int x = x0; x <= x1; ++x) mask.set(x, y);
        }
    }
    return mask;
}

}  // namespace ijv
