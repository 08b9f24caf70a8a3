#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "ijv/core.hpp"
#include "oracles.hpp"

using namespace ijv;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / (std::string("ijv_core_") + name);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_SUITE("core_io") {

TEST_CASE("load_frame maps P5 bytes directly") {
    const fs::path p = temp_file("p5.pgm");
    {
        std::ofstream out(p, std::ios::binary);
        out << "P5\n2 2\n255\n";
        const unsigned char px[4] = {0, 128, 255, 7};
        out.write(reinterpret_cast<const char*>(px), 4);
    }
    const Frame f = load_frame(p.string());
    CHECK(f.width == 2);
    CHECK(f.height == 2);
    CHECK(f.data == std::vector<std::uint8_t>{0, 128, 255, 7});
}

TEST_CASE("save_frame writes the exact P5 layout") {
    const fs::path p = temp_file("w.pgm");
    Frame f(1, 1);
    f.data[0] = 42;
    save_frame(f, p.string());
    const std::string bytes = slurp(p);
    CHECK(bytes == std::string("P5\n1 1\n255\n") + '\x2a');
}

TEST_CASE("save then load round-trips") {
    std::mt19937 rng(7);
    Frame f(33, 21);
    for (auto& v : f.data) v = static_cast<std::uint8_t>(rng() & 0xff);
    const fs::path p = temp_file("rt.pgm");
    save_frame(f, p.string());
    CHECK(load_frame(p.string()) == f);
    // overwrite succeeds
    save_frame(f, p.string());
    CHECK(load_frame(p.string()) == f);
}

TEST_CASE("format errors are distinct") {
    const fs::path p = temp_file("bad.pgm");
    {
        std::ofstream out(p, std::ios::binary);
        out << "P2\n1 1\n255\n42\n";
    }
    CHECK_THROWS_WITH_AS(load_frame(p.string()),
                         doctest::Contains("unsupported PGM variant"), IoError);

    {
        std::ofstream out(p, std::ios::binary);
        out << "P5\n1 1\n254\n" << '\x2a';
    }
    CHECK_THROWS_WITH_AS(load_frame(p.string()),
                         doctest::Contains("maxval"), IoError);

    {
        std::ofstream out(p, std::ios::binary);
        out << "P5\n4 4\n255\nab";
    }
    CHECK_THROWS_WITH_AS(load_frame(p.string()),
                         doctest::Contains("truncated"), IoError);

    CHECK_THROWS_AS(load_frame((temp_file("nope.pgm")).string()), IoError);
}

TEST_CASE("mask PGM round-trip uses 255 = inside") {
    Mask m(8, 4);
    m.set(1, 1);
    m.set(6, 3);
    const fs::path p = temp_file("mask.pgm");
    save_mask(m, p.string());
    CHECK(load_mask(p.string()) == m);
}

TEST_CASE("rasterize_contour: axis-aligned square") {
    Contour c{{{1, 1}, {5, 1}, {5, 5}, {1, 5}}};
    const Mask m = rasterize_contour(c, 8, 8);
    CHECK(m.count() == 16);
    CHECK(m == oracle::rasterize_by_oracle(c, 8, 8));
}

TEST_CASE("rasterize_contour rejects degenerate input") {
    Contour c{{{1, 1}, {5, 5}}};
    CHECK_THROWS_AS(rasterize_contour(c, 8, 8), Error);
}

TEST_CASE("rasterize matches brute-force oracle on random polygons") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const Contour c =
            oracle::random_star_polygon(rng, 9 + trial % 7, 16.0, 14.0, 3.0, 11.0);
        CHECK(rasterize_contour(c, 32, 32) ==
              oracle::rasterize_by_oracle(c, 32, 32));
    }
}

TEST_CASE("rasterize pixel count invariant under integer translation") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Contour c = oracle::random_star_polygon(rng, 12, 15.0, 15.0, 3.0, 9.0);
        const std::size_t n0 = rasterize_contour(c, 48, 48).count();
        Contour shifted = c;
        for (auto& p : shifted.points) {
            p.x += 7.0;
            p.y += 5.0;
        }
        CHECK(rasterize_contour(shifted, 48, 48).count() == n0);
    }
}

TEST_CASE("rasterize is orientation-free") {
    std::mt19937 rng(5);
    Contour c = oracle::random_star_polygon(rng, 10, 12.0, 12.0, 3.0, 8.0);
    Contour rev = c;
    std::reverse(rev.points.begin(), rev.points.end());
    CHECK(rasterize_contour(c, 26, 26) == rasterize_contour(rev, 26, 26));
}

}  // TEST_SUITE
