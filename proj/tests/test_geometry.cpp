#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "ijv/geometry.hpp"
#include "oracles.hpp"

using namespace ijv;

namespace {

constexpr double kPi = 3.14159265358979323846;

Mask disc_mask(int size, int cx, int cy, double radius) {
    Mask m(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius * radius)
                m.set(x, y);
    return m;
}

Contour regular_polygon(int n, double cx, double cy, double r) {
    Contour c;
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * kPi * i / n;
        c.points.push_back({cx + r * std::cos(th), cy + r * std::sin(th)});
    }
    return c;
}

// Triangulation fan area: |sum of cross products| / 2.
double fan_area(const Contour& c) {
    const auto& p = c.points;
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point& a = p[i];
        const Point& b = p[(i + 1) % p.size()];
        s += a.x * b.y - b.x * a.y;
    }
    return std::abs(s) / 2.0;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("trace_boundary of a 3x3 block gives its 8 ring pixels") {
    Mask m(9, 9);
    for (int y = 3; y <= 5; ++y)
        for (int x = 3; x <= 5; ++x) m.set(x, y);
    const Contour c = trace_boundary(m);
    REQUIRE(c.size() == 8);
    std::set<std::pair<int, int>> got;
    for (const Point& p : c.points)
        got.insert({static_cast<int>(p.x), static_cast<int>(p.y)});
    std::set<std::pair<int, int>> expected;
    for (int y = 3; y <= 5; ++y)
        for (int x = 3; x <= 5; ++x)
            if (x != 4 || y != 4) expected.insert({x, y});
    CHECK(got == expected);
    // consecutive points are Moore neighbors
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Point& a = c.points[i];
        const Point& b = c.points[(i + 1) % c.size()];
        CHECK(std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) <= 1.0);
    }
    CHECK(signed_area(c) > 0.0);
}

TEST_CASE("trace_boundary error cases") {
    Mask empty(8, 8);
    CHECK_THROWS_WITH_AS(trace_boundary(empty), doctest::Contains("empty"),
                         Error);
    Mask border(8, 8);
    border.set(0, 3);
    border.set(1, 3);
    border.set(1, 4);
    CHECK_THROWS_WITH_AS(trace_boundary(border), doctest::Contains("pad"),
                         Error);
}

TEST_CASE("disc boundary area is close to the pixel-count oracle") {
    const Mask m = disc_mask(40, 20, 20, 12.0);
    const Contour c = trace_boundary(m);
    // the traced ring runs through boundary pixel centers, i.e. about
    // half a pixel inside the disc of radius 12
    CHECK(polygon_area(c) ==
          doctest::Approx(kPi * 11.5 * 11.5).epsilon(0.05));
    // Rasterizing back recovers at least 90% of the original pixels.
    const Mask back = rasterize_contour(c, 40, 40);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < m.bits.size(); ++i)
        kept += (m.bits[i] && back.bits[i]);
    CHECK(static_cast<double>(kept) >= 0.9 * static_cast<double>(m.count()));
}

TEST_CASE("resample keeps an already-equidistant 32-gon") {
    const Contour in = regular_polygon(32, 20.0, 20.0, 10.0);
    const Contour out = resample_closed_contour(in, {});
    REQUIRE(out.size() == 32);
    for (int i = 0; i < 32; ++i) {
        CHECK(std::hypot(out.points[i].x - in.points[i].x,
                         out.points[i].y - in.points[i].y) < 0.05);
    }
}

TEST_CASE("resample of irregular circle samples is uniform and accurate") {
    Contour in;
    for (int k = 0; k < 100; ++k) {
        const double u = static_cast<double>(k) / 100.0;
        const double th = 2.0 * kPi * std::pow(u, 1.4);
        in.points.push_back({10.0 * std::cos(th), 10.0 * std::sin(th)});
    }
    const Contour out = resample_closed_contour(in, {});
    REQUIRE(out.size() == 32);

    std::vector<double> spacing;
    for (int i = 0; i < 32; ++i) {
        const Point& a = out.points[i];
        const Point& b = out.points[(i + 1) % 32];
        spacing.push_back(std::hypot(b.x - a.x, b.y - a.y));
        CHECK(std::abs(std::hypot(a.x, a.y) - 10.0) < 0.2);
    }
    double mean = 0.0;
    for (double s : spacing) mean += s;
    mean /= 32.0;
    for (double s : spacing) CHECK(std::abs(s - mean) < 0.01 * mean);
}

TEST_CASE("resample input validation") {
    Contour three{{{0, 0}, {4, 0}, {0, 3}}};
    CHECK_THROWS_AS(resample_closed_contour(three, {}), Error);
    Contour dup{{{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}};
    CHECK_THROWS_AS(resample_closed_contour(dup, {}), Error);
    Contour ok = regular_polygon(16, 0, 0, 5);
    CHECK_THROWS_AS(resample_closed_contour(ok, {4, 4096}), Error);
    CHECK_THROWS_AS(resample_closed_contour(ok, {32, 100}), Error);
}

TEST_CASE("resample preserves area of convex contours within 2%") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const Contour in = oracle::random_convex_contour(rng, 40);
        const Contour out = resample_closed_contour(in, {});
        CHECK(polygon_area(out) ==
              doctest::Approx(polygon_area(in)).epsilon(0.02));
    }
}

TEST_CASE("centroid") {
    CHECK(centroid(Contour{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}).x ==
          doctest::Approx(0.5));
    CHECK(centroid(Contour{{{0, 0}, {4, 0}, {4, 2}, {0, 2}}}) ==
          Point{2.0, 1.0});
    const Point c = centroid(regular_polygon(32, 120.0, 88.0, 9.0));
    CHECK(std::abs(c.x - 120.0) < 1e-9);
    CHECK(std::abs(c.y - 88.0) < 1e-9);
    CHECK_THROWS_AS(centroid(Contour{{{0, 0}, {1, 1}}}), Error);
}

TEST_CASE("polygon_area basics and fan oracle") {
    CHECK(polygon_area(Contour{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}) ==
          doctest::Approx(1.0));
    CHECK(polygon_area(Contour{{{0, 0}, {4, 0}, {0, 3}}}) ==
          doctest::Approx(6.0));

    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const Contour c = oracle::random_star_polygon(rng, 32);
        CHECK(std::abs(polygon_area(c) - fan_area(c)) <= 1e-9);
    }
}

TEST_CASE("centroid and area invariances") {
    std::mt19937 rng(41);
    const Contour c = oracle::random_star_polygon(rng, 17);
    Contour rot = c;
    std::rotate(rot.points.begin(), rot.points.begin() + 5, rot.points.end());
    CHECK(polygon_area(rot) == doctest::Approx(polygon_area(c)).epsilon(1e-12));
    const Point c0 = centroid(c), c1 = centroid(rot);
    CHECK(c0.x == doctest::Approx(c1.x));
    CHECK(c0.y == doctest::Approx(c1.y));

    Contour moved = c;
    for (auto& p : moved.points) {
        p.x += 3.25;
        p.y -= 1.5;
    }
    CHECK(centroid(moved).x == doctest::Approx(c0.x + 3.25));
    CHECK(centroid(moved).y == doctest::Approx(c0.y - 1.5));
    CHECK(polygon_area(moved) == doctest::Approx(polygon_area(c)));
}

TEST_CASE("area_gradient: unit square corner") {
    // Point (0,0) with prev (0,1) and next (1,0): counterclockwise order
    // (0,0),(1,0),(1,1),(0,1) in math axes.
    const Contour sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    const auto g = area_gradient(sq);
    CHECK(g[0].x == doctest::Approx(-0.5));
    CHECK(g[0].y == doctest::Approx(-0.5));
}

TEST_CASE("area_gradient matches central finite differences") {
    std::mt19937 rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        Contour c = oracle::random_star_polygon(rng, 8 + trial % 9);
        const auto g = area_gradient(c);
        const double h = 1e-6;
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto fd = [&](double Point::*coord) {
                Contour plus = c, minus = c;
                plus.points[i].*coord += h;
                minus.points[i].*coord -= h;
                return (polygon_area(plus) - polygon_area(minus)) / (2.0 * h);
            };
            const double gx = fd(&Point::x), gy = fd(&Point::y);
            const double scale = std::max({1.0, std::abs(gx), std::abs(gy)});
            CHECK(std::abs(g[i].x - gx) / scale < 1e-6);
            CHECK(std::abs(g[i].y - gy) / scale < 1e-6);
        }
    }
}

TEST_CASE("area_gradient points outward on regular polygons") {
    const Contour c = regular_polygon(16, 5.0, 7.0, 4.0);
    const auto g = area_gradient(c);
    const Point ctr = centroid(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double dot = g[i].x * (c.points[i].x - ctr.x) +
                           g[i].y * (c.points[i].y - ctr.y);
        CHECK(dot > 0.0);
    }
}

TEST_CASE("area_gradient rejects degenerate contours") {
    CHECK_THROWS_AS(area_gradient(Contour{{{0, 0}, {1, 1}, {2, 2}, {3, 3}}}),
                    Error);
}

TEST_CASE("contour CSV round-trip") {
    std::mt19937 rng(61);
    const Contour c = oracle::random_star_polygon(rng, 12, 100.0, 50.0);
    const Contour back = contour_from_csv(contour_to_csv(c));
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(back.points[i].x == doctest::Approx(c.points[i].x).epsilon(1e-6));
        CHECK(back.points[i].y == doctest::Approx(c.points[i].y).epsilon(1e-6));
    }
}

}  // TEST_SUITE
