#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fieldcover/geometry.hpp"
#include "support/fixtures.hpp"

using namespace fieldcover;

TEST_CASE("signed_area basics") {
    Polygon square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    CHECK(signed_area(square) == doctest::Approx(1.0));
    CHECK(signed_area(square.reversed()) == doctest::Approx(-1.0));

    Polygon triangle{{{0, 0}, {2, 0}, {0, 2}}};
    CHECK(signed_area(triangle) == doctest::Approx(2.0));

    Polygon degenerate{{{0, 0}, {1, 1}}};
    CHECK_THROWS_AS(signed_area(degenerate), std::invalid_argument);
}

TEST_CASE("signed_area negates under reversal for random convex rings") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        const Polygon poly = fixtures::random_convex_ring(rng, {0, 0}, 10.0, 12);
        const double a = signed_area(poly);
        CHECK(signed_area(poly.reversed()) == doctest::Approx(-a).epsilon(1e-12));
        CHECK(a > 0.0);  // generator yields counter-clockwise hulls
    }
}

TEST_CASE("clip_line through an empty square") {
    const FreeSpace free = fixtures::empty_square();
    const auto segs = clip_line(free, {5, 0}, {0, 1});
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].a.x == doctest::Approx(5.0));
    CHECK(segs[0].a.y == doctest::Approx(0.0));
    CHECK(segs[0].b.y == doctest::Approx(10.0));
}

TEST_CASE("clip_line splits at an obstacle") {
    const FreeSpace free(fixtures::rectangle(0, 0, 10, 10), {fixtures::rectangle(4, 4, 6, 6)});
    const auto segs = clip_line(free, {5, 0}, {0, 1});
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].a.y == doctest::Approx(0.0));
    CHECK(segs[0].b.y == doctest::Approx(4.0));
    CHECK(segs[1].a.y == doctest::Approx(6.0));
    CHECK(segs[1].b.y == doctest::Approx(10.0));
}

TEST_CASE("clip_line misses the field") {
    const FreeSpace free = fixtures::empty_square();
    CHECK(clip_line(free, {20, 0}, {0, 1}).empty());
}

TEST_CASE("clip_line rejects a zero direction") {
    const FreeSpace free = fixtures::empty_square();
    CHECK_THROWS_AS(clip_line(free, {5, 0}, {0, 0}), std::invalid_argument);
}

TEST_CASE("clip_line segments are disjoint, ordered, and shrink as obstacles are added") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> xs(0.5, 9.5);
    const FreeSpace plain = fixtures::empty_square();
    const FreeSpace one = fixtures::square_with_diamond();
    const FreeSpace two(fixtures::rectangle(0, 0, 10, 10),
                        {fixtures::diamond(5, 5, 2), fixtures::diamond(2, 8, 1)});
    auto on_free_space_boundary = [](const FreeSpace& f, Point p) {
        bool on = point_on_ring(f.boundary, p, 1e-9);
        for (const Polygon& o : f.obstacles) on = on || point_on_ring(o, p, 1e-9);
        return on;
    };
    for (int i = 0; i < 100; ++i) {
        const double x = xs(rng);
        double prev_total = std::numeric_limits<double>::infinity();
        for (const FreeSpace* f : {&plain, &one, &two}) {
            const auto segs = clip_line(*f, {x, 0}, {0, 1});
            double total = 0.0;
            for (std::size_t k = 0; k < segs.size(); ++k) {
                total += segs[k].length();
                if (k > 0) CHECK(segs[k].a.y > segs[k - 1].b.y - kGeomEps);
                CHECK(on_free_space_boundary(*f, segs[k].a));
                CHECK(on_free_space_boundary(*f, segs[k].b));
                CHECK(contains(*f, 0.5 * (segs[k].a + segs[k].b)));
            }
            CHECK(total <= prev_total + 1e-9);
            prev_total = total;
        }
    }
}

TEST_CASE("contains respects interior, obstacles, and the edge tie-break") {
    const FreeSpace free = fixtures::square_with_diamond();
    CHECK(contains(free, {1, 1}));
    CHECK_FALSE(contains(free, {5, 5}));   // obstacle center
    CHECK_FALSE(contains(free, {-1, 5}));  // outside
    CHECK_FALSE(contains(free, {5, 0}));   // on the outer boundary
    CHECK_FALSE(contains(free, {4, 4}));   // on an obstacle edge
    for (const Point& v : free.boundary.vertices) CHECK_FALSE(contains(free, v));
    for (const Polygon& o : free.obstacles)
        for (const Point& v : o.vertices) CHECK_FALSE(contains(free, v));
}

TEST_CASE("free space construction rejects degenerate input") {
    CHECK_THROWS_AS(FreeSpace(Polygon{{{0, 0}, {1, 0}}}), std::invalid_argument);
    CHECK_THROWS_AS(FreeSpace(Polygon{{{0, 0}, {1, 0}, {2, 0}}}), std::invalid_argument);
    CHECK_THROWS_AS(FreeSpace(Polygon{{{0, 0}, {1, 0}, {1, 0}, {0, 1}}}), std::invalid_argument);
    // Self-intersecting bow tie.
    CHECK_THROWS_AS(FreeSpace(Polygon{{{0, 0}, {2, 2}, {2, 0}, {0, 2}}}), std::invalid_argument);
    // Obstacle crossing the boundary.
    CHECK_THROWS_AS(
        FreeSpace(fixtures::rectangle(0, 0, 10, 10), {fixtures::rectangle(8, 4, 12, 6)}),
        std::invalid_argument);
    // Obstacle fully outside.
    CHECK_THROWS_AS(
        FreeSpace(fixtures::rectangle(0, 0, 10, 10), {fixtures::rectangle(20, 20, 22, 22)}),
        std::invalid_argument);
    // Overlapping obstacles.
    CHECK_THROWS_AS(
        FreeSpace(fixtures::rectangle(0, 0, 10, 10),
                  {fixtures::rectangle(2, 2, 5, 5), fixtures::rectangle(4, 4, 7, 7)}),
        std::invalid_argument);
    // Obstacle touching the boundary is rejected, not repaired.
    CHECK_THROWS_AS(
        FreeSpace(fixtures::rectangle(0, 0, 10, 10), {fixtures::rectangle(0, 4, 2, 6)}),
        std::invalid_argument);
}

TEST_CASE("free space normalizes ring orientation") {
    FreeSpace free(fixtures::rectangle(0, 0, 10, 10).reversed(), {fixtures::rectangle(4, 4, 6, 6)});
    CHECK(signed_area(free.boundary) > 0.0);
    CHECK(signed_area(free.obstacles[0]) < 0.0);
    CHECK(free.area() == doctest::Approx(96.0));
}
