#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fieldcover/tracks.hpp"
#include "support/fixtures.hpp"

using namespace fieldcover;

namespace {

Cell rectangle_cell(double width, double height) {
    const FreeSpace free(fixtures::rectangle(0, 0, width, height));
    CellDecomposition d = decompose(free, fixtures::sweep_x());
    REQUIRE(d.cells.size() == 1);
    return d.cells[0];
}

}  // namespace

TEST_CASE("uniform spacing across an 8 m cell at w = 2") {
    const Cell cell = rectangle_cell(8, 10);
    const MachineSpec spec{2.0, 1.0, true};
    const auto tracks = generate_tracks(cell, spec, fixtures::sweep_x());
    REQUIRE(tracks.size() == 4);
    const double expect[] = {1.0, 3.0, 5.0, 7.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(tracks[i].offset == doctest::Approx(expect[i]));
        CHECK(fixtures::sweep_x().along_value(tracks[i].lower_end) == doctest::Approx(0.0));
        CHECK(fixtures::sweep_x().along_value(tracks[i].upper_end) == doctest::Approx(10.0));
    }
}

TEST_CASE("last track clamps instead of leaving the cell") {
    const Cell cell = rectangle_cell(5, 10);
    const MachineSpec spec{2.0, 1.0, true};
    const auto tracks = generate_tracks(cell, spec, fixtures::sweep_x());
    REQUIRE(tracks.size() == 3);
    CHECK(tracks[0].offset == doctest::Approx(1.0));
    CHECK(tracks[1].offset == doctest::Approx(3.0));
    CHECK(tracks[2].offset == doctest::Approx(4.0));  // clamped from 5 to 5 - w/2
}

TEST_CASE("a cell narrower than the implement gets one midline track") {
    const Cell cell = rectangle_cell(0.5, 10);
    const MachineSpec spec{2.0, 1.0, true};
    const auto tracks = generate_tracks(cell, spec, fixtures::sweep_x());
    REQUIRE(tracks.size() == 1);
    CHECK(tracks[0].offset == doctest::Approx(0.25));
}

TEST_CASE("track ends follow sloped cell boundaries") {
    const CellDecomposition d = decompose(fixtures::square_with_diamond(), fixtures::sweep_x());
    const MachineSpec spec{1.0, 0.5, true};
    const SweepFrame frame = fixtures::sweep_x();
    for (const Cell& cell : d.cells) {
        for (const Track& t : generate_tracks(cell, spec, frame)) {
            CHECK(frame.sweep_value(t.lower_end) == doctest::Approx(t.offset));
            CHECK(frame.along_value(t.lower_end) <= frame.along_value(t.upper_end));
            CHECK(point_on_ring(cell.polygon, t.lower_end, 1e-6));
            CHECK(point_on_ring(cell.polygon, t.upper_end, 1e-6));
        }
    }
}

TEST_CASE("track distances") {
    const Cell cell = rectangle_cell(8, 10);
    const MachineSpec spec{2.0, 1.0, true};
    const auto tracks = generate_tracks(cell, spec, fixtures::sweep_x());
    CHECK(track_distance(tracks[0], tracks[1]) == doctest::Approx(2.0));
    CHECK(track_distance(tracks[0], tracks[3]) == doctest::Approx(6.0));
    CHECK(track_distance(tracks[2], tracks[2]) == doctest::Approx(0.0));
    // Metric axioms on one sweep frame.
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int i = 0; i < 100; ++i) {
        const Track& a = tracks[pick(rng)];
        const Track& b = tracks[pick(rng)];
        const Track& c = tracks[pick(rng)];
        CHECK(track_distance(a, b) == doctest::Approx(track_distance(b, a)));
        CHECK(track_distance(a, c) <= track_distance(a, b) + track_distance(b, c) + 1e-12);
    }
}

TEST_CASE("consecutive non-clamped tracks are spaced exactly w apart") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> widths(0.3, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double w = widths(rng);
        const Cell cell = rectangle_cell(9.7, 6);
        const auto tracks = generate_tracks(cell, MachineSpec{w, 1.0, true}, fixtures::sweep_x());
        for (std::size_t i = 0; i + 2 < tracks.size(); ++i)
            CHECK(track_distance(tracks[i], tracks[i + 1]) == doctest::Approx(w).epsilon(1e-12));
    }
}

namespace {

double chain_distance(const std::vector<Point>& chain, Point p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        best = std::min(best, distance_point_segment(p, chain[i], chain[i + 1]));
    if (chain.size() == 1) best = distance(p, chain.front());
    return best;
}

}  // namespace

TEST_CASE("swaths cover the cell interior on a 0.1 m grid, outside headland margins") {
    const SweepFrame frame = fixtures::sweep_x();
    const MachineSpec spec{1.0, 0.5, true};
    const double margin = 2.0 * spec.r_min;
    for (const FreeSpace& field : {fixtures::empty_square(), fixtures::square_with_diamond(),
                                   fixtures::u_field()}) {
        const CellDecomposition d = decompose(field, frame);
        for (const Cell& cell : d.cells) {
            const auto tracks = generate_tracks(cell, spec, frame);
            long samples = 0, covered = 0;
            for (double x = 0.05; x < 20.0; x += 0.1) {
                for (double y = 0.05; y < 10.0; y += 0.1) {
                    const Point p{x, y};
                    if (!point_in_ring(cell.polygon, p) || point_on_ring(cell.polygon, p, 1e-6))
                        continue;
                    if (chain_distance(cell.lower_headland, p) <= margin ||
                        chain_distance(cell.upper_headland, p) <= margin)
                        continue;
                    ++samples;
                    for (const Track& t : tracks) {
                        if (distance_point_segment(p, t.centerline.a, t.centerline.b) <=
                            spec.operating_width / 2 + 1e-9) {
                            ++covered;
                            break;
                        }
                    }
                }
            }
            if (samples == 0) continue;  // margins can swallow thin cells entirely
            CHECK(static_cast<double>(covered) >= 0.999 * static_cast<double>(samples));
        }
    }
}
