#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fieldcover/decomposition.hpp"
#include "fieldcover/geometry.hpp"
#include "fieldcover/sequencing.hpp"

namespace fixtures {

using namespace fieldcover;

inline Polygon rectangle(double x0, double y0, double x1, double y1) {
    return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

inline Polygon diamond(double cx, double cy, double r) {
    return Polygon{{{cx + r, cy}, {cx, cy + r}, {cx - r, cy}, {cx, cy - r}}};
}

inline FreeSpace empty_square(double size = 10.0) { return FreeSpace(rectangle(0, 0, size, size)); }

// 10x10 square with a diamond obstacle centered at (5,5), tips at
// (3,5),(7,5),(5,3),(5,7).
inline FreeSpace square_with_diamond() {
    return FreeSpace(rectangle(0, 0, 10, 10), {diamond(5, 5, 2)});
}

// 20x10 field with two sweep-separated diamonds.
inline FreeSpace square_with_two_diamonds() {
    return FreeSpace(rectangle(0, 0, 20, 10), {diamond(5, 5, 2), diamond(15, 5, 2)});
}

// Rectangle with a notch removed from the top: prongs at x in [0,4] and
// [8,12] keep full height, the middle drops to y <= 4.
inline FreeSpace u_field() {
    return FreeSpace(
        Polygon{{{0, 0}, {12, 0}, {12, 10}, {8, 10}, {8, 4}, {4, 4}, {4, 10}, {0, 10}}});
}

// Rectangle with a notch removed from the right side (opening faces +x).
inline FreeSpace c_field() {
    return FreeSpace(
        Polygon{{{0, 0}, {10, 0}, {10, 3}, {4, 3}, {4, 7}, {10, 7}, {10, 10}, {0, 10}}});
}

// Rectangle with two notches from the right: the middle prong's headlands
// are both interior notch edges, unreachable from any other headland.
inline FreeSpace e_field() {
    return FreeSpace(Polygon{{{0, 0},
                              {10, 0},
                              {10, 2},
                              {4, 2},
                              {4, 4},
                              {10, 4},
                              {10, 6},
                              {4, 6},
                              {4, 8},
                              {10, 8},
                              {10, 10},
                              {0, 10}}});
}

inline SweepFrame sweep_x() { return SweepFrame::from_angle_deg(90.0); }  // tracks along +y

// --- independent oracles ---------------------------------------------------

// Critical vertices by direct enumeration: both neighbours strictly on the
// same side of the slice under the (sweep, along) lexicographic order.
struct OracleEvent {
    Point location;
    bool local_min = false;
};

inline std::vector<OracleEvent> oracle_critical_vertices(const FreeSpace& free,
                                                         const SweepFrame& frame) {
    std::vector<OracleEvent> events;
    auto scan = [&](const Polygon& ring) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point prev = ring.vertex(i + n - 1);
            const Point v = ring.vertex(i);
            const Point next = ring.vertex(i + 1);
            auto key = [&](Point p) {
                return std::pair<double, double>(frame.sweep_value(p), frame.along_value(p));
            };
            const bool prev_greater = key(prev) > key(v);
            const bool next_greater = key(next) > key(v);
            if (prev_greater == next_greater) events.push_back({v, prev_greater});
        }
    };
    scan(free.boundary);
    for (const Polygon& o : free.obstacles) scan(o);
    std::sort(events.begin(), events.end(), [&](const OracleEvent& a, const OracleEvent& b) {
        return std::pair(frame.sweep_value(a.location), frame.along_value(a.location)) <
               std::pair(frame.sweep_value(b.location), frame.along_value(b.location));
    });
    return events;
}

// Exhaustive open-path minimum over all permutations. Transition costs are
// accumulated back-to-front, matching the suffix recursion of the dynamic
// program, so optimal values agree bit for bit.
inline double brute_force_min_cost(const CostMatrix& m) {
    std::vector<int> perm(m.n);
    for (int i = 0; i < m.n; ++i) perm[i] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        bool ok = true;
        for (int k = m.n - 2; k >= 0; --k) {
            const double c = m.at(perm[k], perm[k + 1]);
            if (m.infinite(c)) {
                ok = false;
                break;
            }
            total = c + total;
        }
        if (ok) best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Exhaustive minimum over orders and entry-end assignments.
inline double brute_force_min_cost(const GlobalCostMatrix& m) {
    std::vector<int> perm(m.n);
    for (int i = 0; i < m.n; ++i) perm[i] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
        for (unsigned ends = 0; ends < (1u << m.n); ++ends) {
            double total = 0.0;
            bool ok = true;
            for (int k = 0; k + 1 < m.n; ++k) {
                const int exit_end = 1 - ((ends >> k) & 1);
                const int entry_end = (ends >> (k + 1)) & 1;
                const double c = m.at(perm[k], exit_end, perm[k + 1], entry_end);
                if (m.infinite(c)) {
                    ok = false;
                    break;
                }
                total += c;
            }
            if (ok) best = std::min(best, total);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline CostMatrix random_symmetric_matrix(std::mt19937& rng, int n, double lo = 1.0,
                                          double hi = 100.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    CostMatrix m;
    m.n = n;
    m.cost.assign(static_cast<std::size_t>(n) * n, 0.0);
    double max_finite = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double c = dist(rng);
            m.cost[static_cast<std::size_t>(i) * n + j] = c;
            m.cost[static_cast<std::size_t>(j) * n + i] = c;
            max_finite = std::max(max_finite, c);
        }
    }
    m.inf = std::max(1.0, 10.0 * n * max_finite);
    return m;
}

// Random convex ring: convex hull of points on a jittered circle.
inline Polygon random_convex_ring(std::mt19937& rng, Point center, double radius, int points = 10) {
    std::uniform_real_distribution<double> angle_jitter(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> radial(0.55, 1.0);
    std::vector<double> angles;
    for (int i = 0; i < points; ++i) angles.push_back(angle_jitter(rng));
    std::sort(angles.begin(), angles.end());
    Polygon poly;
    for (double a : angles) {
        const double r = radius * radial(rng);
        poly.vertices.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
    }
    // Convex hull (monotone chain) to guarantee convexity.
    std::vector<Point> pts = poly.vertices;
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    auto build = [&](bool upper) {
        std::vector<Point> chain;
        for (std::size_t idx = 0; idx < pts.size(); ++idx) {
            const Point p = upper ? pts[pts.size() - 1 - idx] : pts[idx];
            while (chain.size() >= 2 &&
                   cross(chain.back() - chain[chain.size() - 2], p - chain[chain.size() - 2]) <=
                       1e-12)
                chain.pop_back();
            chain.push_back(p);
        }
        return chain;
    };
    std::vector<Point> lower = build(false);
    std::vector<Point> upper = build(true);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    Polygon hull;
    hull.vertices = lower;
    return hull;
}

// Convex boundary holding k sweep-separated convex obstacles.
inline FreeSpace random_convex_field(std::mt19937& rng, int obstacles) {
    const double width = 60.0;
    Polygon boundary = random_convex_ring(rng, {width / 2, 20.0}, 28.0, 14);
    FreeSpace empty(boundary);
    std::vector<Polygon> holes;
    std::uniform_real_distribution<double> oy(14.0, 26.0);
    for (int k = 0; k < obstacles; ++k) {
        const double cx = width / 2 + (k - (obstacles - 1) / 2.0) * 11.0;
        for (int attempt = 0; attempt < 60; ++attempt) {
            Polygon hole = random_convex_ring(rng, {cx, oy(rng)}, 3.2, 8);
            bool ok = true;
            for (const Point& v : hole.vertices)
                if (!contains(empty, v)) ok = false;
            // stay clear of the boundary so validation passes
            for (const Point& v : hole.vertices)
                for (std::size_t i = 0; ok && i < boundary.size(); ++i)
                    if (distance_point_segment(v, boundary.vertex(i), boundary.vertex(i + 1)) < 0.5)
                        ok = false;
            if (!ok) continue;
            holes.push_back(hole);
            break;
        }
    }
    return FreeSpace(boundary, holes);
}

}  // namespace fixtures
