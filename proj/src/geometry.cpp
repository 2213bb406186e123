#include "fieldcover/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fieldcover {

namespace {

// Intervals [lo, hi] of the line parameter, kept sorted and disjoint.
using IntervalList = std::vector<std::pair<double, double>>;

// Parameter values where the directed line (origin, dir) crosses the ring.
// Vertices exactly on the line are treated as lying on the positive side of
// it, which makes the crossing count around a closed ring always even and
// lets edges collinear with the line drop out entirely.
std::vector<double> ring_crossings(const Polygon& poly, Point origin, Point dir) {
    const Point normal{-dir.y, dir.x};
    std::vector<double> ts;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly.vertex(i);
        const Point b = poly.vertex(i + 1);
        const double sa = dot(a - origin, normal);
        const double sb = dot(b - origin, normal);
        const bool pa = sa > -kGeomEps;  // on-line counts as positive
        const bool pb = sb > -kGeomEps;
        if (pa == pb) continue;
        const double t = dot(a - origin, dir) + (dot(b - origin, dir) - dot(a - origin, dir)) * (sa / (sa - sb));
        ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    return ts;
}

IntervalList inside_intervals(const Polygon& poly, Point origin, Point dir) {
    const std::vector<double> ts = ring_crossings(poly, origin, dir);
    IntervalList out;
    for (std::size_t i = 0; i + 1 < ts.size(); i += 2) out.emplace_back(ts[i], ts[i + 1]);
    return out;
}

IntervalList merge_union(IntervalList v) {
    std::sort(v.begin(), v.end());
    IntervalList out;
    for (const auto& iv : v) {
        if (!out.empty() && iv.first <= out.back().second + kGeomEps) {
            out.back().second = std::max(out.back().second, iv.second);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

IntervalList subtract(const IntervalList& base, const IntervalList& holes) {
    IntervalList out;
    for (auto [lo, hi] : base) {
        double cur = lo;
        for (const auto& h : holes) {
            if (h.second <= cur || h.first >= hi) continue;
            if (h.first > cur) out.emplace_back(cur, h.first);
            cur = std::max(cur, h.second);
        }
        if (cur < hi) out.emplace_back(cur, hi);
    }
    return out;
}

std::vector<Segment> intervals_to_segments(const IntervalList& ivs, Point origin, Point dir) {
    std::vector<Segment> segs;
    for (auto [lo, hi] : ivs) {
        if (hi - lo <= kGeomEps) continue;
        segs.push_back({origin + lo * dir, origin + hi * dir});
    }
    return segs;
}

bool segments_properly_interact(Point a, Point b, Point c, Point d) {
    // Proper crossing or overlap, with tolerance; shared endpoints excluded
    // by the caller (only non-adjacent edges are tested).
    auto orient = [](Point p, Point q, Point r) { return cross(q - p, r - p); };
    const double d1 = orient(a, b, c);
    const double d2 = orient(a, b, d);
    const double d3 = orient(c, d, a);
    const double d4 = orient(c, d, b);
    if (((d1 > kGeomEps && d2 < -kGeomEps) || (d1 < -kGeomEps && d2 > kGeomEps)) &&
        ((d3 > kGeomEps && d4 < -kGeomEps) || (d3 < -kGeomEps && d4 > kGeomEps)))
        return true;
    // Touching or collinear overlap: any endpoint within tolerance of the
    // other segment.
    if (distance_point_segment(c, a, b) <= kGeomEps) return true;
    if (distance_point_segment(d, a, b) <= kGeomEps) return true;
    if (distance_point_segment(a, c, d) <= kGeomEps) return true;
    if (distance_point_segment(b, c, d) <= kGeomEps) return true;
    return false;
}

}  // namespace

Polygon Polygon::reversed() const {
    Polygon r = *this;
    std::reverse(r.vertices.begin(), r.vertices.end());
    return r;
}

double signed_area(const Polygon& poly) {
    if (poly.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly.vertex(i);
        const Point b = poly.vertex(i + 1);
        twice += cross(a, b);
    }
    return 0.5 * twice;
}

double distance_point_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= kGeomEps * kGeomEps) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

bool point_on_ring(const Polygon& poly, Point p, double tol) {
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (distance_point_segment(p, poly.vertex(i), poly.vertex(i + 1)) <= tol) return true;
    return false;
}

bool point_in_ring(const Polygon& poly, Point p) {
    bool inside = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly.vertex(i);
        const Point b = poly.vertex(i + 1);
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (xi > p.x) inside = !inside;
        }
    }
    return inside;
}

void validate_ring(const Polygon& poly, const std::string& name) {
    const std::size_t n = poly.size();
    if (n < 3) throw std::invalid_argument(name + ": needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly.vertex(i);
        const Point b = poly.vertex(i + 1);
        if (!std::isfinite(a.x) || !std::isfinite(a.y))
            throw std::invalid_argument(name + ": non-finite coordinate");
        if (distance(a, b) <= kGeomEps)
            throw std::invalid_argument(name + ": duplicate consecutive vertices");
    }
    if (std::abs(signed_area(poly)) <= kGeomEps)
        throw std::invalid_argument(name + ": zero area");
    // Zero-angle spikes at a vertex.
    for (std::size_t i = 0; i < n; ++i) {
        const Point prev = poly.vertex(i + n - 1);
        const Point v = poly.vertex(i);
        const Point next = poly.vertex(i + 1);
        const Point u1 = prev - v;
        const Point u2 = next - v;
        if (std::abs(cross(u1, u2)) <= kGeomEps * norm(u1) * norm(u2) && dot(u1, u2) > 0.0)
            throw std::invalid_argument(name + ": zero-angle spike");
    }
    // Self-intersection among non-adjacent edges.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_properly_interact(poly.vertex(i), poly.vertex(i + 1), poly.vertex(j),
                                           poly.vertex(j + 1)))
                throw std::invalid_argument(name + ": self-intersection");
        }
    }
}

FreeSpace::FreeSpace(Polygon boundary_, std::vector<Polygon> obstacles_)
    : boundary(std::move(boundary_)), obstacles(std::move(obstacles_)) {
    validate_ring(boundary, "boundary");
    if (signed_area(boundary) < 0.0) boundary = boundary.reversed();
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
        const std::string name = "obstacle " + std::to_string(k);
        validate_ring(obstacles[k], name);
        if (signed_area(obstacles[k]) > 0.0) obstacles[k] = obstacles[k].reversed();
        for (const Point& v : obstacles[k].vertices) {
            if (point_on_ring(boundary, v) || !point_in_ring(boundary, v))
                throw std::invalid_argument(name + ": not strictly inside the boundary");
        }
        for (std::size_t i = 0; i < obstacles[k].size(); ++i)
            for (std::size_t j = 0; j < boundary.size(); ++j)
                if (segments_properly_interact(obstacles[k].vertex(i), obstacles[k].vertex(i + 1),
                                               boundary.vertex(j), boundary.vertex(j + 1)))
                    throw std::invalid_argument(name + ": crosses the boundary");
    }
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
        for (std::size_t l = k + 1; l < obstacles.size(); ++l) {
            const std::string name = "obstacles " + std::to_string(k) + " and " + std::to_string(l);
            for (const Point& v : obstacles[l].vertices)
                if (point_on_ring(obstacles[k], v) || point_in_ring(obstacles[k], v))
                    throw std::invalid_argument(name + ": overlap");
            for (const Point& v : obstacles[k].vertices)
                if (point_on_ring(obstacles[l], v) || point_in_ring(obstacles[l], v))
                    throw std::invalid_argument(name + ": overlap");
            for (std::size_t i = 0; i < obstacles[k].size(); ++i)
                for (std::size_t j = 0; j < obstacles[l].size(); ++j)
                    if (segments_properly_interact(obstacles[k].vertex(i), obstacles[k].vertex(i + 1),
                                                   obstacles[l].vertex(j), obstacles[l].vertex(j + 1)))
                        throw std::invalid_argument(name + ": overlap");
        }
    }
}

double FreeSpace::area() const {
    double a = signed_area(boundary);
    for (const Polygon& o : obstacles) a += signed_area(o);  // holes carry negative area
    return a;
}

bool contains(const FreeSpace& free, Point p) {
    if (point_on_ring(free.boundary, p)) return false;
    if (!point_in_ring(free.boundary, p)) return false;
    for (const Polygon& o : free.obstacles) {
        if (point_on_ring(o, p)) return false;
        if (point_in_ring(o, p)) return false;
    }
    return true;
}

std::vector<Segment> clip_line(const FreeSpace& free, Point origin, Point direction) {
    const double len = norm(direction);
    if (len <= kGeomEps) throw std::invalid_argument("clip_line: zero direction");
    const Point dir = (1.0 / len) * direction;
    IntervalList inside = inside_intervals(free.boundary, origin, dir);
    IntervalList holes;
    for (const Polygon& o : free.obstacles)
        for (const auto& iv : inside_intervals(o, origin, dir)) holes.push_back(iv);
    return intervals_to_segments(subtract(inside, merge_union(holes)), origin, dir);
}

std::vector<Segment> clip_line(const Polygon& poly, Point origin, Point direction) {
    const double len = norm(direction);
    if (len <= kGeomEps) throw std::invalid_argument("clip_line: zero direction");
    const Point dir = (1.0 / len) * direction;
    return intervals_to_segments(inside_intervals(poly, origin, dir), origin, dir);
}

}  // namespace fieldcover
