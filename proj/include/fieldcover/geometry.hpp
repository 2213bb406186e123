#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace fieldcover {

// Single absolute tolerance for geometric coincidence tests, in meters.
// Field coordinates are meters; 1e-9 is far below GPS noise and above
// double rounding at field scale.
inline constexpr double kGeomEps = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double k, Point p) { return {k * p.x, k * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

struct Segment {
    Point a;
    Point b;

    double length() const { return distance(a, b); }
};

// Vertex ring without a repeated closing vertex. Outer boundaries are
// counter-clockwise, holes clockwise, so the enclosed region is always to
// the left of travel.
struct Polygon {
    std::vector<Point> vertices;

    std::size_t size() const { return vertices.size(); }
    const Point& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }

    Polygon reversed() const;
};

// Shoelace area; positive for counter-clockwise rings.
// Throws std::invalid_argument for rings with fewer than 3 vertices.
double signed_area(const Polygon& poly);

double distance_point_segment(Point p, Point a, Point b);

bool point_on_ring(const Polygon& poly, Point p, double tol = kGeomEps);

// Strict interior test by crossing number. Points on the ring must be
// filtered with point_on_ring first; this function does not handle them.
bool point_in_ring(const Polygon& poly, Point p);

// Throws std::invalid_argument if the ring is not a valid simple polygon
// (>= 3 vertices, no duplicate consecutive vertices, nonzero area, no
// self-intersection, no zero-angle spikes). `name` labels diagnostics.
void validate_ring(const Polygon& poly, const std::string& name);

// Planar free space: one outer boundary minus pairwise disjoint obstacles.
// The constructor normalizes ring orientation (outer CCW, holes CW) and
// rejects degenerate input instead of repairing it.
struct FreeSpace {
    Polygon boundary;
    std::vector<Polygon> obstacles;

    explicit FreeSpace(Polygon boundary_, std::vector<Polygon> obstacles_ = {});

    double area() const;
};

// True iff p is strictly inside the boundary and strictly outside every
// obstacle. Points on any ring edge count as outside.
bool contains(const FreeSpace& free, Point p);

// Maximal portions of the infinite line through `origin` along `direction`
// that lie inside the free space, ordered along the direction. Segments of
// length <= kGeomEps are dropped. Empty result when the line misses the
// free space.
std::vector<Segment> clip_line(const FreeSpace& free, Point origin, Point direction);

// Same, treating a single ring as solid (no holes).
std::vector<Segment> clip_line(const Polygon& poly, Point origin, Point direction);

}  // namespace fieldcover
