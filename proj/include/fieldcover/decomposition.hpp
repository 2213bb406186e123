#pragma once

#include <utility>
#include <vector>

#include "fieldcover/geometry.hpp"

namespace fieldcover {

// Orthonormal planning frame: tracks run along `direction`, the sweep that
// produces cells advances along `sweep_axis`.
struct SweepFrame {
    Point direction;
    Point sweep_axis;

    static SweepFrame from_angle_deg(double driving_direction_deg);

    double sweep_value(Point p) const { return dot(p, sweep_axis); }   // lambda
    double along_value(Point p) const { return dot(p, direction); }
    Point to_world(double sweep, double along) const {
        return sweep * sweep_axis + along * direction;
    }
};

enum class EventKind { Open, Close, Split, Merge };

struct CriticalPoint {
    Point location;
    EventKind kind;
    double sweep_value;
};

// One decomposition cell. Headland chains are stored in increasing sweep
// order; the lower chain bounds the cell at its minimum along-track extent,
// the upper chain at its maximum.
struct Cell {
    int id = -1;
    Polygon polygon;
    std::vector<Point> lower_headland;
    std::vector<Point> upper_headland;
    double sweep_begin = 0.0;
    double sweep_end = 0.0;
};

struct CellDecomposition {
    std::vector<Cell> cells;
    std::vector<std::pair<int, int>> adjacency;  // cell id pairs, first < second
    SweepFrame frame;
};

// Vertices of the free-space boundary where slice connectivity changes,
// sorted by (sweep value, along-track value). A vertex qualifies iff both
// incident edges leave it toward the same side of the slice through it,
// under the lexicographic (sweep, along) tie-break that resolves edges
// parallel to the slice.
std::vector<CriticalPoint> critical_points(const FreeSpace& free, const SweepFrame& frame);

CellDecomposition decompose(const FreeSpace& free, const SweepFrame& frame);

// Connectivity between per-cell headlands. Node ids are 2*cell_id + side
// with side 0 = lower, 1 = upper. Two same-side headlands of adjacent cells
// are connected when their chains meet at the corresponding end of the
// shared cell wall.
struct HeadlandGraph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> component;  // node id -> component id

    static int node(int cell_id, int side) { return 2 * cell_id + side; }
};

HeadlandGraph headland_connectivity(const CellDecomposition& d);

}  // namespace fieldcover
