#include "fieldcover/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fieldcover {

namespace {

constexpr double kSnap = 1e-7;  // coincidence tolerance for chain junctions

struct FrameCoord {
    double s;  // sweep value
    double u;  // along-track value
};

FrameCoord frame_coord(const SweepFrame& f, Point p) { return {f.sweep_value(p), f.along_value(p)}; }

// Lexicographic (sweep, along) comparison with tolerance: the symbolic
// perturbation that orders vertices on edges parallel to the slice.
int lex_compare(FrameCoord a, FrameCoord b) {
    if (a.s < b.s - kGeomEps) return -1;
    if (a.s > b.s + kGeomEps) return 1;
    if (a.u < b.u - kGeomEps) return -1;
    if (a.u > b.u + kGeomEps) return 1;
    return 0;
}

std::vector<const Polygon*> all_rings(const FreeSpace& free) {
    std::vector<const Polygon*> rings{&free.boundary};
    for (const Polygon& o : free.obstacles) rings.push_back(&o);
    return rings;
}

// --- slab pieces ---------------------------------------------------------

struct RingPos {
    int ring = -1;
    std::size_t edge = 0;  // edge from vertex `edge` to `edge + 1`
    Point point;
};

struct Piece {
    std::vector<Point> floor;    // increasing sweep order
    std::vector<Point> ceiling;  // increasing sweep order
    double s_begin = 0.0;
    double s_end = 0.0;
    // wall intervals in along-track coordinates
    double left_lo = 0.0, left_hi = 0.0;
    double right_lo = 0.0, right_hi = 0.0;
    int cell = -1;  // union-find root assigned later
};

RingPos locate_on_rings(const std::vector<const Polygon*>& rings, Point p) {
    RingPos best;
    double best_d = 1e18;
    for (std::size_t r = 0; r < rings.size(); ++r) {
        const Polygon& poly = *rings[r];
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const double d = distance_point_segment(p, poly.vertex(i), poly.vertex(i + 1));
            if (d < best_d) {
                best_d = d;
                best = {static_cast<int>(r), i, p};
            }
        }
    }
    if (best_d > 1e-6) throw std::runtime_error("slice endpoint not on the free-space boundary");
    return best;
}

Point clip_edge_at_sweep(const SweepFrame& frame, Point a, Point b, double s_target) {
    const double sa = frame.sweep_value(a);
    const double sb = frame.sweep_value(b);
    const double t = (s_target - sa) / (sb - sa);
    return a + t * (b - a);
}

// Walk the ring from `pos` toward decreasing (dir = -1) or increasing
// (dir = +1) sweep values until the target slab boundary, collecting the
// chain. There is no critical vertex strictly inside the slab, so the walk
// is monotone under the lexicographic order.
std::vector<Point> walk_chain(const SweepFrame& frame, const Polygon& ring, RingPos pos,
                              double s_target, int dir) {
    const std::size_t n = ring.size();
    std::vector<Point> out;
    out.push_back(pos.point);

    // Choose the ring traversal step (+1 along ring order, -1 against it)
    // that moves toward the target side.
    const Point e0 = ring.vertex(pos.edge);
    const Point e1 = ring.vertex(pos.edge + 1);
    const int to_next = lex_compare(frame_coord(frame, e1), frame_coord(frame, e0));
    int step;           // ring index increment per walk step
    std::size_t vidx;   // next vertex index to visit
    if (to_next == dir) {
        step = 1;
        vidx = (pos.edge + 1) % n;
    } else {
        step = -1;
        vidx = pos.edge;
    }
    // If we start exactly on a vertex, drop the duplicate and restart from it.
    if (distance(pos.point, ring.vertex(vidx)) <= kSnap) {
        out.clear();
    }

    for (std::size_t guard = 0; guard <= n + 1; ++guard) {
        const Point v = ring.vertex(vidx);
        const double sv = frame.sweep_value(v);
        if (dir < 0 ? (sv < s_target - kGeomEps) : (sv > s_target + kGeomEps)) {
            // The edge we arrived along crosses the slab boundary; clip it.
            const Point prev = out.empty() ? pos.point : out.back();
            out.push_back(clip_edge_at_sweep(frame, prev, v, s_target));
            break;
        }
        out.push_back(v);
        if (std::abs(sv - s_target) <= kGeomEps) break;  // landed on the boundary
        vidx = (vidx + n + step) % n;
        if (guard == n + 1) throw std::runtime_error("chain walk did not terminate");
    }
    if (dir < 0) std::reverse(out.begin(), out.end());
    return out;
}

std::vector<Point> dedupe_chain(std::vector<Point> pts) {
    std::vector<Point> out;
    for (const Point& p : pts) {
        if (out.empty() || distance(out.back(), p) > kSnap) out.push_back(p);
    }
    return out;
}

}  // namespace

SweepFrame SweepFrame::from_angle_deg(double driving_direction_deg) {
    const double rad = driving_direction_deg * std::numbers::pi / 180.0;
    Point dir{std::cos(rad), std::sin(rad)};
    // Snap axis-aligned directions so cardinal fields stay numerically exact.
    if (std::abs(dir.x) < 1e-12) dir.x = 0.0;
    if (std::abs(dir.y) < 1e-12) dir.y = 0.0;
    if (std::abs(std::abs(dir.x) - 1.0) < 1e-12) dir.x = dir.x > 0 ? 1.0 : -1.0;
    if (std::abs(std::abs(dir.y) - 1.0) < 1e-12) dir.y = dir.y > 0 ? 1.0 : -1.0;
    return {dir, {dir.y, -dir.x}};
}

std::vector<CriticalPoint> critical_points(const FreeSpace& free, const SweepFrame& frame) {
    std::vector<CriticalPoint> events;
    for (const Polygon* ring : all_rings(free)) {
        const std::size_t n = ring->size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point prev = ring->vertex(i + n - 1);
            const Point v = ring->vertex(i);
            const Point next = ring->vertex(i + 1);
            const int cp = lex_compare(frame_coord(frame, prev), frame_coord(frame, v));
            const int cn = lex_compare(frame_coord(frame, next), frame_coord(frame, v));
            if (cp == 0 || cn == 0)
                throw std::runtime_error("degenerate vertex pair at identical sweep position");
            if (cp != cn) continue;  // regular vertex, boundary passes through
            const bool local_min = cp > 0;
            // Rings keep the free-space interior to the left of travel, so
            // the sign of the turn at v tells whether the interior fills the
            // wedge between the incident edges or its complement.
            const double turn = cross(next - v, prev - v);
            EventKind kind;
            if (local_min) {
                kind = turn > 0.0 ? EventKind::Open : EventKind::Split;
            } else {
                kind = turn > 0.0 ? EventKind::Close : EventKind::Merge;
            }
            events.push_back({v, kind, frame.sweep_value(v)});
        }
    }
    std::sort(events.begin(), events.end(), [&](const CriticalPoint& a, const CriticalPoint& b) {
        const FrameCoord ca = frame_coord(frame, a.location);
        const FrameCoord cb = frame_coord(frame, b.location);
        if (ca.s != cb.s) return ca.s < cb.s;
        if (ca.u != cb.u) return ca.u < cb.u;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (std::abs(events[i].sweep_value - events[i - 1].sweep_value) <= kGeomEps &&
            distance(events[i].location, events[i - 1].location) <= kGeomEps)
            throw std::runtime_error("unresolvable degeneracy: coincident critical points");
    }
    return events;
}

CellDecomposition decompose(const FreeSpace& free, const SweepFrame& frame) {
    const std::vector<CriticalPoint> events = critical_points(free, frame);
    const std::vector<const Polygon*> rings = all_rings(free);

    // Distinct event sweep values; slabs live between consecutive ones.
    std::vector<double> levels;
    for (const CriticalPoint& e : events) {
        if (levels.empty() || e.sweep_value > levels.back() + kGeomEps)
            levels.push_back(e.sweep_value);
    }
    if (levels.size() < 2) throw std::runtime_error("free space has no sweep extent");

    std::vector<std::vector<Piece>> slabs;
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        const double a = levels[k];
        const double b = levels[k + 1];
        std::vector<Piece> pieces;
        const double mid = 0.5 * (a + b);
        const Point origin = frame.to_world(mid, 0.0);
        for (const Segment& seg : clip_line(free, origin, frame.direction)) {
            Piece piece;
            piece.s_begin = a;
            piece.s_end = b;
            const RingPos floor_pos = locate_on_rings(rings, seg.a);
            const RingPos ceil_pos = locate_on_rings(rings, seg.b);
            std::vector<Point> fl = walk_chain(frame, *rings[floor_pos.ring], floor_pos, a, -1);
            std::vector<Point> fr = walk_chain(frame, *rings[floor_pos.ring], floor_pos, b, +1);
            fl.insert(fl.end(), fr.begin() + 1, fr.end());
            piece.floor = dedupe_chain(std::move(fl));
            std::vector<Point> cl = walk_chain(frame, *rings[ceil_pos.ring], ceil_pos, a, -1);
            std::vector<Point> cr = walk_chain(frame, *rings[ceil_pos.ring], ceil_pos, b, +1);
            cl.insert(cl.end(), cr.begin() + 1, cr.end());
            piece.ceiling = dedupe_chain(std::move(cl));
            piece.left_lo = frame.along_value(piece.floor.front());
            piece.left_hi = frame.along_value(piece.ceiling.front());
            piece.right_lo = frame.along_value(piece.floor.back());
            piece.right_hi = frame.along_value(piece.ceiling.back());
            pieces.push_back(std::move(piece));
        }
        slabs.push_back(std::move(pieces));
    }

    // Union-find over all pieces.
    std::vector<std::pair<std::size_t, std::size_t>> index;  // piece id -> (slab, position)
    std::vector<int> parent;
    for (std::size_t k = 0; k < slabs.size(); ++k)
        for (std::size_t i = 0; i < slabs[k].size(); ++i) {
            index.emplace_back(k, i);
            parent.push_back(static_cast<int>(parent.size()));
        }
    auto piece_id = [&](std::size_t k, std::size_t i) {
        std::size_t id = 0;
        for (std::size_t kk = 0; kk < k; ++kk) id += slabs[kk].size();
        return id + i;
    };
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

    struct WallContact {
        std::size_t left_piece, right_piece;
        double lo, hi;
        bool merged = false;
    };
    std::vector<WallContact> contacts;

    for (std::size_t k = 0; k + 1 < slabs.size(); ++k) {
        const double boundary_s = levels[k + 1];
        std::vector<double> event_us;
        for (const CriticalPoint& e : events)
            if (std::abs(e.sweep_value - boundary_s) <= kGeomEps)
                event_us.push_back(frame.along_value(e.location));

        std::vector<std::vector<std::size_t>> right_adj(slabs[k].size());
        std::vector<std::vector<std::size_t>> left_adj(slabs[k + 1].size());
        for (std::size_t i = 0; i < slabs[k].size(); ++i) {
            for (std::size_t j = 0; j < slabs[k + 1].size(); ++j) {
                const Piece& p = slabs[k][i];
                const Piece& q = slabs[k + 1][j];
                const double lo = std::max(p.right_lo, q.left_lo);
                const double hi = std::min(p.right_hi, q.left_hi);
                if (hi - lo <= kGeomEps) continue;
                right_adj[i].push_back(j);
                left_adj[j].push_back(i);
                contacts.push_back({piece_id(k, i), piece_id(k + 1, j), lo, hi, false});
            }
        }
        for (WallContact& c : contacts) {
            if (index[c.left_piece].first != k) continue;
            const std::size_t i = index[c.left_piece].second;
            const std::size_t j = index[c.right_piece].second;
            if (right_adj[i].size() != 1 || left_adj[j].size() != 1) continue;
            bool touched = false;
            for (double ue : event_us)
                if (ue >= c.lo - kSnap && ue <= c.hi + kSnap) touched = true;
            if (touched) continue;
            c.merged = true;
            unite(static_cast<int>(c.left_piece), static_cast<int>(c.right_piece));
        }
    }

    // Assemble cells from merged piece runs.
    std::vector<int> root_to_cell(parent.size(), -1);
    struct ProtoCell {
        std::vector<std::size_t> piece_ids;  // in slab order
    };
    std::vector<ProtoCell> protos;
    for (std::size_t id = 0; id < parent.size(); ++id) {
        const int root = find(static_cast<int>(id));
        if (root_to_cell[root] < 0) {
            root_to_cell[root] = static_cast<int>(protos.size());
            protos.push_back({});
        }
        protos[root_to_cell[root]].piece_ids.push_back(id);  // ids are already slab-ordered
    }

    CellDecomposition out;
    out.frame = frame;
    for (ProtoCell& proto : protos) {
        Cell cell;
        std::vector<Point> floor, ceiling;
        for (std::size_t id : proto.piece_ids) {
            const Piece& piece = slabs[index[id].first][index[id].second];
            floor.insert(floor.end(), piece.floor.begin(), piece.floor.end());
            ceiling.insert(ceiling.end(), piece.ceiling.begin(), piece.ceiling.end());
        }
        cell.lower_headland = dedupe_chain(std::move(floor));
        cell.upper_headland = dedupe_chain(std::move(ceiling));
        const Piece& first = slabs[index[proto.piece_ids.front()].first][index[proto.piece_ids.front()].second];
        const Piece& last = slabs[index[proto.piece_ids.back()].first][index[proto.piece_ids.back()].second];
        cell.sweep_begin = first.s_begin;
        cell.sweep_end = last.s_end;
        std::vector<Point> ring = cell.lower_headland;
        for (auto it = cell.upper_headland.rbegin(); it != cell.upper_headland.rend(); ++it)
            ring.push_back(*it);
        ring = dedupe_chain(std::move(ring));
        if (distance(ring.front(), ring.back()) <= kSnap) ring.pop_back();
        cell.polygon.vertices = std::move(ring);
        out.cells.push_back(std::move(cell));
    }

    // Deterministic ids: opening sweep value, then along-track position of
    // the lower boundary at opening.
    std::vector<std::size_t> order(out.cells.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Cell& ca = out.cells[a];
        const Cell& cb = out.cells[b];
        if (ca.sweep_begin != cb.sweep_begin) return ca.sweep_begin < cb.sweep_begin;
        return frame.along_value(ca.lower_headland.front()) <
               frame.along_value(cb.lower_headland.front());
    });
    std::vector<Cell> sorted;
    std::vector<int> proto_to_id(out.cells.size(), -1);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        proto_to_id[order[rank]] = static_cast<int>(rank);
        Cell cell = std::move(out.cells[order[rank]]);
        cell.id = static_cast<int>(rank);
        sorted.push_back(std::move(cell));
    }
    out.cells = std::move(sorted);

    auto cell_of_piece = [&](std::size_t id) {
        return proto_to_id[root_to_cell[find(static_cast<int>(id))]];
    };
    for (const WallContact& c : contacts) {
        if (c.merged) continue;
        int a = cell_of_piece(c.left_piece);
        int b = cell_of_piece(c.right_piece);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        out.adjacency.emplace_back(a, b);
    }
    std::sort(out.adjacency.begin(), out.adjacency.end());
    out.adjacency.erase(std::unique(out.adjacency.begin(), out.adjacency.end()),
                        out.adjacency.end());
    return out;
}

HeadlandGraph headland_connectivity(const CellDecomposition& d) {
    HeadlandGraph g;
    g.node_count = 2 * static_cast<int>(d.cells.size());
    std::vector<int> parent(g.node_count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    const SweepFrame& frame = d.frame;
    for (auto [ia, ib] : d.adjacency) {
        const Cell* a = &d.cells[ia];
        const Cell* b = &d.cells[ib];
        if (a->sweep_end > b->sweep_end) std::swap(a, b);  // a is the left cell
        // Shared wall interval in along-track coordinates.
        const double a_lo = frame.along_value(a->lower_headland.back());
        const double a_hi = frame.along_value(a->upper_headland.back());
        const double b_lo = frame.along_value(b->lower_headland.front());
        const double b_hi = frame.along_value(b->upper_headland.front());
        const double lo = std::max(a_lo, b_lo);
        const double hi = std::min(a_hi, b_hi);
        if (hi - lo <= kGeomEps) continue;
        if (std::abs(a_lo - lo) <= kSnap && std::abs(b_lo - lo) <= kSnap) {
            const int x = HeadlandGraph::node(a->id, 0);
            const int y = HeadlandGraph::node(b->id, 0);
            g.edges.emplace_back(std::min(x, y), std::max(x, y));
            parent[find(x)] = find(y);
        }
        if (std::abs(a_hi - hi) <= kSnap && std::abs(b_hi - hi) <= kSnap) {
            const int x = HeadlandGraph::node(a->id, 1);
            const int y = HeadlandGraph::node(b->id, 1);
            g.edges.emplace_back(std::min(x, y), std::max(x, y));
            parent[find(x)] = find(y);
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

    g.component.resize(g.node_count);
    std::vector<int> remap(g.node_count, -1);
    int next = 0;
    for (int i = 0; i < g.node_count; ++i) {
        const int root = find(i);
        if (remap[root] < 0) remap[root] = next++;
        g.component[i] = remap[root];
    }
    return g;
}

}  // namespace fieldcover
