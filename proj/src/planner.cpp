#include "fieldcover/planner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

namespace fieldcover {

namespace {

constexpr double kSnap = 1e-7;
constexpr double kMinTrackLength = 1e-3;  // floor for margin clamping

double effective_margin(const PlannerConfig& config, const MachineSpec& spec) {
    return config.headland_margin < 0.0 ? 2.0 * spec.r_min : config.headland_margin;
}

// Shortened traversal endpoints: each end pulled in by the headland margin,
// clamped so the productive stretch keeps a minimal length.
struct TrackEnds {
    Point pt[2];      // shortened end points, index = side (0 lower, 1 upper)
    double margin[2];
};

std::vector<TrackEnds> shorten_tracks(const FieldModel& model, double margin) {
    const SweepFrame& frame = model.decomposition.frame;
    std::vector<TrackEnds> out;
    out.reserve(model.tracks.size());
    for (const Track& t : model.tracks) {
        const double u_lo = frame.along_value(t.lower_end);
        const double u_hi = frame.along_value(t.upper_end);
        double m = margin;
        if (u_hi - u_lo - 2.0 * m < kMinTrackLength)
            m = std::max(0.0, 0.5 * (u_hi - u_lo - kMinTrackLength));
        TrackEnds e;
        e.pt[0] = frame.to_world(t.offset, u_lo + m);
        e.pt[1] = frame.to_world(t.offset, u_hi - m);
        e.margin[0] = e.margin[1] = m;
        out.push_back(e);
    }
    return out;
}

// --- headland routing graph ------------------------------------------------

// Chains, cell walls and the track-end stubs, for transits that cannot be a
// single turn maneuver.
struct RouteGraph {
    std::vector<Point> nodes;
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::map<std::pair<long long, long long>, int> lookup;

    int node_at(Point p) {
        const std::pair<long long, long long> key{std::llround(p.x * 1e6),
                                                  std::llround(p.y * 1e6)};
        auto it = lookup.find(key);
        if (it != lookup.end()) return it->second;
        const int id = static_cast<int>(nodes.size());
        nodes.push_back(p);
        adj.emplace_back();
        lookup.emplace(key, id);
        return id;
    }

    void add_edge(Point a, Point b) {
        const int ia = node_at(a);
        const int ib = node_at(b);
        if (ia == ib) return;
        const double len = distance(a, b);
        adj[ia].emplace_back(ib, len);
        adj[ib].emplace_back(ia, len);
    }
};

RouteGraph build_route_graph(const FieldModel& model, const std::vector<TrackEnds>& ends) {
    const SweepFrame& frame = model.decomposition.frame;
    RouteGraph g;

    // Headland chains, subdivided at the track feet so stubs join cleanly.
    for (const Cell& cell : model.decomposition.cells) {
        for (int side = 0; side < 2; ++side) {
            const std::vector<Point>& chain = side == 0 ? cell.lower_headland : cell.upper_headland;
            std::vector<Point> pts = chain;
            for (std::size_t i = 0; i < model.tracks.size(); ++i) {
                if (model.tracks[i].cell_id != cell.id) continue;
                pts.push_back(side == 0 ? model.tracks[i].lower_end : model.tracks[i].upper_end);
            }
            std::sort(pts.begin(), pts.end(), [&](Point a, Point b) {
                return frame.sweep_value(a) < frame.sweep_value(b);
            });
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                if (distance(pts[i], pts[i + 1]) <= kSnap) continue;
                g.add_edge(pts[i], pts[i + 1]);
            }
        }
    }

    // Cell walls, split at every wall endpoint sharing the same sweep value.
    struct Wall {
        double s, lo, hi;
    };
    std::vector<Wall> walls;
    for (const Cell& cell : model.decomposition.cells) {
        walls.push_back({cell.sweep_begin, frame.along_value(cell.lower_headland.front()),
                         frame.along_value(cell.upper_headland.front())});
        walls.push_back({cell.sweep_end, frame.along_value(cell.lower_headland.back()),
                         frame.along_value(cell.upper_headland.back())});
    }
    std::sort(walls.begin(), walls.end(), [](const Wall& a, const Wall& b) { return a.s < b.s; });
    for (std::size_t i = 0; i < walls.size();) {
        std::size_t j = i;
        while (j < walls.size() && walls[j].s - walls[i].s <= kSnap) ++j;
        std::vector<double> cuts;
        for (std::size_t k = i; k < j; ++k) {
            cuts.push_back(walls[k].lo);
            cuts.push_back(walls[k].hi);
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double lo = cuts[c];
            const double hi = cuts[c + 1];
            if (hi - lo <= kSnap) continue;
            const double mid = 0.5 * (lo + hi);
            bool covered = false;
            for (std::size_t k = i; k < j; ++k)
                if (walls[k].lo - kSnap <= mid && mid <= walls[k].hi + kSnap) covered = true;
            if (!covered) continue;
            g.add_edge(frame.to_world(walls[i].s, lo), frame.to_world(walls[i].s, hi));
        }
        i = j;
    }

    // Stubs from the shortened traversal endpoints to the chains.
    for (std::size_t i = 0; i < model.tracks.size(); ++i) {
        if (ends[i].margin[0] > kSnap) g.add_edge(ends[i].pt[0], model.tracks[i].lower_end);
        if (ends[i].margin[1] > kSnap) g.add_edge(ends[i].pt[1], model.tracks[i].upper_end);
        else g.node_at(ends[i].pt[1]);
        if (ends[i].margin[0] <= kSnap) g.node_at(ends[i].pt[0]);
    }
    return g;
}

std::vector<Point> shortest_route(RouteGraph& g, Point from, Point to) {
    const int s = g.node_at(from);
    const int t = g.node_at(to);
    const int n = static_cast<int>(g.nodes.size());
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<int> prev(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        if (v == t) break;
        for (auto [w, len] : g.adj[v]) {
            if (d + len < dist[w] - 1e-15) {
                dist[w] = d + len;
                prev[w] = v;
                pq.emplace(dist[w], w);
            }
        }
    }
    if (dist[t] == std::numeric_limits<double>::infinity())
        throw std::runtime_error("headland route not found; free space may be disconnected");
    std::vector<Point> path;
    for (int v = t; v != -1; v = prev[v]) path.push_back(g.nodes[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

// --- transit legs ------------------------------------------------------------

// Shallowest boundary-chain level over [s_lo, s_hi] in outward coordinates
// (w = sign * u grows away from the cell interior): the turn excursion must
// stay short of this to remain inside the free space.
double chain_limit(const SweepFrame& frame, const std::vector<const std::vector<Point>*>& chains,
                   double s_lo, double s_hi, double sign) {
    double tightest = std::numeric_limits<double>::infinity();
    for (const std::vector<Point>* chain : chains) {
        for (std::size_t i = 0; i + 1 < chain->size(); ++i) {
            const Point a = (*chain)[i];
            const Point b = (*chain)[i + 1];
            double s0 = frame.sweep_value(a), w0 = sign * frame.along_value(a);
            double s1 = frame.sweep_value(b), w1 = sign * frame.along_value(b);
            if (s1 < s0) {
                std::swap(s0, s1);
                std::swap(w0, w1);
            }
            const double lo = std::max(s0, s_lo);
            const double hi = std::min(s1, s_hi);
            if (hi < lo) continue;
            if (s1 - s0 <= kSnap) {
                tightest = std::min(tightest, std::min(w0, w1));
                continue;
            }
            const double w_lo = w0 + (w1 - w0) * (lo - s0) / (s1 - s0);
            const double w_hi = w0 + (w1 - w0) * (hi - s0) / (s1 - s0);
            tightest = std::min(tightest, std::min(w_lo, w_hi));
        }
    }
    return tightest;
}

// Headland excursion in frame coordinates whose measured length equals the
// maneuver formula: out to a level line, across, and back, with vertical
// pleats absorbing whatever length the level line cannot. The level is
// clamped by the headland margin and by the actual boundary chains, so the
// path stays inside the free space even where chains slope.
std::optional<std::vector<Point>> turn_polyline(const SweepFrame& frame, Point a_world,
                                                Point b_world, int side, double target_len,
                                                double depth_cap,
                                                const std::vector<const std::vector<Point>*>& chains) {
    const double sa = frame.sweep_value(a_world), sb = frame.sweep_value(b_world);
    const double sign = side == 0 ? -1.0 : 1.0;  // outward = away from the cell interior
    const double wa = sign * frame.along_value(a_world);
    const double wb = sign * frame.along_value(b_world);
    const double c = std::abs(sb - sa);
    if (target_len < c + std::abs(wa - wb) + 1e-12) return std::nullopt;
    if (depth_cap <= kSnap) return std::nullopt;
    const double base_w = std::max(wa, wb);  // the end closest to the headland

    const double limit =
        chain_limit(frame, chains, std::min(sa, sb), std::max(sa, sb), sign);
    const double clearance = 0.02 * depth_cap;
    const double deepest = std::min(base_w + depth_cap, limit - clearance);
    if (deepest <= base_w + kSnap) return std::nullopt;  // no room between ends and boundary

    auto emit = [&](double s, double w) { return frame.to_world(s, sign * w); };
    const double natural = 0.5 * (wa + wb + target_len - c);  // zero-pleat level
    std::vector<Point> pts;
    pts.push_back(a_world);
    if (natural <= deepest) {
        pts.push_back(emit(sa, natural));
        pts.push_back(emit(sb, natural));
    } else {
        const double level = deepest;
        const double extra = target_len - ((level - wa) + c + (level - wb));
        const double h_max = 0.8 * (level - base_w);  // pleat tips stay inside the strip
        const int pleats = std::max(1, static_cast<int>(std::ceil(extra / (2.0 * h_max))));
        const double h = 0.5 * extra / pleats;
        pts.push_back(emit(sa, level));
        for (int i = 1; i <= pleats; ++i) {
            const double s = sa + (sb - sa) * i / (pleats + 1.0);
            pts.push_back(emit(s, level));
            pts.push_back(emit(s, level - h));
            pts.push_back(emit(s, level));
        }
        pts.push_back(emit(sb, level));
    }
    pts.push_back(b_world);
    return pts;
}

// Final guard for cases the chain clamp cannot see (cell ceilings dipping
// into the strip, ends near cell corners): sample the path against the cell
// polygons and reject it if any sample escapes.
bool polyline_inside_cells(const CellDecomposition& d, const std::vector<Point>& pts) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double len = distance(pts[i], pts[i + 1]);
        const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.2)));
        for (int k = 0; k <= steps; ++k) {
            const Point p = pts[i] + (static_cast<double>(k) / steps) * (pts[i + 1] - pts[i]);
            bool ok = false;
            for (const Cell& cell : d.cells) {
                if (point_in_ring(cell.polygon, p) || point_on_ring(cell.polygon, p, 1e-7)) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
    }
    return true;
}

double polyline_length(const std::vector<Point>& pts) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) len += distance(pts[i], pts[i + 1]);
    return len;
}

// One traversal step of an assembled plan.
struct Visit {
    int track = -1;
    int entry_end = 0;
    // Transition from the previous visit.
    bool via_turn = false;
    TurnCost turn{};
};

CoveragePlan assemble_plan(const FieldModel& model, const std::vector<TrackEnds>& ends,
                           const std::vector<Visit>& visits, const std::vector<int>& cells_visited,
                           bool used_exact) {
    const SweepFrame& frame = model.decomposition.frame;
    CoveragePlan plan;
    plan.used_exact = used_exact;
    plan.metrics.cells_visited = cells_visited;
    RouteGraph routes = build_route_graph(model, ends);

    // Chains per headland component, for clamping turn excursions.
    std::vector<std::vector<const std::vector<Point>*>> component_chains(
        2 * model.decomposition.cells.size());
    for (const Cell& cell : model.decomposition.cells) {
        for (int side = 0; side < 2; ++side) {
            const int comp = model.connectivity.component[HeadlandGraph::node(cell.id, side)];
            component_chains[comp].push_back(side == 0 ? &cell.lower_headland
                                                       : &cell.upper_headland);
        }
    }

    for (std::size_t k = 0; k < visits.size(); ++k) {
        const Visit& v = visits[k];
        plan.sequence.order.push_back(v.track);
        plan.sequence.entry_ends.push_back(v.entry_end);
        const Point entry = ends[v.track].pt[v.entry_end];
        const Point exit = ends[v.track].pt[1 - v.entry_end];

        if (k > 0) {
            const Visit& p = visits[k - 1];
            const Point from = ends[p.track].pt[1 - p.entry_end];
            PlanLeg transit;
            transit.type = LegType::Transit;
            bool built = false;
            if (v.via_turn) {
                const int side = 1 - p.entry_end;  // the headland side the turn happens on
                const double cap =
                    0.95 * std::min(ends[p.track].margin[1 - p.entry_end],
                                    ends[v.track].margin[v.entry_end]);
                const int comp = model.connectivity.component[HeadlandGraph::node(
                    model.tracks[p.track].cell_id, side)];
                auto pts = turn_polyline(frame, from, entry, side, v.turn.length, cap,
                                         component_chains[comp]);
                if (pts && !polyline_inside_cells(model.decomposition, *pts)) pts.reset();
                if (pts) {
                    transit.turn = v.turn.kind;
                    transit.polyline = std::move(*pts);
                    transit.length = v.turn.length;
                    built = true;
                }
            }
            if (!built) {
                transit.polyline = shortest_route(routes, from, entry);
                transit.length = polyline_length(transit.polyline);
            }
            if (transit.length > kGeomEps) {
                plan.metrics.nonproductive_m += transit.length;
                if (transit.turn) {
                    switch (*transit.turn) {
                        case TurnKind::Omega: ++plan.metrics.omega_turns; break;
                        case TurnKind::Pi: ++plan.metrics.pi_turns; break;
                        case TurnKind::Tee: ++plan.metrics.tee_turns; break;
                    }
                } else {
                    ++plan.metrics.routed_transits;
                }
                plan.legs.push_back(std::move(transit));
            }
        }

        PlanLeg leg;
        leg.type = LegType::Track;
        leg.track_id = v.track;
        leg.forward = v.entry_end == 0;
        leg.polyline = {entry, exit};
        leg.length = distance(entry, exit);
        plan.metrics.productive_m += leg.length;
        plan.legs.push_back(std::move(leg));
    }
    return plan;
}

std::vector<int> dfs_preorder(const CellDecomposition& d, int start_cell) {
    std::vector<std::vector<int>> neighbors(d.cells.size());
    for (auto [a, b] : d.adjacency) {
        neighbors[a].push_back(b);
        neighbors[b].push_back(a);
    }
    for (auto& list : neighbors) std::sort(list.begin(), list.end());
    std::vector<int> order;
    std::vector<bool> seen(d.cells.size(), false);
    std::function<void(int)> walk = [&](int c) {
        seen[c] = true;
        order.push_back(c);
        for (int nb : neighbors[c])
            if (!seen[nb]) walk(nb);
    };
    walk(start_cell);
    for (std::size_t c = 0; c < d.cells.size(); ++c)
        if (!seen[c]) walk(static_cast<int>(c));  // defensive: disconnected free space
    return order;
}

int cell_containing(const CellDecomposition& d, Point p) {
    for (const Cell& c : d.cells)
        if (point_in_ring(c.polygon, p)) return c.id;
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (const Cell& c : d.cells) {
        for (std::size_t i = 0; i < c.polygon.size(); ++i) {
            const double dist =
                distance_point_segment(p, c.polygon.vertex(i), c.polygon.vertex(i + 1));
            if (dist < best_d) {
                best_d = dist;
                best = c.id;
            }
        }
    }
    return best;
}

double track_to_polygon_distance(const Track& t, const Polygon& poly) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& v : poly.vertices)
        best = std::min(best, distance_point_segment(v, t.centerline.a, t.centerline.b));
    return best;
}

Sequence solve_cell(const CostMatrix& m, const SolveOptions& opt, bool* used_exact) {
    if (m.n <= opt.exact_threshold) return solve_exact(m, opt);
    *used_exact = false;
    return solve_heuristic(m, opt);
}

std::string describe_component(const FieldModel& model, int comp) {
    std::string out;
    for (const Cell& cell : model.decomposition.cells) {
        for (int side = 0; side < 2; ++side) {
            if (model.connectivity.component[HeadlandGraph::node(cell.id, side)] != comp) continue;
            if (!out.empty()) out += "+";
            out += "cell " + std::to_string(cell.id) + (side == 0 ? " lower" : " upper");
        }
    }
    return out;
}

void check_global_feasibility(const FieldModel& model) {
    if (model.decomposition.cells.size() < 2) return;
    // A cell both of whose headlands are isolated cannot be entered or left
    // in the whole-field graph; name it before the solver fails opaquely.
    std::vector<int> component_size(2 * model.decomposition.cells.size(), 0);
    for (int comp : model.connectivity.component) ++component_size[comp];
    for (const Cell& cell : model.decomposition.cells) {
        const int cl = model.connectivity.component[HeadlandGraph::node(cell.id, 0)];
        const int cu = model.connectivity.component[HeadlandGraph::node(cell.id, 1)];
        if (component_size[cl] == 1 && component_size[cu] == 1)
            throw InfeasibleError("cell " + std::to_string(cell.id) +
                                  ": lower and upper headlands are both isolated; its tracks "
                                  "cannot be chained with the rest of the field");
    }
    // Parity obstruction: each headland component with an odd number of
    // track ends consumes a free extremity of the path, and there are only
    // two. Name the components so the field or width can be adjusted.
    std::vector<int> end_count(2 * model.decomposition.cells.size(), 0);
    for (const Track& t : model.tracks)
        for (int side = 0; side < 2; ++side)
            ++end_count[model.connectivity.component[HeadlandGraph::node(t.cell_id, side)]];
    std::vector<int> odd;
    for (std::size_t comp = 0; comp < end_count.size(); ++comp)
        if (end_count[comp] % 2 == 1) odd.push_back(static_cast<int>(comp));
    if (odd.size() > 2) {
        std::string msg = "more than two headland components hold an odd number of track ends:";
        for (int comp : odd) msg += " [" + describe_component(model, comp) + "]";
        throw InfeasibleError(msg);
    }
}

}  // namespace

FieldModel build_field_model(const FreeSpace& free, const MachineSpec& spec,
                             const SweepFrame& frame) {
    FieldModel model;
    model.decomposition = decompose(free, frame);
    for (const Cell& cell : model.decomposition.cells) {
        std::vector<Track> cell_tracks = generate_tracks(cell, spec, frame);
        for (Track& t : cell_tracks) {
            t.id = static_cast<int>(model.tracks.size());
            model.tracks.push_back(t);
        }
    }
    model.connectivity = headland_connectivity(model.decomposition);
    return model;
}

CoveragePlan plan_traditional(const FieldModel& model, const MachineSpec& spec,
                              const PlannerConfig& config) {
    const std::vector<TrackEnds> ends = shorten_tracks(model, effective_margin(config, spec));

    std::vector<std::vector<int>> cell_tracks(model.decomposition.cells.size());
    for (std::size_t i = 0; i < model.tracks.size(); ++i)
        cell_tracks[model.tracks[i].cell_id].push_back(static_cast<int>(i));

    const int start_cell = config.start ? cell_containing(model.decomposition, *config.start) : 0;
    const std::vector<int> cell_order = dfs_preorder(model.decomposition, start_cell);

    bool used_exact = true;
    std::vector<Visit> visits;
    bool have_prev = false;
    Point prev_exit{};
    int prev_side = 0;
    int prev_component = -1;

    for (std::size_t ci = 0; ci < cell_order.size(); ++ci) {
        const int cid = cell_order[ci];
        const std::vector<int>& local = cell_tracks[cid];
        if (local.empty()) continue;
        const int k = static_cast<int>(local.size());

        std::vector<Track> tracks;
        tracks.reserve(k);
        for (int g : local) tracks.push_back(model.tracks[g]);

        SolveOptions opt;
        opt.exact_threshold = config.exact_threshold;
        opt.seed = config.seed;
        if (have_prev) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int li = 0; li < k; ++li) {
                for (int e = 0; e < 2; ++e) {
                    const double d = distance(prev_exit, ends[local[li]].pt[e]);
                    if (d < best_d) {
                        best_d = d;
                        best = li;
                    }
                }
            }
            opt.start = best;
        }
        if (ci + 1 < cell_order.size()) {
            const Polygon& next_poly = model.decomposition.cells[cell_order[ci + 1]].polygon;
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int li = 0; li < k; ++li) {
                const double d = track_to_polygon_distance(tracks[li], next_poly);
                if (d < best_d) {
                    best_d = d;
                    best = li;
                }
            }
            if (!opt.start || *opt.start != best || k == 1) opt.end = best;
        }

        const CostMatrix costs = build_cost_matrix(tracks, spec, config.tee);
        const Sequence seq = solve_cell(costs, opt, &used_exact);

        // Entry side: stay on the previous exit's headland when it connects.
        int entry_side = 0;
        if (have_prev) {
            const int g0 = local[seq.order.front()];
            const int comp0 = model.connectivity.component[HeadlandGraph::node(
                model.tracks[g0].cell_id, 0)];
            const int comp1 = model.connectivity.component[HeadlandGraph::node(
                model.tracks[g0].cell_id, 1)];
            if (comp0 == prev_component && prev_side == 0) {
                entry_side = 0;
            } else if (comp1 == prev_component && prev_side == 1) {
                entry_side = 1;
            } else {
                entry_side = distance(prev_exit, ends[g0].pt[0]) <=
                                     distance(prev_exit, ends[g0].pt[1])
                                 ? 0
                                 : 1;
            }
        }

        for (int p = 0; p < static_cast<int>(seq.order.size()); ++p) {
            Visit v;
            v.track = local[seq.order[p]];
            v.entry_end = entry_side ^ (p & 1);
            if (p > 0) {
                v.via_turn = true;
                v.turn = min_turn(track_distance(model.tracks[v.track],
                                                 model.tracks[visits.back().track]),
                                  spec, config.tee);
            } else if (have_prev) {
                const int comp = model.connectivity.component[HeadlandGraph::node(
                    model.tracks[v.track].cell_id, v.entry_end)];
                const double d = std::abs(model.tracks[v.track].offset -
                                          model.tracks[visits.back().track].offset);
                if (v.entry_end == prev_side && comp == prev_component && d > kGeomEps) {
                    v.via_turn = true;
                    v.turn = min_turn(d, spec, config.tee);
                }
            }
            visits.push_back(v);
        }

        const Visit& last = visits.back();
        prev_side = 1 - last.entry_end;
        prev_exit = ends[last.track].pt[prev_side];
        prev_component = model.connectivity.component[HeadlandGraph::node(
            model.tracks[last.track].cell_id, prev_side)];
        have_prev = true;
    }

    std::vector<int> cells_with_tracks;
    for (int cid : cell_order)
        if (!cell_tracks[cid].empty()) cells_with_tracks.push_back(cid);
    return assemble_plan(model, ends, visits, cells_with_tracks, used_exact);
}

CoveragePlan plan_global(const FieldModel& model, const MachineSpec& spec,
                         const PlannerConfig& config) {
    const std::vector<TrackEnds> ends = shorten_tracks(model, effective_margin(config, spec));
    check_global_feasibility(model);

    const GlobalCostMatrix costs =
        build_global_graph(model.decomposition, model.tracks, model.connectivity, spec, config.tee);
    SolveOptions opt;
    opt.exact_threshold = config.exact_threshold;
    opt.seed = config.seed;
    bool used_exact = true;
    Sequence seq;
    if (costs.n <= opt.exact_threshold) {
        seq = solve_exact(costs, opt);
    } else {
        used_exact = false;
        seq = solve_heuristic(costs, opt);
    }

    std::vector<Visit> visits;
    for (std::size_t k = 0; k < seq.order.size(); ++k) {
        Visit v;
        v.track = seq.order[k];
        v.entry_end = seq.entry_ends[k];
        if (k > 0) {
            v.via_turn = true;
            const double d =
                std::abs(model.tracks[v.track].offset - model.tracks[seq.order[k - 1]].offset);
            v.turn = min_turn(d, spec, config.tee);
        }
        visits.push_back(v);
    }
    std::vector<int> cells_visited;
    for (const Visit& v : visits) {
        const int cid = model.tracks[v.track].cell_id;
        if (std::find(cells_visited.begin(), cells_visited.end(), cid) == cells_visited.end())
            cells_visited.push_back(cid);
    }
    return assemble_plan(model, ends, visits, cells_visited, used_exact);
}

CoveragePlan plan_traditional(const FreeSpace& free, const MachineSpec& spec,
                              const SweepFrame& frame, const PlannerConfig& config) {
    return plan_traditional(build_field_model(free, spec, frame), spec, config);
}

CoveragePlan plan_global(const FreeSpace& free, const MachineSpec& spec, const SweepFrame& frame,
                         const PlannerConfig& config) {
    return plan_global(build_field_model(free, spec, frame), spec, config);
}

PlanComparison compare(const FieldModel& model, const MachineSpec& spec,
                       const PlannerConfig& config) {
    PlanComparison cmp;
    cmp.traditional = plan_traditional(model, spec, config);
    cmp.global = plan_global(model, spec, config);
    cmp.savings_ratio =
        cmp.traditional.metrics.nonproductive_m > kGeomEps
            ? 1.0 - cmp.global.metrics.nonproductive_m / cmp.traditional.metrics.nonproductive_m
            : 0.0;
    return cmp;
}

PlanComparison compare(const FreeSpace& free, const MachineSpec& spec, const SweepFrame& frame,
                       const PlannerConfig& config) {
    return compare(build_field_model(free, spec, frame), spec, config);
}

}  // namespace fieldcover
