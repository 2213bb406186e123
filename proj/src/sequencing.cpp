#include "fieldcover/sequencing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace fieldcover {

namespace {

double sentinel_for(double max_finite, int n) {
    return std::max(1.0, 10.0 * n * max_finite);
}

void check_threshold(int n, int threshold) {
    if (n > threshold)
        throw std::length_error("exact solver limited to " + std::to_string(threshold) +
                                " tracks, got " + std::to_string(n));
}

// --- exact, per-cell mode -------------------------------------------------

// g[mask][i]: minimum cost of a path that visits exactly `mask`, starts at
// i (i in mask), and ends at opt.end if that constraint is set.
Sequence exact_per_cell(const CostMatrix& m, const SolveOptions& opt) {
    const int n = m.n;
    check_threshold(n, opt.exact_threshold);
    const double kBlocked = m.inf * (n + 1.0);
    const std::size_t full = std::size_t{1} << n;
    std::vector<double> g(full * n, kBlocked);
    for (int i = 0; i < n; ++i) {
        const bool end_ok = !opt.end || *opt.end == i;
        g[(std::size_t{1} << i) * n + i] = end_ok ? 0.0 : kBlocked;
    }
    for (std::size_t mask = 1; mask < full; ++mask) {
        if ((mask & (mask - 1)) == 0) continue;  // singletons are the base
        for (int i = 0; i < n; ++i) {
            if (!(mask & (std::size_t{1} << i))) continue;
            const std::size_t rest = mask ^ (std::size_t{1} << i);
            double best = kBlocked;
            for (int j = 0; j < n; ++j) {
                if (!(rest & (std::size_t{1} << j))) continue;
                const double c = m.at(i, j) + g[rest * n + j];
                if (c < best) best = c;
            }
            g[mask * n + i] = best;
        }
    }

    const std::size_t all = full - 1;
    int first = -1;
    double best = kBlocked;
    if (opt.start) {
        first = *opt.start;
        best = g[all * n + first];
    } else {
        for (int i = 0; i < n; ++i) {
            if (g[all * n + i] < best) {
                best = g[all * n + i];
                first = i;
            }
        }
    }
    if (first < 0 || best >= m.inf)
        throw InfeasibleError("no complete track sequence avoids a blocked transition");

    Sequence seq;
    std::size_t mask = all;
    int cur = first;
    seq.order.push_back(cur);
    while (seq.order.size() < static_cast<std::size_t>(n)) {
        const std::size_t rest = mask ^ (std::size_t{1} << cur);
        const double target = g[mask * n + cur];
        for (int j = 0; j < n; ++j) {
            if (!(rest & (std::size_t{1} << j))) continue;
            if (m.at(cur, j) + g[rest * n + j] == target) {
                seq.order.push_back(j);
                mask = rest;
                cur = j;
                break;
            }
        }
    }
    return seq;
}

// --- exact, global mode ----------------------------------------------------

// g[mask][i][e]: minimum cost of a path that covers `mask`, starting with
// track i entered at end e. Full traversal of each track is structural: the
// path leaves i at end 1-e.
Sequence exact_global(const GlobalCostMatrix& m, const SolveOptions& opt) {
    const int n = m.n;
    check_threshold(n, opt.exact_threshold);
    const double kBlocked = m.inf * (n + 1.0);
    const std::size_t full = std::size_t{1} << n;
    std::vector<double> g(full * n * 2, kBlocked);
    auto idx = [n](std::size_t mask, int i, int e) { return (mask * n + i) * 2 + e; };
    for (int i = 0; i < n; ++i) {
        const bool end_ok = !opt.end || *opt.end == i;
        for (int e = 0; e < 2; ++e)
            g[idx(std::size_t{1} << i, i, e)] = end_ok ? 0.0 : kBlocked;
    }
    for (std::size_t mask = 1; mask < full; ++mask) {
        if ((mask & (mask - 1)) == 0) continue;
        for (int i = 0; i < n; ++i) {
            if (!(mask & (std::size_t{1} << i))) continue;
            const std::size_t rest = mask ^ (std::size_t{1} << i);
            for (int e = 0; e < 2; ++e) {
                double best = kBlocked;
                for (int j = 0; j < n; ++j) {
                    if (!(rest & (std::size_t{1} << j))) continue;
                    for (int f = 0; f < 2; ++f) {
                        const double c = m.at(i, 1 - e, j, f) + g[idx(rest, j, f)];
                        if (c < best) best = c;
                    }
                }
                g[idx(mask, i, e)] = best;
            }
        }
    }

    const std::size_t all = full - 1;
    int first = -1, first_end = 0;
    double best = kBlocked;
    for (int i = 0; i < n; ++i) {
        if (opt.start && *opt.start != i) continue;
        for (int e = 0; e < 2; ++e) {
            if (g[idx(all, i, e)] < best) {
                best = g[idx(all, i, e)];
                first = i;
                first_end = e;
            }
        }
    }
    if (first < 0 || best >= m.inf)
        throw InfeasibleError("no complete track sequence avoids a blocked transition");

    Sequence seq;
    std::size_t mask = all;
    int cur = first, cur_end = first_end;
    seq.order.push_back(cur);
    seq.entry_ends.push_back(cur_end);
    while (seq.order.size() < static_cast<std::size_t>(n)) {
        const std::size_t rest = mask ^ (std::size_t{1} << cur);
        const double target = g[idx(mask, cur, cur_end)];
        bool advanced = false;
        for (int j = 0; j < n && !advanced; ++j) {
            if (!(rest & (std::size_t{1} << j))) continue;
            for (int f = 0; f < 2; ++f) {
                if (m.at(cur, 1 - cur_end, j, f) + g[idx(rest, j, f)] == target) {
                    seq.order.push_back(j);
                    seq.entry_ends.push_back(f);
                    mask = rest;
                    cur = j;
                    cur_end = f;
                    advanced = true;
                    break;
                }
            }
        }
        if (!advanced) throw std::logic_error("global DP reconstruction lost its optimum");
    }
    return seq;
}

// --- heuristic helpers -----------------------------------------------------

struct OrderEval {
    double cost = 0.0;
    bool feasible = false;
    std::vector<int> entry_ends;
};

OrderEval eval_per_cell(const CostMatrix& m, const std::vector<int>& order) {
    OrderEval r;
    r.cost = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const double c = m.at(order[k], order[k + 1]);
        if (m.infinite(c)) return r;
        r.cost += c;
    }
    r.feasible = true;
    return r;
}

// Chain DP over entry ends for a fixed order.
OrderEval eval_global(const GlobalCostMatrix& m, const std::vector<int>& order) {
    OrderEval r;
    const std::size_t n = order.size();
    if (n == 0) {
        r.feasible = true;
        return r;
    }
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> f(2 * n, kInf);
    std::vector<int> from(2 * n, -1);
    f[0] = f[1] = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (int e = 0; e < 2; ++e) {
            if (f[2 * k + e] == kInf) continue;
            for (int g = 0; g < 2; ++g) {
                const double c = m.at(order[k], 1 - e, order[k + 1], g);
                if (m.infinite(c)) continue;
                const double total = f[2 * k + e] + c;
                if (total < f[2 * (k + 1) + g]) {
                    f[2 * (k + 1) + g] = total;
                    from[2 * (k + 1) + g] = e;
                }
            }
        }
    }
    int best_e = f[2 * (n - 1)] <= f[2 * (n - 1) + 1] ? 0 : 1;
    if (f[2 * (n - 1) + best_e] == kInf) return r;
    r.cost = f[2 * (n - 1) + best_e];
    r.feasible = true;
    r.entry_ends.assign(n, 0);
    int e = best_e;
    for (std::size_t k = n; k-- > 0;) {
        r.entry_ends[k] = e;
        if (k > 0) e = from[2 * k + e];
    }
    return r;
}

// Depth-first nearest-neighbour with backtracking: explores cheapest-first
// over (track, entry end) states and returns the first complete feasible
// order. Per-cell instances use a single dummy end state. The budget bounds
// work on adversarial instances; in practice the greedy branch succeeds
// directly.
template <typename CostFn>
bool nn_backtrack(int n, int end_states, std::optional<int> end, CostFn edge_cost,
                  std::vector<int>& order, std::vector<int>& entry, std::vector<bool>& used,
                  long& budget) {
    if (order.size() == static_cast<std::size_t>(n)) return true;
    if (--budget < 0) return false;
    const int cur = order.back();
    const int cur_entry = entry.back();
    std::vector<std::tuple<double, int, int>> cands;
    for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        if (end && *end == j && order.size() + 1 != static_cast<std::size_t>(n)) continue;
        for (int f = 0; f < end_states; ++f) {
            const double c = edge_cost(cur, cur_entry, j, f);
            if (c < 0) continue;  // blocked
            cands.emplace_back(c, j, f);
        }
    }
    std::sort(cands.begin(), cands.end());
    for (auto [c, j, f] : cands) {
        order.push_back(j);
        entry.push_back(f);
        used[j] = true;
        if (nn_backtrack(n, end_states, end, edge_cost, order, entry, used, budget)) return true;
        order.pop_back();
        entry.pop_back();
        used[j] = false;
    }
    return false;
}

template <typename Eval>
void two_opt(std::vector<int>& order, const SolveOptions& opt, Eval eval) {
    const std::size_t n = order.size();
    if (n < 3) return;
    double cur = eval(order).cost;
    bool improved = true;
    while (improved) {
        improved = false;
        const std::size_t i_min = opt.start ? 1 : 0;
        const std::size_t j_max = opt.end ? n - 2 : n - 1;
        for (std::size_t i = i_min; i + 1 <= j_max && !improved; ++i) {
            for (std::size_t j = i + 1; j <= j_max && !improved; ++j) {
                std::reverse(order.begin() + i, order.begin() + j + 1);
                const OrderEval e = eval(order);
                if (e.feasible && e.cost < cur - 1e-12) {
                    cur = e.cost;
                    improved = true;
                } else {
                    std::reverse(order.begin() + i, order.begin() + j + 1);
                }
            }
        }
    }
}

template <typename Eval>
Sequence heuristic_common(int n, int end_states, const SolveOptions& opt, Eval eval,
                          const std::function<double(int, int, int, int)>& edge_cost) {
    if (n <= 0) return {};
    if (n == 1) {
        Sequence s;
        s.order = {0};
        const OrderEval e = eval(s.order);
        s.entry_ends = e.entry_ends;
        return s;
    }

    std::vector<int> best_order;
    double best_cost = std::numeric_limits<double>::infinity();

    std::vector<int> starts;
    if (opt.start) {
        starts.push_back(*opt.start);
    } else {
        for (int i = 0; i < n; ++i) starts.push_back(i);
    }
    for (int s : starts) {
        if (opt.end && *opt.end == s && n > 1) continue;
        for (int e0 = 0; e0 < end_states; ++e0) {
            std::vector<int> order{s};
            std::vector<int> entry{e0};
            std::vector<bool> used(n, false);
            used[s] = true;
            long budget = 1'000'000;
            if (!nn_backtrack(n, end_states, opt.end, edge_cost, order, entry, used, budget))
                continue;
            two_opt(order, opt, eval);
            const OrderEval e = eval(order);
            if (e.feasible && e.cost < best_cost) {
                best_cost = e.cost;
                best_order = order;
            }
        }
    }
    if (best_order.empty())
        throw InfeasibleError("no complete track sequence avoids a blocked transition");

    // Seeded double-bridge restarts; endpoints fixed by constraints stay put.
    std::mt19937_64 rng(opt.seed);
    const std::size_t lo = opt.start ? 1 : 0;
    const std::size_t hi = opt.end ? best_order.size() - 1 : best_order.size();
    for (int kick = 0; kick < 6 && hi - lo >= 4; ++kick) {
        std::vector<int> order = best_order;
        std::size_t cuts[3];
        for (auto& c : cuts)
            c = lo + 1 + rng() % (hi - lo - 1);
        std::sort(std::begin(cuts), std::end(cuts));
        if (cuts[0] == cuts[1] || cuts[1] == cuts[2]) continue;
        std::vector<int> kicked(order.begin(), order.begin() + lo);
        kicked.insert(kicked.end(), order.begin() + lo, order.begin() + cuts[0]);
        kicked.insert(kicked.end(), order.begin() + cuts[1], order.begin() + cuts[2]);
        kicked.insert(kicked.end(), order.begin() + cuts[0], order.begin() + cuts[1]);
        kicked.insert(kicked.end(), order.begin() + cuts[2], order.end());
        two_opt(kicked, opt, eval);
        const OrderEval e = eval(kicked);
        if (e.feasible && e.cost < best_cost - 1e-12) {
            best_cost = e.cost;
            best_order = kicked;
        }
    }

    Sequence seq;
    seq.order = best_order;
    seq.entry_ends = eval(best_order).entry_ends;
    return seq;
}

}  // namespace

CostMatrix build_cost_matrix(const std::vector<Track>& tracks, const MachineSpec& spec,
                             TeeFormula tee) {
    CostMatrix m;
    m.n = static_cast<int>(tracks.size());
    m.cost.assign(static_cast<std::size_t>(m.n) * m.n, 0.0);
    std::vector<std::pair<int, int>> blocked;
    double max_finite = 0.0;
    for (int i = 0; i < m.n; ++i) {
        for (int j = i + 1; j < m.n; ++j) {
            const double d = track_distance(tracks[i], tracks[j]);
            double c;
            if (d <= kGeomEps) {
                blocked.emplace_back(i, j);
                continue;
            }
            c = min_turn(d, spec, tee).length;
            m.cost[static_cast<std::size_t>(i) * m.n + j] = c;
            m.cost[static_cast<std::size_t>(j) * m.n + i] = c;
            max_finite = std::max(max_finite, c);
        }
    }
    m.inf = sentinel_for(max_finite, m.n);
    for (auto [i, j] : blocked) {
        m.cost[static_cast<std::size_t>(i) * m.n + j] = m.inf;
        m.cost[static_cast<std::size_t>(j) * m.n + i] = m.inf;
    }
    return m;
}

GlobalCostMatrix build_global_graph(const CellDecomposition& d, const std::vector<Track>& tracks,
                                    const HeadlandGraph& connectivity, const MachineSpec& spec,
                                    TeeFormula tee) {
    (void)d;
    GlobalCostMatrix m;
    m.n = static_cast<int>(tracks.size());
    const int nn = 2 * m.n;
    m.cost.assign(static_cast<std::size_t>(nn) * nn, 0.0);
    m.end_component.resize(nn);
    m.offsets.resize(m.n);
    for (int i = 0; i < m.n; ++i) {
        m.offsets[i] = tracks[i].offset;
        for (int e = 0; e < 2; ++e)
            m.end_component[GlobalCostMatrix::node(i, e)] =
                connectivity.component[HeadlandGraph::node(tracks[i].cell_id, e)];
    }

    double max_finite = 0.0;
    std::vector<std::pair<int, int>> blocked;
    for (int i = 0; i < m.n; ++i) {
        for (int e = 0; e < 2; ++e) {
            for (int j = 0; j < m.n; ++j) {
                for (int f = 0; f < 2; ++f) {
                    const int from = GlobalCostMatrix::node(i, e);
                    const int to = GlobalCostMatrix::node(j, f);
                    if (i == j) {
                        if (e == f) blocked.emplace_back(from, to);  // no self edge
                        continue;  // opposite ends of one track stay at cost 0
                    }
                    if (e != f || m.end_component[from] != m.end_component[to]) {
                        blocked.emplace_back(from, to);
                        continue;
                    }
                    const double dist = std::abs(tracks[i].offset - tracks[j].offset);
                    if (dist <= kGeomEps) {
                        blocked.emplace_back(from, to);
                        continue;
                    }
                    const double c = min_turn(dist, spec, tee).length;
                    m.cost[static_cast<std::size_t>(from) * nn + to] = c;
                    max_finite = std::max(max_finite, c);
                }
            }
        }
    }
    m.inf = sentinel_for(max_finite, m.n);
    for (auto [from, to] : blocked) m.cost[static_cast<std::size_t>(from) * nn + to] = m.inf;
    return m;
}

Sequence solve_exact(const CostMatrix& costs, const SolveOptions& opt) {
    if (costs.n == 0) return {};
    if (costs.n == 1) {
        Sequence s;
        s.order = {0};
        return s;
    }
    return exact_per_cell(costs, opt);
}

Sequence solve_exact(const GlobalCostMatrix& costs, const SolveOptions& opt) {
    if (costs.n == 0) return {};
    if (costs.n == 1) {
        Sequence s;
        s.order = {0};
        s.entry_ends = {0};
        return s;
    }
    return exact_global(costs, opt);
}

Sequence solve_heuristic(const CostMatrix& costs, const SolveOptions& opt) {
    auto eval = [&](const std::vector<int>& order) { return eval_per_cell(costs, order); };
    std::function<double(int, int, int, int)> edge = [&](int i, int, int j, int) {
        const double c = costs.at(i, j);
        return costs.infinite(c) ? -1.0 : c;
    };
    return heuristic_common(costs.n, 1, opt, eval, edge);
}

Sequence solve_heuristic(const GlobalCostMatrix& costs, const SolveOptions& opt) {
    auto eval = [&](const std::vector<int>& order) { return eval_global(costs, order); };
    // The construction walks (track, entry end) states, so completed orders
    // are feasible by construction; the chain DP re-optimizes end choices.
    std::function<double(int, int, int, int)> edge = [&](int i, int e, int j, int f) {
        const double c = costs.at(i, 1 - e, j, f);
        return costs.infinite(c) ? -1.0 : c;
    };
    Sequence s = heuristic_common(costs.n, 2, opt, eval, edge);
    if (!s.order.empty() && s.entry_ends.empty())
        throw InfeasibleError("no end assignment makes the heuristic order feasible");
    return s;
}

double sequence_cost(const Sequence& seq, const CostMatrix& costs) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < seq.order.size(); ++k) {
        const double c = costs.at(seq.order[k], seq.order[k + 1]);
        if (costs.infinite(c)) throw InfeasibleError("sequence crosses an infinite edge");
        total += c;
    }
    return total;
}

double sequence_cost(const Sequence& seq, const GlobalCostMatrix& costs) {
    if (seq.order.size() <= 1) return 0.0;
    if (seq.entry_ends.size() != seq.order.size())
        throw std::invalid_argument("global sequence needs an entry end per track");
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < seq.order.size(); ++k) {
        const double c = costs.at(seq.order[k], 1 - seq.entry_ends[k], seq.order[k + 1],
                                  seq.entry_ends[k + 1]);
        if (costs.infinite(c)) throw InfeasibleError("sequence crosses an infinite edge");
        total += c;
    }
    return total;
}

}  // namespace fieldcover
