#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fieldcover/decomposition.hpp"
#include "fieldcover/tracks.hpp"
#include "fieldcover/turns.hpp"

namespace fieldcover {

// Raised when no complete track sequence avoids an infinite-cost edge.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Per-cell transition costs: one node per track, cost = shortest turn
// between track centers. Infinite entries are represented by a finite
// sentinel (10 * n * max finite cost) so the path DP stays overflow-free;
// any path cost >= `inf` is infeasible.
struct CostMatrix {
    int n = 0;
    std::vector<double> cost;  // n*n, zero diagonal
    double inf = 0.0;

    double at(int i, int j) const { return cost[static_cast<std::size_t>(i) * n + j]; }
    bool infinite(double c) const { return c >= inf; }
};

// Whole-field transition costs over oriented track ends (two nodes per
// track). Entries follow four rules: zero between the two ends of one
// track; infinite between opposite-side ends of different tracks; infinite
// between same-side ends on disconnected headlands; otherwise the shortest
// turn for the center distance.
struct GlobalCostMatrix {
    int n = 0;                       // tracks
    std::vector<double> cost;        // (2n)*(2n), node = 2*track + end
    double inf = 0.0;
    std::vector<int> end_component;  // headland component per node
    std::vector<double> offsets;     // per track

    static int node(int track, int end) { return 2 * track + end; }
    double at(int i, int end_i, int j, int end_j) const {
        return cost[static_cast<std::size_t>(node(i, end_i)) * (2 * n) + node(j, end_j)];
    }
    bool infinite(double c) const { return c >= inf; }
};

// A visiting order over tracks. In global mode `entry_ends[k]` is the end
// (0 lower, 1 upper) at which track `order[k]` is entered; the track is
// always traversed fully, so it exits at the opposite end.
struct Sequence {
    std::vector<int> order;
    std::vector<int> entry_ends;
};

struct SolveOptions {
    std::optional<int> start;  // force first track
    std::optional<int> end;    // force last track
    int exact_threshold = 15;
    std::uint64_t seed = 0;    // perturbation restarts of the heuristic
};

CostMatrix build_cost_matrix(const std::vector<Track>& tracks, const MachineSpec& spec,
                             TeeFormula tee = TeeFormula::Paper);

// `tracks` are indexed by their position in the vector; cell_id links each
// track's ends to headland components of `connectivity`.
GlobalCostMatrix build_global_graph(const CellDecomposition& d, const std::vector<Track>& tracks,
                                    const HeadlandGraph& connectivity, const MachineSpec& spec,
                                    TeeFormula tee = TeeFormula::Paper);

// Minimum-cost open Hamiltonian path by dynamic programming over (visited
// subset, current position). Ties between cost-equal optima break to the
// lexicographically smallest order. Throws std::length_error above the
// exact threshold and InfeasibleError when every complete path crosses an
// infinite edge.
Sequence solve_exact(const CostMatrix& costs, const SolveOptions& opt = {});
Sequence solve_exact(const GlobalCostMatrix& costs, const SolveOptions& opt = {});

// Nearest-neighbour construction followed by 2-opt descent to a local
// optimum, plus seeded double-bridge restarts. Deterministic for fixed
// inputs and seed.
Sequence solve_heuristic(const CostMatrix& costs, const SolveOptions& opt = {});
Sequence solve_heuristic(const GlobalCostMatrix& costs, const SolveOptions& opt = {});

// Sum of the n-1 transition costs (0 for n <= 1). Throws InfeasibleError if
// the sequence crosses an infinite edge.
double sequence_cost(const Sequence& seq, const CostMatrix& costs);
double sequence_cost(const Sequence& seq, const GlobalCostMatrix& costs);

}  // namespace fieldcover
