#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fieldcover/decomposition.hpp"
#include "fieldcover/sequencing.hpp"
#include "fieldcover/tracks.hpp"
#include "fieldcover/turns.hpp"

namespace fieldcover {

// Everything derived from a field that the planners share.
struct FieldModel {
    CellDecomposition decomposition;
    std::vector<Track> tracks;  // global ids == indices, grouped by cell
    HeadlandGraph connectivity;
};

FieldModel build_field_model(const FreeSpace& free, const MachineSpec& spec,
                             const SweepFrame& frame);

enum class LegType { Track, Transit };

struct PlanLeg {
    LegType type = LegType::Track;
    // Track legs.
    int track_id = -1;
    bool forward = true;  // lower end -> upper end
    // Transit legs: a headland turn of the given kind, or a routed headland
    // path when `turn` is empty.
    std::optional<TurnKind> turn;
    std::vector<Point> polyline;  // world coordinates, also set for tracks
    double length = 0.0;
};

struct PlanMetrics {
    double productive_m = 0.0;
    double nonproductive_m = 0.0;
    int omega_turns = 0;
    int pi_turns = 0;
    int tee_turns = 0;
    int routed_transits = 0;
    std::vector<int> cells_visited;  // coverage order
};

struct CoveragePlan {
    std::vector<PlanLeg> legs;
    PlanMetrics metrics;
    Sequence sequence;  // global track ids with entry ends
    bool used_exact = true;
};

struct PlannerConfig {
    int exact_threshold = 15;
    TeeFormula tee = TeeFormula::Paper;
    double headland_margin = -1.0;  // < 0 selects the default 2 * r_min
    std::uint64_t seed = 0;
    std::optional<Point> start;
};

// Cover every cell completely before moving on: depth-first cell order,
// per-cell sequencing with entry/exit tracks pinned to the neighbouring
// cells, headland transits between cells.
CoveragePlan plan_traditional(const FreeSpace& free, const MachineSpec& spec,
                              const SweepFrame& frame, const PlannerConfig& config = {});
CoveragePlan plan_traditional(const FieldModel& model, const MachineSpec& spec,
                              const PlannerConfig& config = {});

// Sequence all track ends at once over the whole-field transition graph;
// plans may enter and leave a cell several times.
CoveragePlan plan_global(const FreeSpace& free, const MachineSpec& spec, const SweepFrame& frame,
                         const PlannerConfig& config = {});
CoveragePlan plan_global(const FieldModel& model, const MachineSpec& spec,
                         const PlannerConfig& config = {});

struct PlanComparison {
    CoveragePlan traditional;
    CoveragePlan global;
    double savings_ratio = 0.0;  // 1 - global.nonproductive / traditional.nonproductive
};

PlanComparison compare(const FreeSpace& free, const MachineSpec& spec, const SweepFrame& frame,
                       const PlannerConfig& config = {});
PlanComparison compare(const FieldModel& model, const MachineSpec& spec,
                       const PlannerConfig& config = {});

}  // namespace fieldcover
