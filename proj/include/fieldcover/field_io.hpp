#pragma once

#include <string>

#include "fieldcover/planner.hpp"

namespace fieldcover {

// Parsed and validated field description plus machine parameters.
struct FieldInput {
    FreeSpace free;
    MachineSpec spec;
    SweepFrame frame;
    double driving_direction_deg = 0.0;

    FieldInput(FreeSpace f, MachineSpec s, double direction_deg)
        : free(std::move(f)),
          spec(s),
          frame(SweepFrame::from_angle_deg(direction_deg)),
          driving_direction_deg(direction_deg) {}
};

// Versioned JSON field file. Parse failures report the byte offset; semantic
// failures name the offending field or obstacle.
FieldInput load_field(const std::string& path);
FieldInput parse_field(const std::string& text);

std::string field_to_json(const FieldInput& input);
void save_field(const FieldInput& input, const std::string& path);

struct SolverInfo {
    std::string mode;  // "traditional" | "global"
    bool exact = true;
    int exact_threshold = 15;
    TeeFormula tee = TeeFormula::Paper;
    double headland_margin = 0.0;
    std::uint64_t seed = 0;
};

std::string plan_to_json(const FieldInput& input, const CoveragePlan& plan,
                         const SolverInfo& info);
std::string comparison_to_json(const FieldInput& input, const PlanComparison& cmp,
                               const SolverInfo& traditional_info, const SolverInfo& global_info);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fieldcover
