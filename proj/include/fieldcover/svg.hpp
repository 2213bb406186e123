#pragma once

#include <string>
#include <vector>

#include "fieldcover/planner.hpp"

namespace fieldcover {

// SVG 1.1 rendering of a decomposition, its tracks and (optionally) a plan.
// Output is a pure function of the inputs: identical inputs give identical
// bytes.
std::string render_svg(const CellDecomposition& d, const std::vector<Track>& tracks,
                       const CoveragePlan* plan = nullptr);

void render_svg_file(const CellDecomposition& d, const std::vector<Track>& tracks,
                     const CoveragePlan* plan, const std::string& path);

}  // namespace fieldcover
