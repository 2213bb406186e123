#pragma once

#include <vector>

#include "fieldcover/decomposition.hpp"
#include "fieldcover/geometry.hpp"

namespace fieldcover {

struct MachineSpec {
    double operating_width = 0.0;  // implement width w, meters
    double r_min = 0.0;            // minimum turning radius, meters
    bool reverse_capable = true;
};

// One coverage pass: a full-length chord of its cell at a fixed sweep
// offset. Ends are ordered by along-track value.
struct Track {
    int id = -1;
    int cell_id = -1;
    Segment centerline;
    Point lower_end;
    Point upper_end;
    double offset = 0.0;  // signed sweep-axis position of the centerline
};

// Parallel tracks spaced by the operating width. The first track sits w/2
// inside the cell's minimum sweep value; the last is clamped to w/2 inside
// the maximum so its swath never exits the far side. Cells narrower than w
// get a single track on the sweep midline. Ids are 0..n-1 within the cell.
std::vector<Track> generate_tracks(const Cell& cell, const MachineSpec& spec,
                                   const SweepFrame& frame);

// Center-to-center distance |offset(a) - offset(b)|.
double track_distance(const Track& a, const Track& b);

}  // namespace fieldcover
