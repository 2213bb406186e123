#include "fieldcover/tracks.hpp"

#include <cmath>
#include <stdexcept>

namespace fieldcover {

namespace {

// The cell invariant guarantees one chord per interior sweep offset; merge
// sub-epsilon gaps from clipping noise before enforcing it.
Segment cell_chord(const Cell& cell, const SweepFrame& frame, double offset) {
    const Point origin = frame.to_world(offset, 0.0);
    std::vector<Segment> segs = clip_line(cell.polygon, origin, frame.direction);
    if (segs.empty()) throw std::runtime_error("track offset misses its cell");
    Segment merged = segs.front();
    for (std::size_t i = 1; i < segs.size(); ++i) {
        if (distance(merged.b, segs[i].a) <= 1e-6) {
            merged.b = segs[i].b;
        } else {
            throw std::runtime_error("cell chord is not a single segment");
        }
    }
    return merged;
}

}  // namespace

std::vector<Track> generate_tracks(const Cell& cell, const MachineSpec& spec,
                                   const SweepFrame& frame) {
    if (!(spec.operating_width > 0.0)) throw std::invalid_argument("operating width must be > 0");
    const double w = spec.operating_width;
    const double lo = cell.sweep_begin;
    const double hi = cell.sweep_end;
    const double extent = hi - lo;
    const int count = std::max(1, static_cast<int>(std::ceil(extent / w - kGeomEps)));

    std::vector<Track> tracks;
    tracks.reserve(count);
    for (int i = 0; i < count; ++i) {
        double offset;
        if (count == 1) {
            offset = 0.5 * (lo + hi);
        } else {
            offset = std::min(lo + 0.5 * w + i * w, hi - 0.5 * w);
        }
        Track t;
        t.id = i;
        t.cell_id = cell.id;
        t.offset = offset;
        t.centerline = cell_chord(cell, frame, offset);
        const bool forward = frame.along_value(t.centerline.a) <= frame.along_value(t.centerline.b);
        t.lower_end = forward ? t.centerline.a : t.centerline.b;
        t.upper_end = forward ? t.centerline.b : t.centerline.a;
        t.centerline = {t.lower_end, t.upper_end};
        tracks.push_back(t);
    }
    return tracks;
}

double track_distance(const Track& a, const Track& b) {
    return std::abs(a.offset - b.offset);
}

}  // namespace fieldcover
