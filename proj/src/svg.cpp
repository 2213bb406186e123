#include "fieldcover/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fieldcover/field_io.hpp"

namespace fieldcover {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct Mapper {
    double min_x = 0, max_y = 0, scale = 1;
    double tx(double x) const { return scale * (x - min_x); }
    double ty(double y) const { return scale * (max_y - y); }  // SVG y grows downward
};

std::string points_attr(const std::vector<Point>& pts, const Mapper& m) {
    std::string s;
    for (const Point& p : pts) {
        if (!s.empty()) s += " ";
        s += num(m.tx(p.x)) + "," + num(m.ty(p.y));
    }
    return s;
}

const char* turn_color(const PlanLeg& leg) {
    if (!leg.turn) return "#4363d8";  // routed transit
    switch (*leg.turn) {
        case TurnKind::Omega: return "#e6194b";
        case TurnKind::Pi: return "#f58231";
        case TurnKind::Tee: return "#911eb4";
    }
    return "#000000";
}

}  // namespace

std::string render_svg(const CellDecomposition& d, const std::vector<Track>& tracks,
                       const CoveragePlan* plan) {
    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_x;
    for (const Cell& cell : d.cells) {
        for (const Point& p : cell.polygon.vertices) {
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
    }
    const double pad = 0.05 * std::max(max_x - min_x, max_y - min_y) + 1.0;
    min_x -= pad;
    min_y -= pad;
    max_x += pad;
    max_y += pad;
    const double scale = 800.0 / std::max(max_x - min_x, max_y - min_y);
    const Mapper m{min_x, max_y, scale};
    const double width = scale * (max_x - min_x);
    const double height = scale * (max_y - min_y);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";

    out << "  <g id=\"cells\">\n";
    for (const Cell& cell : d.cells) {
        out << "    <polygon points=\"" << points_attr(cell.polygon.vertices, m)
            << "\" fill=\"#e8f4e0\" stroke=\"#2a6f2a\" stroke-width=\"1.2\"/>\n";
    }
    for (const Cell& cell : d.cells) {
        double cx = 0, cy = 0;
        for (const Point& p : cell.polygon.vertices) {
            cx += p.x;
            cy += p.y;
        }
        cx /= static_cast<double>(cell.polygon.size());
        cy /= static_cast<double>(cell.polygon.size());
        out << "    <text x=\"" << num(m.tx(cx)) << "\" y=\"" << num(m.ty(cy))
            << "\" font-size=\"14\" fill=\"#2a6f2a\" text-anchor=\"middle\">c" << cell.id
            << "</text>\n";
    }
    out << "  </g>\n";

    out << "  <g id=\"tracks\" stroke=\"#999999\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\">\n";
    for (const Track& t : tracks) {
        out << "    <line x1=\"" << num(m.tx(t.lower_end.x)) << "\" y1=\"" << num(m.ty(t.lower_end.y))
            << "\" x2=\"" << num(m.tx(t.upper_end.x)) << "\" y2=\"" << num(m.ty(t.upper_end.y))
            << "\"/>\n";
    }
    out << "  </g>\n";

    if (plan) {
        out << "  <g id=\"plan\" fill=\"none\" stroke-width=\"1.8\">\n";
        for (const PlanLeg& leg : plan->legs) {
            const char* color = leg.type == LegType::Track ? "#3cb44b" : turn_color(leg);
            out << "    <polyline points=\"" << points_attr(leg.polyline, m) << "\" stroke=\""
                << color << "\"/>\n";
        }
        if (!plan->legs.empty() && !plan->legs.front().polyline.empty()) {
            const Point start = plan->legs.front().polyline.front();
            out << "    <circle cx=\"" << num(m.tx(start.x)) << "\" cy=\"" << num(m.ty(start.y))
                << "\" r=\"4\" fill=\"#3cb44b\"/>\n";
        }
        out << "  </g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void render_svg_file(const CellDecomposition& d, const std::vector<Track>& tracks,
                     const CoveragePlan* plan, const std::string& path) {
    write_text_file(path, render_svg(d, tracks, plan));
}

}  // namespace fieldcover
