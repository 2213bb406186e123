#include "fieldcover/field_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fieldcover {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

Polygon ring_from_json(const json& arr, const std::string& name) {
    if (!arr.is_array()) throw std::invalid_argument(name + ": expected an array of [x, y] pairs");
    Polygon poly;
    for (const auto& pt : arr) {
        if (!pt.is_array() || pt.size() != 2)
            throw std::invalid_argument(name + ": vertices must be [x, y] pairs");
        poly.vertices.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    // Accept explicitly closed rings.
    if (poly.vertices.size() > 3 &&
        distance(poly.vertices.front(), poly.vertices.back()) <= kGeomEps)
        poly.vertices.pop_back();
    return poly;
}

json ring_to_json(const Polygon& poly) {
    json arr = json::array();
    for (const Point& p : poly.vertices) arr.push_back({p.x, p.y});
    return arr;
}

json polyline_to_json(const std::vector<Point>& pts) {
    json arr = json::array();
    for (const Point& p : pts) arr.push_back({p.x, p.y});
    return arr;
}

double require_number(const json& obj, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw std::invalid_argument("missing or non-numeric field: " + key);
    return obj[key].get<double>();
}

json solver_to_json(const SolverInfo& info) {
    return json{{"mode", info.mode},
                {"algorithm", info.exact ? "exact" : "heuristic"},
                {"exact_threshold", info.exact_threshold},
                {"tee_formula", info.tee == TeeFormula::Paper ? "paper" : "normalized"},
                {"headland_margin_m", info.headland_margin},
                {"seed", info.seed}};
}

json legs_to_json(const CoveragePlan& plan) {
    json legs = json::array();
    for (const PlanLeg& leg : plan.legs) {
        json entry;
        if (leg.type == LegType::Track) {
            entry["type"] = "track";
            entry["track"] = leg.track_id;
            entry["direction"] = leg.forward ? "up" : "down";
        } else {
            entry["type"] = "transit";
            entry["turn"] = leg.turn ? turn_kind_name(*leg.turn) : "route";
        }
        entry["length_m"] = leg.length;
        entry["polyline"] = polyline_to_json(leg.polyline);
        legs.push_back(std::move(entry));
    }
    return legs;
}

json metrics_to_json(const PlanMetrics& m) {
    return json{{"productive_m", m.productive_m},
                {"nonproductive_m", m.nonproductive_m},
                {"turns",
                 {{"omega", m.omega_turns},
                  {"pi", m.pi_turns},
                  {"tee", m.tee_turns},
                  {"route", m.routed_transits}}},
                {"cells_visited", m.cells_visited}};
}

json plan_body(const CoveragePlan& plan, const SolverInfo& info) {
    return json{{"solver", solver_to_json(info)},
                {"legs", legs_to_json(plan)},
                {"metrics", metrics_to_json(plan.metrics)}};
}

json field_body(const FieldInput& input) {
    json obstacles = json::array();
    for (const Polygon& o : input.free.obstacles) obstacles.push_back(ring_to_json(o));
    return json{{"schema_version", kSchemaVersion},
                {"boundary", ring_to_json(input.free.boundary)},
                {"obstacles", obstacles},
                {"driving_direction_deg", input.driving_direction_deg},
                {"operating_width_m", input.spec.operating_width},
                {"r_min_m", input.spec.r_min},
                {"reverse_capable", input.spec.reverse_capable}};
}

}  // namespace

FieldInput parse_field(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("field file parse error: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("field file: expected a JSON object");
    const int version = doc.contains("schema_version") ? doc["schema_version"].get<int>() : -1;
    if (version != kSchemaVersion)
        throw std::invalid_argument("field file: unsupported schema_version " +
                                    std::to_string(version));

    if (!doc.contains("boundary"))
        throw std::invalid_argument("field file: missing boundary ring");
    Polygon boundary = ring_from_json(doc["boundary"], "boundary");
    std::vector<Polygon> obstacles;
    if (doc.contains("obstacles")) {
        int idx = 0;
        for (const auto& ring : doc["obstacles"])
            obstacles.push_back(ring_from_json(ring, "obstacle " + std::to_string(idx++)));
    }

    MachineSpec spec;
    spec.operating_width = require_number(doc, "operating_width_m");
    spec.r_min = require_number(doc, "r_min_m");
    spec.reverse_capable = doc.contains("reverse_capable") ? doc["reverse_capable"].get<bool>() : true;
    if (!(spec.operating_width > 0.0))
        throw std::invalid_argument("operating_width_m: must be > 0");
    if (!(spec.r_min > 0.0)) throw std::invalid_argument("r_min_m: must be > 0");
    const double direction = require_number(doc, "driving_direction_deg");

    return FieldInput(FreeSpace(std::move(boundary), std::move(obstacles)), spec, direction);
}

FieldInput load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read field file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_field(buf.str());
}

std::string field_to_json(const FieldInput& input) { return field_body(input).dump(2) + "\n"; }

void save_field(const FieldInput& input, const std::string& path) {
    write_text_file(path, field_to_json(input));
}

std::string plan_to_json(const FieldInput& input, const CoveragePlan& plan,
                         const SolverInfo& info) {
    json doc = plan_body(plan, info);
    doc["schema_version"] = kSchemaVersion;
    doc["field"] = field_body(input);
    return doc.dump(2) + "\n";
}

std::string comparison_to_json(const FieldInput& input, const PlanComparison& cmp,
                               const SolverInfo& traditional_info, const SolverInfo& global_info) {
    json doc{{"schema_version", kSchemaVersion},
             {"field", field_body(input)},
             {"traditional", plan_body(cmp.traditional, traditional_info)},
             {"global", plan_body(cmp.global, global_info)},
             {"savings_ratio", cmp.savings_ratio}};
    return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
    if (!out) throw std::invalid_argument("write failed: " + path);
}

}  // namespace fieldcover
