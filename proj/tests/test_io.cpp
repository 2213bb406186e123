#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fieldcover/field_io.hpp"
#include "fieldcover/planner.hpp"
#include "fieldcover/svg.hpp"
#include "json.hpp"
#include "support/fixtures.hpp"

using namespace fieldcover;
using nlohmann::json;

namespace {

const std::string kDataDir = FIELDCOVER_DATA_DIR;
const std::string kCli = FIELDCOVER_CLI_PATH;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args) {
    const std::string cmd =
        kCli + " " + args + " > /tmp/fieldcover_cli.out 2> /tmp/fieldcover_cli.err";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

double measure(const json& polyline) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const double dx = polyline[i + 1][0].get<double>() - polyline[i][0].get<double>();
        const double dy = polyline[i + 1][1].get<double>() - polyline[i][1].get<double>();
        len += std::hypot(dx, dy);
    }
    return len;
}

// Recompute a metrics block from the leg polylines alone.
void check_plan_json(const json& plan) {
    double productive = 0.0, nonproductive = 0.0;
    for (const json& leg : plan["legs"]) {
        const double len = measure(leg["polyline"]);
        CHECK(len == doctest::Approx(leg["length_m"].get<double>()).epsilon(1e-6));
        if (leg["type"] == "track") productive += len;
        else nonproductive += len;
    }
    CHECK(productive ==
          doctest::Approx(plan["metrics"]["productive_m"].get<double>()).epsilon(1e-6));
    CHECK(nonproductive ==
          doctest::Approx(plan["metrics"]["nonproductive_m"].get<double>()).epsilon(1e-6));
}

}  // namespace

TEST_CASE("a minimal field file parses") {
    const FieldInput input = load_field(kDataDir + "/single_cell.field");
    CHECK(input.free.obstacles.empty());
    CHECK(input.spec.operating_width == 1.0);
    CHECK(input.spec.r_min == 1.0);
    CHECK(input.spec.reverse_capable);
    CHECK(input.driving_direction_deg == 90.0);
}

TEST_CASE("parse errors carry a location, semantic errors a field name") {
    CHECK_THROWS_WITH_AS(parse_field("{ not json"), doctest::Contains("parse error"),
                         std::invalid_argument);
    const std::string base = R"({"schema_version":1,"boundary":[[0,0],[10,0],[10,10],[0,10]],
        "driving_direction_deg":90,"operating_width_m":1,"r_min_m":1)";
    CHECK_THROWS_WITH_AS(parse_field(base + R"(,"obstacles":[[[8,4],[12,4],[12,6],[8,6]]]})"),
                         doctest::Contains("obstacle 0"), std::invalid_argument);
    std::string zero_radius = base + "}";
    zero_radius.replace(zero_radius.find("\"r_min_m\":1"), 11, "\"r_min_m\":0");
    CHECK_THROWS_WITH_AS(parse_field(zero_radius), doctest::Contains("r_min_m"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_field(R"({"schema_version":7})"),
                         doctest::Contains("schema_version"), std::invalid_argument);
}

TEST_CASE("field files round-trip to identical domain objects") {
    const FieldInput a = load_field(kDataDir + "/demo.field");
    const std::string text = field_to_json(a);
    const FieldInput b = parse_field(text);
    CHECK(field_to_json(b) == text);
    REQUIRE(a.free.boundary.size() == b.free.boundary.size());
    for (std::size_t i = 0; i < a.free.boundary.size(); ++i)
        CHECK(a.free.boundary.vertices[i] == b.free.boundary.vertices[i]);
    REQUIRE(a.free.obstacles.size() == b.free.obstacles.size());
    for (std::size_t k = 0; k < a.free.obstacles.size(); ++k)
        for (std::size_t i = 0; i < a.free.obstacles[k].size(); ++i)
            CHECK(a.free.obstacles[k].vertices[i] == b.free.obstacles[k].vertices[i]);
    CHECK(a.spec.operating_width == b.spec.operating_width);
    CHECK(a.spec.r_min == b.spec.r_min);
    CHECK(a.driving_direction_deg == b.driving_direction_deg);
}

TEST_CASE("plan files are self-consistent") {
    const FieldInput input = load_field(kDataDir + "/demo.field");
    const FieldModel model = build_field_model(input.free, input.spec, input.frame);
    const CoveragePlan plan = plan_global(model, input.spec);
    SolverInfo info;
    info.mode = "global";
    info.headland_margin = 2.0 * input.spec.r_min;
    const json doc = json::parse(plan_to_json(input, plan, info));
    check_plan_json(doc);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["solver"]["mode"] == "global");
    CHECK(doc["field"]["operating_width_m"] == 2.0);
}

TEST_CASE("svg rendering is deterministic and layered") {
    const FieldInput input = load_field(kDataDir + "/demo.field");
    const FieldModel model = build_field_model(input.free, input.spec, input.frame);
    const CoveragePlan plan = plan_global(model, input.spec);
    const std::string one = render_svg(model.decomposition, model.tracks, &plan);
    const std::string two = render_svg(model.decomposition, model.tracks, &plan);
    CHECK(one == two);
    CHECK(one.find("<svg") != std::string::npos);
    CHECK(one.find("id=\"cells\"") != std::string::npos);
    CHECK(one.find("id=\"tracks\"") != std::string::npos);
    CHECK(one.find("id=\"plan\"") != std::string::npos);
    CHECK(one.find(">c0<") != std::string::npos);  // cell labels
    CHECK(one.find(">c3<") != std::string::npos);

    const std::string bare = render_svg(model.decomposition, model.tracks, nullptr);
    CHECK(bare.find("id=\"plan\"") == std::string::npos);
}

TEST_CASE("svg of an empty square shows a single cell outline") {
    const FreeSpace free = fixtures::empty_square();
    const MachineSpec spec{2.0, 0.8, true};
    const FieldModel model = build_field_model(free, spec, fixtures::sweep_x());
    const std::string svg = render_svg(model.decomposition, model.tracks, nullptr);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find(">c0<") != std::string::npos);
    CHECK(svg.find(">c1<") == std::string::npos);
}

TEST_CASE("cli: plan on the single-cell demo reports the optimal transit length") {
    REQUIRE(run_cli("plan " + kDataDir +
                    "/single_cell.field --mode global --out /tmp/fc_plan.json") == 0);
    const json doc = json::parse(slurp("/tmp/fc_plan.json"));
    CHECK(doc["metrics"]["nonproductive_m"].get<double>() ==
          doctest::Approx(1.0 + 3.0 * 3.14159265358979).epsilon(1e-9));
    check_plan_json(doc);
}

TEST_CASE("cli: exit codes for usage, input, and infeasibility errors") {
    CHECK(run_cli("--definitely-not-a-flag") == 1);
    CHECK(run_cli("plan") == 1);                     // missing field argument
    CHECK(run_cli("plan /tmp/no_such.field") == 2);  // unreadable file
    CHECK(run_cli("plan " + kDataDir + "/pocket.field --mode global") == 3);
    const std::string err = slurp("/tmp/fieldcover_cli.err");
    CHECK(err.find("isolated") != std::string::npos);
    CHECK(run_cli("plan " + kDataDir + "/pocket.field --mode traditional") == 0);
}

TEST_CASE("cli: compare writes a report and deterministic svg") {
    REQUIRE(run_cli("compare " + kDataDir +
                    "/demo.field --out /tmp/fc_cmp.json --svg /tmp/fc_a.svg") == 0);
    REQUIRE(run_cli("compare " + kDataDir +
                    "/demo.field --out /tmp/fc_cmp2.json --svg /tmp/fc_b.svg") == 0);
    CHECK(slurp("/tmp/fc_a.svg") == slurp("/tmp/fc_b.svg"));
    const json doc = json::parse(slurp("/tmp/fc_cmp.json"));
    check_plan_json(doc["traditional"]);
    check_plan_json(doc["global"]);
    const double ratio = doc["savings_ratio"].get<double>();
    CHECK(ratio >= 0.0);
    const double t = doc["traditional"]["metrics"]["nonproductive_m"].get<double>();
    const double g = doc["global"]["metrics"]["nonproductive_m"].get<double>();
    CHECK(ratio == doctest::Approx(1.0 - g / t).epsilon(1e-9));
}

TEST_CASE("cli: decompose writes an svg") {
    REQUIRE(run_cli("decompose " + kDataDir + "/demo.field --svg /tmp/fc_dec.svg") == 0);
    const std::string svg = slurp("/tmp/fc_dec.svg");
    CHECK(svg.find(">c3<") != std::string::npos);
}

TEST_CASE("cli: tuning flags reach the planner") {
    const std::string field = kDataDir + "/single_cell.field";
    REQUIRE(run_cli("plan " + field + " --mode global --headland-margin 0.5 --out /tmp/fc_m.json") ==
            0);
    json doc = json::parse(slurp("/tmp/fc_m.json"));
    CHECK(doc["metrics"]["productive_m"].get<double>() == doctest::Approx(4 * 9.0));
    CHECK(doc["solver"]["headland_margin_m"].get<double>() == 0.5);

    REQUIRE(run_cli("plan " + field +
                    " --mode global --exact-threshold 3 --seed 5 --out /tmp/fc_h.json") == 0);
    doc = json::parse(slurp("/tmp/fc_h.json"));
    CHECK(doc["solver"]["algorithm"] == "heuristic");
    check_plan_json(doc);

    REQUIRE(run_cli("plan " + field + " --mode global --tee-formula normalized --out /tmp/fc_t.json") ==
            0);
    doc = json::parse(slurp("/tmp/fc_t.json"));
    CHECK(doc["solver"]["tee_formula"] == "normalized");
    CHECK(run_cli("plan " + field + " --tee-formula bogus") == 1);
}
