#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fieldcover/field_io.hpp"
#include "fieldcover/planner.hpp"
#include "fieldcover/svg.hpp"

namespace {

using namespace fieldcover;

struct CommonOptions {
    int exact_threshold = 15;
    std::string tee_formula = "paper";
    double headland_margin = -1.0;
    std::uint64_t seed = 0;

    PlannerConfig planner_config() const {
        PlannerConfig cfg;
        cfg.exact_threshold = exact_threshold;
        cfg.tee = tee_formula == "normalized" ? TeeFormula::Normalized : TeeFormula::Paper;
        cfg.headland_margin = headland_margin;
        cfg.seed = seed;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--exact-threshold", opts.exact_threshold,
                    "largest track count solved exactly (default 15)");
    cmd->add_option("--tee-formula", opts.tee_formula,
                    "three-point turn length variant: paper | normalized")
        ->check(CLI::IsMember({"paper", "normalized"}));
    cmd->add_option("--headland-margin", opts.headland_margin,
                    "track shortening at each end, meters (default 2*r_min)");
    cmd->add_option("--seed", opts.seed, "seed for heuristic perturbation restarts");
}

SolverInfo make_info(const std::string& mode, const CoveragePlan& plan, const CommonOptions& opts,
                     const MachineSpec& spec) {
    SolverInfo info;
    info.mode = mode;
    info.exact = plan.used_exact;
    info.exact_threshold = opts.exact_threshold;
    info.tee = opts.tee_formula == "normalized" ? TeeFormula::Normalized : TeeFormula::Paper;
    info.headland_margin =
        opts.headland_margin < 0.0 ? 2.0 * spec.r_min : opts.headland_margin;
    info.seed = opts.seed;
    return info;
}

void print_metrics(const std::string& label, const PlanMetrics& m) {
    std::cout << label << ": productive " << m.productive_m << " m, non-productive "
              << m.nonproductive_m << " m (omega " << m.omega_turns << ", pi " << m.pi_turns
              << ", tee " << m.tee_turns << ", routed " << m.routed_transits << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage path planning for polygonal fields with obstacles"};
    app.require_subcommand(1);

    std::string field_path, svg_path, out_path, mode = "global";
    CommonOptions opts;

    CLI::App* cmd_decompose = app.add_subcommand("decompose", "decompose a field into cells");
    cmd_decompose->add_option("field", field_path, "field file")->required();
    cmd_decompose->add_option("--svg", svg_path, "write the decomposition as SVG");
    add_common(cmd_decompose, opts);

    CLI::App* cmd_plan = app.add_subcommand("plan", "compute a coverage plan");
    cmd_plan->add_option("field", field_path, "field file")->required();
    cmd_plan->add_option("--mode", mode, "traditional | global")
        ->check(CLI::IsMember({"traditional", "global"}));
    cmd_plan->add_option("--out", out_path, "write the plan file (JSON)");
    cmd_plan->add_option("--svg", svg_path, "write the plan as SVG");
    add_common(cmd_plan, opts);

    CLI::App* cmd_compare =
        app.add_subcommand("compare", "plan both ways and report the savings");
    cmd_compare->add_option("field", field_path, "field file")->required();
    cmd_compare->add_option("--out", out_path, "write the comparison report (JSON)");
    cmd_compare->add_option("--svg", svg_path, "write the global plan as SVG");
    add_common(cmd_compare, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        const FieldInput input = load_field(field_path);
        const FieldModel model = build_field_model(input.free, input.spec, input.frame);
        const PlannerConfig cfg = opts.planner_config();

        if (cmd_decompose->parsed()) {
            std::cout << model.decomposition.cells.size() << " cells, " << model.tracks.size()
                      << " tracks\n";
            if (!svg_path.empty())
                render_svg_file(model.decomposition, model.tracks, nullptr, svg_path);
            return 0;
        }

        if (cmd_plan->parsed()) {
            const CoveragePlan plan = mode == "traditional"
                                          ? plan_traditional(model, input.spec, cfg)
                                          : plan_global(model, input.spec, cfg);
            print_metrics(mode, plan.metrics);
            if (!out_path.empty())
                write_text_file(out_path,
                                plan_to_json(input, plan, make_info(mode, plan, opts, input.spec)));
            if (!svg_path.empty()) render_svg_file(model.decomposition, model.tracks, &plan, svg_path);
            return 0;
        }

        if (cmd_compare->parsed()) {
            const PlanComparison cmp = compare(model, input.spec, cfg);
            print_metrics("traditional", cmp.traditional.metrics);
            print_metrics("global", cmp.global.metrics);
            std::cout << "savings_ratio: " << cmp.savings_ratio << "\n";
            if (!out_path.empty())
                write_text_file(
                    out_path,
                    comparison_to_json(input, cmp,
                                       make_info("traditional", cmp.traditional, opts, input.spec),
                                       make_info("global", cmp.global, opts, input.spec)));
            if (!svg_path.empty())
                render_svg_file(model.decomposition, model.tracks, &cmp.global, svg_path);
            return 0;
        }
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
