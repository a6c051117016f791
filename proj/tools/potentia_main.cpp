#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "potentia/potentia.hpp"

namespace fs = std::filesystem;
using potentia::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

void print_reports(const potentia::ScenarioRun& run) {
    for (const auto& res : run.results)
        for (const auto& rep : res.reports)
            std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << run.scenario.name << "/" << res.name
                      << "/" << rep.theorem_id << "  residual=" << rep.worst_residual
                      << " tol=" << rep.tolerance << "\n";
}

int run_config(const json& config, const fs::path& out_dir, double tol_scale) {
    potentia::Scenario scenario = potentia::parse_scenario(config);
    potentia::ScenarioRun run = potentia::run_scenario(scenario, tol_scale);
    potentia::write_scenario_outputs(run, out_dir, config);
    print_reports(run);
    return run.all_pass ? 0 : kExitFail;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw potentia::validation_error("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw potentia::validation_error("config parse error in " + path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"potentia: balayage of discrete measures under Riesz kernels"};
    app.require_subcommand(1);

    double tol_scale = 1.0;
    app.add_option("--tol-scale", tol_scale, "global tolerance multiplier")->capture_default_str();

    std::string config_path;
    std::string out_override;
    auto* run_cmd = app.add_subcommand("run", "run one scenario config");
    run_cmd->add_option("config", config_path, "scenario JSON file")->required();
    run_cmd->add_option("--out", out_override, "override the output directory");

    std::string refine_config;
    std::vector<int> levels;
    std::string refine_out;
    auto* refine_cmd = app.add_subcommand("refine", "grid-refinement study of a scenario");
    refine_cmd->add_option("config", refine_config, "scenario JSON file")->required();
    refine_cmd->add_option("--levels", levels, "grid sizes, finest last")->required();
    refine_cmd->add_option("--out", refine_out, "override the output directory");

    std::string suite_out = "suite-out";
    auto* suite_cmd = app.add_subcommand("suite", "run every built-in scenario");
    suite_cmd->add_option("--out", suite_out, "output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            json config = load_config(config_path);
            fs::path dir = out_override.empty()
                               ? fs::path(config.value("output_dir", std::string{"out"}))
                               : fs::path(out_override);
            return run_config(config, dir, tol_scale);
        }
        if (*refine_cmd) {
            json config = load_config(refine_config);
            potentia::Scenario scenario = potentia::parse_scenario(config);
            potentia::RefineStudy study = potentia::refine_study(scenario, levels);
            fs::path dir = refine_out.empty()
                               ? fs::path(scenario.output_dir) / "refine"
                               : fs::path(refine_out);
            fs::create_directories(dir);
            std::ofstream out(dir / "refine.csv");
            for (const auto& row : study.csv()) out << row << "\n";
            std::cout << (study.report.pass ? "[PASS] " : "[FAIL] ") << scenario.name
                      << "/refine residual=" << study.report.worst_residual << "\n";
            return study.report.pass ? 0 : kExitFail;
        }
        if (*suite_cmd) {
            fs::path dir(suite_out);
            bool all_pass = true;
            json summary;
            summary["scenarios"] = json::array();
            for (const std::string& name : potentia::builtin_scenario_names()) {
                json config = potentia::builtin_scenario_config(name);
                potentia::Scenario scenario = potentia::parse_scenario(config);
                potentia::ScenarioRun run = potentia::run_scenario(scenario, tol_scale);
                potentia::write_scenario_outputs(run, dir / name, config);
                print_reports(run);
                std::ifstream res(dir / name / "results.json");
                std::string bytes((std::istreambuf_iterator<char>(res)),
                                  std::istreambuf_iterator<char>());
                summary["scenarios"].push_back(json{{"name", name},
                                                    {"all_pass", run.all_pass},
                                                    {"results_hash", potentia::fnv1a(bytes)}});
                all_pass = all_pass && run.all_pass;
            }
            summary["all_pass"] = all_pass;
            std::ofstream out(dir / "suite_results.json");
            out << summary.dump(2) << "\n";
            return all_pass ? 0 : kExitFail;
        }
    } catch (const potentia::convergence_error& e) {
        std::cerr << "solver non-convergence: " << e.what() << "\n";
        return kExitSolver;
    } catch (const potentia::validation_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const potentia::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
