#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "potentia/balayage.hpp"
#include "potentia/energy.hpp"
#include "potentia/equilibrium.hpp"
#include "potentia/grids.hpp"
#include "potentia/json_io.hpp"
#include "potentia/kernel.hpp"
#include "potentia/types.hpp"

namespace potentia {

struct ExperimentSpec {
    std::string name;
    std::string type;
    json params;
};

struct Scenario {
    std::string name;
    KernelSpec kernel;        // epsilon 0 means "use h/2 of the region grid"
    json region_spec;
    json source_spec;
    json probe_spec;          // optional exterior probe cloud
    std::vector<ExperimentSpec> experiments;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
};

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Config parsing

namespace detail {

inline const json& require_field(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        throw validation_error("config error at " + where + ": missing field '" + key + "'");
    return j.at(key);
}

}  // namespace detail

inline std::vector<Point> build_points(const json& spec, const std::string& where) {
    std::string type = detail::require_field(spec, "type", where).get<std::string>();
    if (type == "sphere-grid") {
        double radius = detail::require_field(spec, "radius", where).get<double>();
        int count = detail::require_field(spec, "count", where).get<int>();
        if (count <= 0 || !(radius > 0))
            throw validation_error("config error at " + where + ": radius and count must be positive");
        return fibonacci_sphere(radius, count);
    }
    if (type == "ball-grid") {
        double radius = detail::require_field(spec, "radius", where).get<double>();
        double spacing = detail::require_field(spec, "spacing", where).get<double>();
        if (!(radius > 0) || !(spacing > 0))
            throw validation_error("config error at " + where + ": radius and spacing must be positive");
        return ball_grid(radius, spacing);
    }
    if (type == "box-grid") {
        Point lo = detail::require_field(spec, "lo", where).get<Point>();
        Point hi = detail::require_field(spec, "hi", where).get<Point>();
        int nx = spec.value("nx", 2), ny = spec.value("ny", 2), nz = spec.value("nz", 2);
        return box_grid(lo, hi, nx, ny, nz);
    }
    if (type == "explicit")
        return detail::require_field(spec, "points", where).get<std::vector<Point>>();
    throw validation_error("config error at " + where + ": unknown generator type '" + type + "'");
}

inline Region build_region(const json& spec, const std::string& fallback_label = "region") {
    return Region(build_points(spec, "region_spec"), spec.value("label", fallback_label));
}

inline DiscreteMeasure build_source(const json& spec) {
    std::string type = detail::require_field(spec, "type", "source_spec").get<std::string>();
    if (type == "shell") {
        double radius = detail::require_field(spec, "radius", "source_spec").get<double>();
        double mass = detail::require_field(spec, "mass", "source_spec").get<double>();
        int count = detail::require_field(spec, "count", "source_spec").get<int>();
        return shell_measure(radius, mass, count);
    }
    if (type == "atoms") return measure_from_json(spec);
    if (type == "uniform-box") {
        Point lo = detail::require_field(spec, "lo", "source_spec").get<Point>();
        Point hi = detail::require_field(spec, "hi", "source_spec").get<Point>();
        int nx = spec.value("nx", 3), ny = spec.value("ny", 3), nz = spec.value("nz", 3);
        double mass = detail::require_field(spec, "mass", "source_spec").get<double>();
        auto pts = box_grid(lo, hi, nx, ny, nz);
        return make_measure(pts, std::vector<double>(pts.size(), mass / pts.size()));
    }
    throw validation_error("config error at source_spec: unknown source type '" + type + "'");
}

inline Scenario parse_scenario(const json& j) {
    Scenario s;
    s.name = detail::require_field(j, "name", "scenario").get<std::string>();
    s.kernel = kernel_from_json(detail::require_field(j, "kernel", "scenario"));
    s.region_spec = detail::require_field(j, "region_spec", "scenario");
    s.source_spec = detail::require_field(j, "source_spec", "scenario");
    if (j.contains("probe_spec")) s.probe_spec = j.at("probe_spec");
    s.seed = j.value("seed", std::uint64_t{0});
    s.output_dir = j.value("output_dir", std::string{"out"});
    const json& exps = detail::require_field(j, "experiments", "scenario");
    if (!exps.is_array() || exps.empty())
        throw validation_error("config error at experiments: non-empty array required");
    for (std::size_t i = 0; i < exps.size(); ++i) {
        const json& e = exps[i];
        std::string where = "experiments[" + std::to_string(i) + "]";
        ExperimentSpec spec;
        spec.type = detail::require_field(e, "type", where).get<std::string>();
        spec.name = e.value("name", spec.type + "-" + std::to_string(i));
        spec.params = e;
        s.experiments.push_back(std::move(spec));
    }
    // dry-run the generators so schema errors surface before any solve
    build_region(s.region_spec);
    build_source(s.source_spec);
    return s;
}

inline Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw validation_error("config parse error in " + path + ": " + e.what());
    }
    return parse_scenario(j);
}

// ---------------------------------------------------------------------------
// Experiment runner

struct ExperimentResult {
    std::string name;
    std::string type;
    std::vector<TheoremReport> reports;
    json data;                        // experiment-specific records
    std::vector<std::string> csv;     // rows of the per-experiment table (first = header)
};

struct ScenarioRun {
    Scenario scenario;
    double grid_h = 0.0;
    double epsilon = 0.0;
    std::vector<ExperimentResult> results;
    bool all_pass = true;

    json to_results_json() const {
        json out;
        out["scenario"] = scenario.name;
        out["kernel"] = json{{"alpha", scenario.kernel.alpha},
                             {"dim", scenario.kernel.dim},
                             {"epsilon", epsilon}};
        out["grid_h"] = grid_h;
        out["seed"] = scenario.seed;
        json exps = json::array();
        for (const auto& r : results) {
            json e;
            e["name"] = r.name;
            e["type"] = r.type;
            json reps = json::array();
            for (const auto& rep : r.reports) reps.push_back(to_json(rep));
            e["reports"] = reps;
            e["data"] = r.data;
            exps.push_back(std::move(e));
        }
        out["experiments"] = exps;
        out["all_pass"] = all_pass;
        return out;
    }
};

namespace detail {

inline std::size_t worker_count() {
    if (const char* env = std::getenv("POTENTIA_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Nested chain of subregions as prefixes of a seeded permutation; the final
// element is the full region.
inline std::vector<Region> prefix_chain(const Region& region, const std::vector<int>& sizes,
                                        std::uint64_t seed, bool decreasing = false) {
    std::vector<std::size_t> perm(region.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Region> chain;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        int n = std::min<int>(sizes[c], static_cast<int>(region.size()));
        if (n < 1) throw validation_error("chain sizes must be >= 1");
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) pts.push_back(region.points().point(perm[static_cast<std::size_t>(i)]));
        chain.emplace_back(pts, region.label() + "#" + std::to_string(c));
    }
    if (decreasing) {
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            if (chain[i].size() < chain[i + 1].size())
                throw validation_error("decreasing chain sizes must be nonincreasing");
    }
    return chain;
}

inline std::vector<int> chain_sizes(const json& params, std::size_t region_size, bool decreasing) {
    if (params.contains("chain_sizes")) return params.at("chain_sizes").get<std::vector<int>>();
    int n = static_cast<int>(region_size);
    std::vector<int> sizes = {std::max(1, n / 8), std::max(1, n / 4), std::max(1, n / 2), n};
    if (decreasing) std::reverse(sizes.begin(), sizes.end());
    return sizes;
}

}  // namespace detail

/// Runs one scenario; returns everything needed to write results.json and the
/// per-experiment CSV tables. Throws validation_error for config problems and
/// convergence_error when a solve fails.
inline ScenarioRun run_scenario(const Scenario& scenario, double tol_scale = 1.0) {
    ScenarioRun run;
    run.scenario = scenario;

    Region region = build_region(scenario.region_spec);
    DiscreteMeasure source = build_source(scenario.source_spec);
    run.grid_h = region.size() > 1 ? min_spacing(region.points()) : 0.0;

    KernelSpec kernel = scenario.kernel;
    if (kernel.epsilon == 0.0) kernel.epsilon = run.grid_h > 0.0 ? 0.5 * run.grid_h : 0.5;
    run.epsilon = kernel.epsilon;
    EnergyContext ctx(kernel);

    // Probes: region points + source support + declared exterior cloud.
    std::vector<Point> probe_pts = region.points().points();
    auto add_unique = [&probe_pts](const Point& p) {
        for (const auto& q : probe_pts)
            if (point_equal(p, q)) return;
        probe_pts.push_back(p);
    };
    for (std::size_t i = 0; i < source.size(); ++i) add_unique(source.atoms().point(i));
    if (!scenario.probe_spec.is_null())
        for (const auto& p : build_points(scenario.probe_spec, "probe_spec")) add_unique(p);
    PointSet probes(probe_pts, kernel.dim);

    const double solver_tol = 1e-9;
    SweepResult base_sweep = sweep(ctx, source, region, solver_tol);
    EquilibriumResult base_eq;
    bool have_eq = false;
    auto equilibrium = [&]() -> const EquilibriumResult& {
        if (!have_eq) {
            base_eq = equilibrium_measure(ctx, region, solver_tol);
            have_eq = true;
        }
        return base_eq;
    };

    auto run_one = [&](const ExperimentSpec& spec) {
        ExperimentResult res;
        res.name = spec.name;
        res.type = spec.type;
        const json& p = spec.params;

        if (spec.type == "sweep") {
            res.data["sweep"] = to_json(base_sweep);
            Eigen::VectorXd pm = ctx.potential(source, probes);
            Eigen::VectorXd ps = ctx.potential(base_sweep.swept, probes);
            res.csv.push_back("probe,kappa_mu,kappa_swept");
            for (Eigen::Index i = 0; i < pm.size(); ++i) {
                std::ostringstream row;
                row.precision(17);
                row << i << "," << pm[i] << "," << ps[i];
                res.csv.push_back(row.str());
            }
            if (p.contains("expected_mass")) {
                TheoremReport rep;
                rep.theorem_id = "swept-mass-value";
                rep.tolerance = p.value("mass_rel_tol", 2e-2) * tol_scale;
                double expected = p.at("expected_mass").get<double>();
                rep.worst_residual = std::abs(base_sweep.swept_mass - expected) /
                                     std::max(1e-300, std::abs(expected));
                rep.note("expected", expected);
                rep.note("actual", base_sweep.swept_mass);
                res.reports.push_back(rep.finalize());
            }
        } else if (spec.type == "idempotence") {
            TheoremReport rep;
            rep.theorem_id = "idempotence";
            rep.tolerance = p.value("tol", 1e-8) * tol_scale;
            rep.worst_residual = base_sweep.energy_distance;
            res.reports.push_back(rep.finalize());
            res.data["sweep"] = to_json(base_sweep);
        } else if (spec.type == "domination") {
            Eigen::VectorXd pm = ctx.potential(source, probes);
            double tol = p.value("tol_factor", 1e-3) * pm.maxCoeff() * tol_scale;
            res.reports.push_back(check_domination(ctx, source, base_sweep, probes, tol));
        } else if (spec.type == "mass") {
            double tol_mass = p.value("tol_mass", 2e-2) * tol_scale;
            res.reports.push_back(
                check_mass(ctx, source, base_sweep, equilibrium(), 1e-9 * tol_scale, tol_mass));
            if (p.contains("expected_mass")) {
                TheoremReport rep;
                rep.theorem_id = "swept-mass-value";
                rep.tolerance = tol_mass;
                double expected = p.at("expected_mass").get<double>();
                rep.worst_residual = std::abs(base_sweep.swept_mass - expected) /
                                     std::max(1e-300, std::abs(expected));
                res.reports.push_back(rep.finalize());
            }
            std::ostringstream row;
            row.precision(17);
            res.csv.push_back("source_mass,swept_mass");
            row << base_sweep.source_mass << "," << base_sweep.swept_mass;
            res.csv.push_back(row.str());
        } else if (spec.type == "monotonicity") {
            auto chain = detail::prefix_chain(region, {std::max(1, (int)region.size() / 2)},
                                              scenario.seed + 11);
            res.reports.push_back(check_monotonicity(ctx, source, chain[0], region, probes,
                                                     p.value("tol", 1e-7) * tol_scale, solver_tol));
        } else if (spec.type == "rest") {
            auto chain = detail::prefix_chain(region, {std::max(1, (int)region.size() / 2)},
                                              scenario.seed + 13);
            double tol_rest = p.value("tol_rest", 0.0);
            res.reports.push_back(check_sweep_with_rest(ctx, source, chain[0], region,
                                                        tol_rest * tol_scale, solver_tol));
        } else if (spec.type == "truncated") {
            double q = p.value("q_factor", 1.0);
            SweepResult capped = sweep_truncated(ctx, source, region, q, solver_tol);
            TheoremReport rep;
            rep.theorem_id = "truncated-identity";
            rep.tolerance = p.value("tol", 1e-8) * tol_scale;
            rep.worst_residual = ctx.energy_distance(capped.swept, base_sweep.swept);
            rep.note("cap_active", capped.mass_cap_active ? 1.0 : 0.0);
            rep.note("lambda", capped.lambda);
            res.reports.push_back(rep.finalize());
            res.data["sweep"] = to_json(capped);
        } else if (spec.type == "exhaustion") {
            auto sizes = detail::chain_sizes(p, region.size(), false);
            auto chain = detail::prefix_chain(region, sizes, scenario.seed + 17);
            auto out = exhaustion_experiment(ctx, source, region, chain, probes,
                                             p.value("tol", 1e-7) * tol_scale, solver_tol);
            res.reports.push_back(out.report);
            res.csv.push_back("level,size,energy_distance_to_full");
            for (std::size_t i = 0; i + 1 < out.sweeps.size(); ++i) {
                std::ostringstream row;
                row.precision(17);
                row << i << "," << chain[i].size() << ","
                    << ctx.energy_distance(out.sweeps[i].swept, out.sweeps.back().swept);
                res.csv.push_back(row.str());
            }
        } else if (spec.type == "decreasing") {
            auto sizes = detail::chain_sizes(p, region.size(), true);
            auto chain = detail::prefix_chain(region, sizes, scenario.seed + 19, true);
            auto out = decreasing_experiment(ctx, source, chain, probes,
                                             p.value("tol", 1e-7) * tol_scale, solver_tol);
            res.reports.push_back(out.report);
        } else if (spec.type == "equilibrium") {
            const EquilibriumResult& eq = equilibrium();
            double tol = p.value("tol", 1e-6) * tol_scale;
            TheoremReport rep;
            rep.theorem_id = "equilibrium-identities";
            rep.tolerance = 1.0;
            double cap = std::max(eq.capacity, 1e-300);
            rep.record("mass-identity/tol",
                       std::abs(eq.capacity - eq.gamma.mass()) / (cap * tol));
            rep.record("norm-identity/tol",
                       std::abs(eq.capacity - ctx.norm_squared(eq.gamma)) / (cap * tol));
            rep.record("region-lower-bound/tol",
                       (1.0 - eq.min_potential_on_region) / tol);
            rep.record("support-upper-bound/tol",
                       (eq.max_potential_on_support - 1.0) / tol);
            double tol_frostman = p.value("tol_frostman", 1e-2) * tol_scale;
            Eigen::VectorXd pot = ctx.potential(eq.gamma, probes);
            rep.record("frostman/tol", (pot.maxCoeff() - 1.0) / tol_frostman);
            res.reports.push_back(rep.finalize());
            if (p.contains("expected_capacity")) {
                TheoremReport cv;
                cv.theorem_id = "capacity-value";
                cv.tolerance = p.value("capacity_rel_tol", 5e-2) * tol_scale;
                double expected = p.at("expected_capacity").get<double>();
                cv.worst_residual = std::abs(eq.capacity - expected) / std::abs(expected);
                cv.note("expected", expected);
                cv.note("actual", eq.capacity);
                res.reports.push_back(cv.finalize());
            }
            res.data["equilibrium"] = to_json(eq);
        } else if (spec.type == "equilibrium-exhaustion") {
            auto sizes = detail::chain_sizes(p, region.size(), false);
            auto chain = detail::prefix_chain(region, sizes, scenario.seed + 23);
            auto out = equilibrium_exhaustion(ctx, region, chain, probes,
                                              p.value("tol", 1e-7) * tol_scale, solver_tol);
            res.reports.push_back(out.report);
            res.csv.push_back("level,size,capacity");
            for (std::size_t i = 0; i < out.capacities.size(); ++i) {
                std::ostringstream row;
                row.precision(17);
                row << i << "," << chain[i].size() << "," << out.capacities[i];
                res.csv.push_back(row.str());
            }
        } else {
            throw validation_error("config error: unknown experiment type '" + spec.type + "'");
        }
        return res;
    };

    // Experiments are pure functions of immutable inputs; dispatch them to a
    // bounded pool and collect in declaration order.
    const std::size_t workers = detail::worker_count();
    run.results.resize(scenario.experiments.size());
    if (workers <= 1 || scenario.experiments.size() <= 1) {
        for (std::size_t i = 0; i < scenario.experiments.size(); ++i)
            run.results[i] = run_one(scenario.experiments[i]);
    } else {
        std::vector<std::future<ExperimentResult>> futures(scenario.experiments.size());
        std::size_t next = 0;
        while (next < futures.size()) {
            std::size_t batch = std::min(workers, futures.size() - next);
            for (std::size_t b = 0; b < batch; ++b)
                futures[next + b] = std::async(std::launch::async, run_one,
                                               std::cref(scenario.experiments[next + b]));
            for (std::size_t b = 0; b < batch; ++b)
                run.results[next + b] = futures[next + b].get();
            next += batch;
        }
    }

    for (const auto& r : run.results)
        for (const auto& rep : r.reports)
            if (!rep.pass) run.all_pass = false;
    return run;
}

/// Writes results.json, tables/*.csv and the run manifest under the run's
/// output directory. The manifest is written last.
inline void write_scenario_outputs(const ScenarioRun& run, const std::filesystem::path& dir,
                                   const json& raw_config) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "tables");
    {
        std::ofstream out(dir / "results.json");
        out << run.to_results_json().dump(2) << "\n";
    }
    for (const auto& r : run.results) {
        if (r.csv.empty()) continue;
        std::ofstream out(dir / "tables" / (r.name + ".csv"));
        for (const auto& row : r.csv) out << row << "\n";
    }
    {
        std::ofstream out(dir / "reports.csv");
        out << "theorem_id,pass,worst_residual,tolerance\n";
        for (const auto& r : run.results)
            for (const auto& rep : r.reports) out << report_csv_row(rep) << "\n";
    }
    json manifest;
    manifest["scenario"] = run.scenario.name;
    manifest["config_hash"] = fnv1a(raw_config.dump());
    manifest["epsilon"] = run.epsilon;
    manifest["grid_h"] = run.grid_h;
    manifest["all_pass"] = run.all_pass;
    std::ofstream out(dir / "run_manifest.json");
    out << manifest.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Refinement studies

struct RefineRow {
    int level = 0;
    int count = 0;
    double h = 0.0;
    double epsilon = 0.0;
    double capacity_error = 0.0;
    double domination_residual = 0.0;
    double mass_formula_residual = 0.0;
};

struct RefineStudy {
    std::vector<RefineRow> rows;
    TheoremReport report;  // nonincreasing columns within 10% slack

    std::vector<std::string> csv() const {
        std::vector<std::string> out;
        out.push_back("level,count,h,epsilon,capacity_error,domination_residual,mass_formula_residual");
        for (const auto& r : rows) {
            std::ostringstream row;
            row.precision(17);
            row << r.level << "," << r.count << "," << r.h << "," << r.epsilon << ","
                << r.capacity_error << "," << r.domination_residual << ","
                << r.mass_formula_residual;
            out.push_back(row.str());
        }
        return out;
    }
};

/// Reruns a sphere-grid scenario across grid sizes with epsilon = h/2 and
/// tracks capacity error against the classical value, the domination residual
/// and the mass-formula residual; all three must shrink (10% slack).
inline RefineStudy refine_study(const Scenario& scenario, const std::vector<int>& levels,
                                double slack = 0.10) {
    if (levels.empty()) throw validation_error("refine_study: empty level list");
    if (scenario.region_spec.value("type", "") != std::string("sphere-grid"))
        throw validation_error("refine_study: region_spec must be a sphere-grid");
    const double radius = scenario.region_spec.at("radius").get<double>();
    DiscreteMeasure source = build_source(scenario.source_spec);

    RefineStudy study;
    study.report.theorem_id = "refine-monotone";
    study.report.tolerance = 0.0;
    for (std::size_t lvl = 0; lvl < levels.size(); ++lvl) {
        int count = levels[lvl];
        if (count <= 0) throw validation_error("refine_study: level sizes must be positive");
        Region region(fibonacci_sphere(radius, count), scenario.name + "#L" + std::to_string(lvl));
        double h = region.size() > 1 ? min_spacing(region.points()) : 1.0;
        KernelSpec kernel = scenario.kernel;
        kernel.epsilon = 0.5 * h;
        EnergyContext ctx(kernel);

        EquilibriumResult eq = equilibrium_measure(ctx, region);
        SweepResult s = sweep(ctx, source, region);

        std::vector<Point> probe_pts = region.points().points();
        for (std::size_t i = 0; i < source.size(); ++i) probe_pts.push_back(source.atoms().point(i));
        PointSet probes(probe_pts, kernel.dim);
        Eigen::VectorXd pm = ctx.potential(source, probes);
        Eigen::VectorXd ps = ctx.potential(s.swept, probes);
        double dom = std::max(0.0, (ps - pm).maxCoeff()) / pm.maxCoeff();

        double formula = 0.0;
        for (std::size_t i = 0; i < source.size(); ++i)
            formula += source.weights()[static_cast<Eigen::Index>(i)] *
                       ctx.potential_at(eq.gamma, source.atoms().point(i));

        RefineRow row;
        row.level = static_cast<int>(lvl);
        row.count = count;
        row.h = h;
        row.epsilon = kernel.epsilon;
        row.capacity_error = std::abs(eq.capacity - radius) / radius;
        row.domination_residual = dom;
        row.mass_formula_residual =
            std::abs(s.swept_mass - formula) / std::max(1e-300, s.source_mass);
        study.rows.push_back(row);
    }
    for (std::size_t i = 0; i + 1 < study.rows.size(); ++i) {
        auto check = [&](const char* col, double prev, double next) {
            study.report.record(std::string(col) + "[" + std::to_string(i) + "]",
                                next - (prev * (1.0 + slack) + 1e-12));
        };
        check("capacity_error", study.rows[i].capacity_error, study.rows[i + 1].capacity_error);
        check("domination_residual", study.rows[i].domination_residual,
              study.rows[i + 1].domination_residual);
        check("mass_formula_residual", study.rows[i].mass_formula_residual,
              study.rows[i + 1].mass_formula_residual);
    }
    study.report.finalize();
    return study;
}

// ---------------------------------------------------------------------------
// Built-in scenarios

inline json builtin_scenario_config(const std::string& name) {
    if (name == "fixed-point") {
        return json{
            {"name", "fixed-point"},
            {"kernel", {{"alpha", 2.0}, {"dim", 3}, {"epsilon", 0.0}}},
            {"region_spec", {{"type", "sphere-grid"}, {"radius", 1.0}, {"count", 200}}},
            {"source_spec", {{"type", "shell"}, {"radius", 1.0}, {"mass", 1.0}, {"count", 200}}},
            {"probe_spec", {{"type", "sphere-grid"}, {"radius", 3.0}, {"count", 64}}},
            {"seed", 1},
            {"experiments",
             json::array({json{{"type", "idempotence"}}, json{{"type", "domination"}},
                          json{{"type", "mass"}}, json{{"type", "monotonicity"}},
                          json{{"type", "rest"}}, json{{"type", "truncated"}},
                          json{{"type", "equilibrium"}}})}};
    }
    if (name == "shell-onto-sphere") {
        return json{
            {"name", "shell-onto-sphere"},
            {"kernel", {{"alpha", 2.0}, {"dim", 3}, {"epsilon", 0.0}}},
            {"region_spec", {{"type", "sphere-grid"}, {"radius", 1.0}, {"count", 1500}}},
            {"source_spec", {{"type", "shell"}, {"radius", 2.0}, {"mass", 1.0}, {"count", 400}}},
            {"probe_spec", {{"type", "sphere-grid"}, {"radius", 4.0}, {"count", 64}}},
            {"seed", 2},
            {"experiments",
             json::array({json{{"type", "sweep"}},
                          json{{"type", "domination"}, {"tol_factor", 1e-3}},
                          json{{"type", "mass"}, {"expected_mass", 0.5}, {"tol_mass", 2e-2}},
                          json{{"type", "truncated"}},
                          json{{"type", "equilibrium"},
                               {"expected_capacity", 1.0},
                               {"capacity_rel_tol", 5e-2}}})}};
    }
    if (name == "convergence-chains") {
        return json{
            {"name", "convergence-chains"},
            {"kernel", {{"alpha", 2.0}, {"dim", 3}, {"epsilon", 0.0}}},
            {"region_spec", {{"type", "sphere-grid"}, {"radius", 1.0}, {"count", 160}}},
            {"source_spec", {{"type", "shell"}, {"radius", 2.0}, {"mass", 1.0}, {"count", 96}}},
            {"probe_spec", {{"type", "sphere-grid"}, {"radius", 3.0}, {"count", 48}}},
            {"seed", 3},
            {"experiments",
             json::array({json{{"type", "exhaustion"}}, json{{"type", "decreasing"}},
                          json{{"type", "equilibrium-exhaustion"}}, json{{"type", "rest"}},
                          json{{"type", "monotonicity"}}})}};
    }
    throw validation_error("unknown built-in scenario '" + name + "'");
}

inline std::vector<std::string> builtin_scenario_names() {
    return {"fixed-point", "shell-onto-sphere", "convergence-chains"};
}

}  // namespace potentia
