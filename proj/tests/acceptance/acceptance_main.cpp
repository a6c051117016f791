// Acceptance gate: one pass/fail line per criterion, exit 0 only if all hold.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "potentia/potentia.hpp"

#include "../support/generators.hpp"
#include "../support/oracles.hpp"

using namespace potentia;
namespace fs = std::filesystem;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int failures = 0;

void report(int id, const std::string& label, bool ok, double secs, const std::string& extra = "") {
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, label.c_str(),
                secs, extra.empty() ? "" : " -- ", extra.c_str());
    if (!ok) ++failures;
}

double energy_dist(const Eigen::MatrixXd& K, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    Eigen::VectorXd d = u - v;
    return std::sqrt(std::max(0.0, d.dot(K.selfadjointView<Eigen::Lower>() * d)));
}

// 1. project agrees with the exhaustive enumeration oracle on small instances.
void criterion_oracle() {
    Timer t;
    std::mt19937_64 rng(2024);
    EnergyContext ctx(KernelSpec{2.0, 3, 0.4});
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 11);  // 2..12 region points
        Region region(generators::lattice_points(rng, n), "r");
        auto mu = generators::random_measure(rng, 3 + static_cast<int>(rng() % 4));
        ProjectionProblem p;
        p.source = mu;
        p.region = region;
        auto out = project(ctx, p);

        auto K = ctx.gram(region.points(), region.points());
        Eigen::VectorXd b = ctx.potential(mu, region.points());
        Eigen::VectorXd ref = oracles::enumerate_projection(*K, b);
        double d = energy_dist(*K, out.weights, ref);
        worst = std::max(worst, d);
        if (!(d <= 1e-8)) ok = false;
    }
    double secs = t.seconds();
    std::ostringstream extra;
    extra << "200 instances, worst energy distance " << worst;
    report(1, "oracle equivalence on random small instances", ok && secs < 10.0, secs, extra.str());
}

// 2. KKT certificate and Pythagoras identity on converged sweeps.
void criterion_kkt() {
    Timer t;
    std::mt19937_64 rng(2025);
    EnergyContext ctx(KernelSpec{2.0, 3, 0.4});
    bool ok = true;

    auto check_one = [&](const EnergyContext& c, const DiscreteMeasure& mu, const Region& region) {
        ProjectionProblem p;
        p.source = mu;
        p.region = region;
        auto out = project(c, p);
        double budget = 1e-9 * out.certificate.b_scale;
        if (out.certificate.stationarity > budget) ok = false;
        if (out.certificate.dual_feasibility > budget) ok = false;
        if (out.certificate.complementarity > budget) ok = false;

        DiscreteMeasure swept(region.points(), out.weights);
        double total = c.norm_squared(mu);
        double split = c.distance_squared(mu, swept) + c.norm_squared(swept);
        if (std::abs(split - total) > 1e-6 * std::max(1e-300, total)) ok = false;
    };

    for (int trial = 0; trial < 60; ++trial) {
        Region region(generators::lattice_points(rng, 6 + static_cast<int>(rng() % 15)), "r");
        check_one(ctx, generators::random_measure(rng, 5), region);
    }
    // a grid-scale instance as well
    Region sphere(fibonacci_sphere(1.0, 300), "sphere300");
    EnergyContext grid_ctx(KernelSpec{2.0, 3, 0.5 * min_spacing(sphere.points())});
    check_one(grid_ctx, shell_measure(2.0, 1.0, 200), sphere);

    report(2, "KKT certificate and Pythagoras identity", ok, t.seconds());
}

// 3. Exact discrete identities at solver tolerance.
void criterion_identities() {
    Timer t;
    std::mt19937_64 rng(2026);
    EnergyContext ctx(KernelSpec{2.0, 3, 0.45});
    bool ok = true;

    for (int trial = 0; trial < 10; ++trial) {
        auto pts = generators::lattice_points(rng, 18);
        Region q(pts, "q");
        Region a(std::vector<Point>(pts.begin(), pts.begin() + 7), "a");
        auto mu = generators::random_measure(rng, 6);

        // two-route identity, budget 1e-6 * ||mu||
        if (!check_sweep_with_rest(ctx, mu, a, q).pass) ok = false;

        // sweeping a measure already on the region is the identity
        Eigen::VectorXd w(static_cast<Eigen::Index>(q.size()));
        std::uniform_real_distribution<double> weight(0.1, 1.5);
        for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = weight(rng);
        DiscreteMeasure on_region(q.points(), w);
        if (!(sweep(ctx, on_region, q).energy_distance <= 1e-8)) ok = false;

        // capped sweep with slack cap equals the free sweep
        SweepResult free_sweep = sweep(ctx, mu, q);
        SweepResult capped = sweep_truncated(ctx, mu, q, 1.0);
        if (!(ctx.energy_distance(free_sweep.swept, capped.swept) <= 1e-8)) ok = false;

        // strong-Cauchy slack along a nested chain (among the other records)
        std::vector<Region> chain = {a, Region(std::vector<Point>(pts.begin(), pts.begin() + 12), "m"), q};
        if (!exhaustion_experiment(ctx, mu, q, chain, PointSet({{4, 4, 4}, {-4, 0, 3}}), 1e-7).report
                 .pass)
            ok = false;
    }
    report(3, "rest/idempotence/strong-Cauchy/truncated identities", ok, t.seconds());
}

// 4. Monotone convergence along 20 randomized chains of each flavour.
void criterion_chains() {
    Timer t;
    auto pts = fibonacci_sphere(1.0, 96);
    Region region(pts, "sphere96");
    EnergyContext ctx(KernelSpec{2.0, 3, 0.5 * min_spacing(region.points())});
    auto mu = shell_measure(2.0, 1.0, 64);
    PointSet probes(fibonacci_sphere(3.0, 24));
    bool ok = true;

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto up = detail::prefix_chain(region, {12, 24, 48, 96}, 1000 + seed);
        if (!exhaustion_experiment(ctx, mu, region, up, probes, 1e-7).report.pass) ok = false;

        auto down = detail::prefix_chain(region, {96, 48, 24, 12}, 2000 + seed, true);
        if (!decreasing_experiment(ctx, mu, down, probes, 1e-7).report.pass) ok = false;

        auto eq = detail::prefix_chain(region, {12, 24, 48, 96}, 3000 + seed);
        if (!equilibrium_exhaustion(ctx, region, eq, probes, 1e-7).report.pass) ok = false;
    }
    double secs = t.seconds();
    report(4, "20 randomized chains per convergence suite", ok && secs < 60.0, secs);
}

std::vector<ScenarioRun> suite_runs;  // shared between criteria 5 and 6

// 5. Continuum-limit behaviour of the shell-onto-sphere scenario.
void criterion_continuum() {
    Timer t;
    bool ok = true;
    std::ostringstream extra;

    Scenario s = parse_scenario(builtin_scenario_config("shell-onto-sphere"));
    RefineStudy study = refine_study(s, {200, 600, 1500});
    if (!study.report.pass) ok = false;
    const RefineRow& fine = study.rows.back();
    if (!(fine.capacity_error <= 0.05)) ok = false;
    extra << "capacity error " << fine.capacity_error << ", domination residual "
          << fine.domination_residual;

    Timer finest;
    ScenarioRun run = run_scenario(s);  // includes mass-within-2% and domination checks at 1500
    double finest_secs = finest.seconds();
    if (!run.all_pass) ok = false;
    if (finest_secs >= 120.0) ok = false;
    suite_runs.push_back(std::move(run));

    report(5, "shell-onto-sphere continuum limits and refinement", ok, t.seconds(), extra.str());
}

// 6. Mass positivity across the entire built-in suite.
void criterion_mass_positivity() {
    Timer t;
    bool ok = true;

    for (const std::string& name : builtin_scenario_names()) {
        bool already = false;
        for (const auto& r : suite_runs) already = already || r.scenario.name == name;
        if (!already)
            suite_runs.push_back(run_scenario(parse_scenario(builtin_scenario_config(name))));
    }

    // every sweep serialized by any experiment
    std::function<void(const json&)> scan = [&](const json& j) {
        if (j.is_object()) {
            if (j.contains("swept_mass") && j.contains("source_mass")) {
                double swept = j.at("swept_mass").get<double>();
                double src = j.at("source_mass").get<double>();
                if (!(swept <= src * (1.0 + 1e-9))) ok = false;
            }
            for (const auto& [k, v] : j.items()) scan(v);
        } else if (j.is_array()) {
            for (const auto& v : j) scan(v);
        }
    };
    for (const auto& run : suite_runs) {
        scan(run.to_results_json());
        if (!run.all_pass) ok = false;

        // direct re-check of the base sweep and of nested subregion sweeps
        Region region = build_region(run.scenario.region_spec);
        DiscreteMeasure source = build_source(run.scenario.source_spec);
        KernelSpec k = run.scenario.kernel;
        k.epsilon = run.epsilon;
        EnergyContext ctx(k);
        auto chain = detail::prefix_chain(
            region, {std::max<int>(1, (int)region.size() / 4), (int)region.size()},
            run.scenario.seed + 7);
        chain.push_back(region);
        for (const Region& sub : chain) {
            SweepResult s = sweep(ctx, source, sub);
            if (!(s.swept_mass <= s.source_mass * (1.0 + 1e-9))) ok = false;
        }
    }
    report(6, "swept mass never exceeds the source mass", ok, t.seconds());
}

// 7. Byte-identical suite outputs across repeated runs.
void criterion_reproducibility() {
    Timer t;
    fs::path base = fs::temp_directory_path() / "potentia-acceptance";
    fs::remove_all(base);
    fs::create_directories(base);

    auto run_suite = [&](const std::string& tag) {
        std::string cmd = std::string(POTENTIA_CLI_PATH) + " suite --out " +
                          (base / tag).string() + " > " + (base / (tag + ".log")).string() + " 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    bool ok = run_suite("a") == 0 && run_suite("b") == 0;

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    };
    for (const std::string& name : builtin_scenario_names()) {
        std::string ra = slurp(base / "a" / name / "results.json");
        std::string rb = slurp(base / "b" / name / "results.json");
        if (ra.empty() || ra != rb) ok = false;
    }
    if (slurp(base / "a" / "suite_results.json") != slurp(base / "b" / "suite_results.json"))
        ok = false;

    report(7, "suite reruns are byte-identical", ok, t.seconds());
}

}  // namespace

int main() {
    criterion_oracle();
    criterion_kkt();
    criterion_identities();
    criterion_chains();
    criterion_continuum();
    criterion_mass_positivity();
    criterion_reproducibility();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
