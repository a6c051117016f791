#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "potentia/energy.hpp"
#include "potentia/equilibrium.hpp"
#include "potentia/projection.hpp"
#include "potentia/report.hpp"
#include "potentia/types.hpp"

namespace potentia {

/// Sweep mu onto the region: the energy-norm projection onto the cone of
/// positive measures supported by the region points.
inline SweepResult sweep(const EnergyContext& ctx, const DiscreteMeasure& mu, const Region& region,
                         double tol = 1e-9, int max_iterations = 0) {
    ProjectionProblem p;
    p.source = mu;
    p.region = region;
    p.tolerance = tol;
    p.max_iterations = max_iterations;
    ProjectionOutput out = project(ctx, p);

    SweepResult res;
    res.swept = DiscreteMeasure(region.points(), out.weights);
    res.energy_distance = ctx.energy_distance(mu, res.swept);
    res.kkt_stationarity = out.certificate.stationarity;
    res.kkt_dual_feasibility = out.certificate.dual_feasibility;
    res.kkt_complementarity = out.certificate.complementarity;
    res.lambda = out.certificate.lambda;
    res.source_mass = mu.mass();
    res.swept_mass = res.swept.mass();
    res.mass_cap_active = out.certificate.cap_active;
    res.iterations = out.certificate.iterations;
    return res;
}

/// Sweep under the truncated-cone formulation: total mass capped at
/// q_factor * mu(X). For Riesz kernels the cap must come out slack, so the
/// result is checked against the uncapped sweep.
inline SweepResult sweep_truncated(const EnergyContext& ctx, const DiscreteMeasure& mu,
                                   const Region& region, double q_factor, double tol = 1e-9) {
    if (!(q_factor >= 1.0))
        throw validation_error("sweep_truncated: q_factor must be >= 1");
    ProjectionProblem p;
    p.source = mu;
    p.region = region;
    p.tolerance = tol;
    p.mass_cap = q_factor * mu.mass();
    ProjectionOutput out = project(ctx, p);

    SweepResult res;
    res.swept = DiscreteMeasure(region.points(), out.weights);
    res.energy_distance = ctx.energy_distance(mu, res.swept);
    res.kkt_stationarity = out.certificate.stationarity;
    res.kkt_dual_feasibility = out.certificate.dual_feasibility;
    res.kkt_complementarity = out.certificate.complementarity;
    res.lambda = out.certificate.lambda;
    res.source_mass = mu.mass();
    res.swept_mass = res.swept.mass();
    res.mass_cap_active = out.certificate.cap_active;
    res.iterations = out.certificate.iterations;
    return res;
}

/// kappa(mu^A) <= kappa(mu) everywhere: the domination side of the sweep.
inline TheoremReport check_domination(const EnergyContext& ctx, const DiscreteMeasure& mu,
                                      const SweepResult& result, const PointSet& probes,
                                      double tol_dom) {
    TheoremReport rep;
    rep.theorem_id = "domination";
    rep.tolerance = tol_dom;
    Eigen::VectorXd pot_src = ctx.potential(mu, probes);
    Eigen::VectorXd pot_swp = ctx.potential(result.swept, probes);
    Eigen::Index worst = -1;
    for (Eigen::Index j = 0; j < pot_src.size(); ++j) {
        double excess = pot_swp[j] - pot_src[j];
        if (excess > rep.worst_residual) worst = j;
        rep.worst_residual = std::max(rep.worst_residual, excess);
    }
    rep.note("probe_count", static_cast<double>(probes.size()));
    rep.note("worst_probe_index", static_cast<double>(worst));
    return rep.finalize();
}

/// Mass positivity mu^A(X) <= mu(X), and the mass formula
/// mu^A(X) = integral of the equilibrium potential against mu.
inline TheoremReport check_mass(const EnergyContext& ctx, const DiscreteMeasure& mu,
                                const SweepResult& result, const EquilibriumResult& gamma,
                                double tol_positivity = 1e-9, double tol_mass = 2e-2) {
    TheoremReport rep;
    rep.theorem_id = "mass-formula";
    rep.tolerance = 1.0;  // sub-residuals below are normalized by their own budgets
    const double src = result.source_mass;
    const double scale = src > 0.0 ? src : 1.0;

    double positivity = (result.swept_mass - src) / scale;
    rep.record("positivity/tol", positivity / tol_positivity);

    double formula = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
        formula += mu.weights()[static_cast<Eigen::Index>(i)] *
                   ctx.potential_at(gamma.gamma, mu.atoms().point(i));
    double formula_residual = std::abs(result.swept_mass - formula) / scale;
    rep.record("formula/tol", formula_residual / tol_mass);
    rep.note("formula_value", formula);
    rep.note("swept_mass", result.swept_mass);
    return rep.finalize();
}

/// kappa(mu^A) <= kappa(mu^Q) at the probes whenever A is a subset of Q.
inline TheoremReport check_monotonicity(const EnergyContext& ctx, const DiscreteMeasure& mu,
                                        const Region& a, const Region& q, const PointSet& probes,
                                        double tol = 1e-7, double solver_tol = 1e-9) {
    if (!region_subset(a, q))
        throw validation_error("check_monotonicity: first region must be contained in the second");
    TheoremReport rep;
    rep.theorem_id = "monotonicity";
    rep.tolerance = tol;
    SweepResult sa = sweep(ctx, mu, a, solver_tol);
    SweepResult sq = sweep(ctx, mu, q, solver_tol);
    Eigen::VectorXd pa = ctx.potential(sa.swept, probes);
    Eigen::VectorXd pq = ctx.potential(sq.swept, probes);
    for (Eigen::Index j = 0; j < pa.size(); ++j)
        rep.worst_residual = std::max(rep.worst_residual, pa[j] - pq[j]);
    return rep.finalize();
}

/// Two-route identity mu^A = (mu^Q)^A for A inside Q, measured in energy norm.
inline TheoremReport check_sweep_with_rest(const EnergyContext& ctx, const DiscreteMeasure& mu,
                                           const Region& a, const Region& q, double tol_rest = 0.0,
                                           double solver_tol = 1e-9) {
    if (!region_subset(a, q))
        throw validation_error("check_sweep_with_rest: first region must be contained in the second");
    TheoremReport rep;
    rep.theorem_id = "sweep-with-rest";
    rep.tolerance = tol_rest > 0.0 ? tol_rest
                                   : 1e-6 * std::sqrt(ctx.norm_squared(mu));
    SweepResult direct = sweep(ctx, mu, a, solver_tol);
    SweepResult via_q = sweep(ctx, mu, q, solver_tol);
    SweepResult rest = sweep(ctx, via_q.swept, a, solver_tol);
    rep.worst_residual = ctx.energy_distance(direct.swept, rest.swept);
    rep.note("direct_mass", direct.swept_mass);
    rep.note("two_route_mass", rest.swept_mass);
    return rep.finalize();
}

struct ExhaustionOutcome {
    std::vector<SweepResult> sweeps;  // one per chain element, then the full region last
    TheoremReport report;
};

/// Convergence under exhaustion K up to A: energy distances shrink, probe
/// potentials grow, and successive iterates satisfy the strong-Cauchy bound
/// ||mu^Ki - mu^Kj||^2 <= ||mu - mu^Ki||^2 - ||mu - mu^Kj||^2 for i < j.
inline ExhaustionOutcome exhaustion_experiment(const EnergyContext& ctx, const DiscreteMeasure& mu,
                                               const Region& region,
                                               const std::vector<Region>& chain,
                                               const PointSet& probes, double tol = 1e-7,
                                               double solver_tol = 1e-9) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!region_subset(chain[i], chain[i + 1]))
            throw validation_error("exhaustion_experiment: chain element " + std::to_string(i) +
                                   " is not contained in its successor");
    if (chain.empty() || !region_subset(chain.back(), region) ||
        !region_subset(region, chain.back()))
        throw validation_error("exhaustion_experiment: chain must terminate at the region");

    ExhaustionOutcome out;
    out.report.theorem_id = "exhaustion";
    out.report.tolerance = tol;

    SweepResult full = sweep(ctx, mu, region, solver_tol);
    std::vector<double> dist_to_full;
    std::vector<double> dist_to_mu2;
    std::vector<Eigen::VectorXd> probe_pots;
    for (const Region& k : chain) {
        SweepResult s = sweep(ctx, mu, k, solver_tol);
        dist_to_full.push_back(ctx.energy_distance(s.swept, full.swept));
        dist_to_mu2.push_back(ctx.distance_squared(mu, s.swept));
        probe_pots.push_back(ctx.potential(s.swept, probes));
        out.sweeps.push_back(std::move(s));
    }
    // (a) distances to the limit nonincreasing, final below tolerance
    for (std::size_t i = 0; i + 1 < dist_to_full.size(); ++i)
        out.report.record("distance-monotone[" + std::to_string(i) + "]",
                          dist_to_full[i + 1] - dist_to_full[i]);
    out.report.record("final-distance", dist_to_full.back());
    // (b) probe potentials nondecreasing
    for (std::size_t i = 0; i + 1 < probe_pots.size(); ++i)
        out.report.record("potential-monotone[" + std::to_string(i) + "]",
                          (probe_pots[i] - probe_pots[i + 1]).maxCoeff());
    // (c) strong-Cauchy inequality between every pair
    for (std::size_t i = 0; i < out.sweeps.size(); ++i)
        for (std::size_t j = i + 1; j < out.sweeps.size(); ++j) {
            double lhs = ctx.distance_squared(out.sweeps[i].swept, out.sweeps[j].swept);
            double rhs = dist_to_mu2[i] - dist_to_mu2[j];
            out.report.record("cauchy[" + std::to_string(i) + "," + std::to_string(j) + "]",
                              lhs - rhs);
        }
    out.sweeps.push_back(std::move(full));
    out.report.finalize();
    return out;
}

/// Convergence for a decreasing chain of regions: probe potentials shrink and
/// the final sweep matches the direct sweep onto the intersection.
inline ExhaustionOutcome decreasing_experiment(const EnergyContext& ctx, const DiscreteMeasure& mu,
                                               const std::vector<Region>& chain,
                                               const PointSet& probes, double tol = 1e-7,
                                               double solver_tol = 1e-9) {
    if (chain.empty())
        throw validation_error("decreasing_experiment: empty chain");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!region_subset(chain[i + 1], chain[i]))
            throw validation_error("decreasing_experiment: chain element " + std::to_string(i + 1) +
                                   " is not contained in its predecessor");

    ExhaustionOutcome out;
    out.report.theorem_id = "decreasing-intersection";
    out.report.tolerance = tol;

    std::vector<Eigen::VectorXd> probe_pots;
    for (const Region& a : chain) {
        SweepResult s = sweep(ctx, mu, a, solver_tol);
        probe_pots.push_back(ctx.potential(s.swept, probes));
        out.sweeps.push_back(std::move(s));
    }
    for (std::size_t i = 0; i + 1 < probe_pots.size(); ++i)
        out.report.record("potential-monotone[" + std::to_string(i) + "]",
                          (probe_pots[i + 1] - probe_pots[i]).maxCoeff());

    // Fresh solve of the intersection (= the last element, the chain being
    // decreasing) as the reference limit.
    Region intersection(chain.back().points().points(), chain.back().label() + "#cap");
    SweepResult limit = sweep(ctx, mu, intersection, solver_tol);
    out.report.record("final-distance",
                      ctx.energy_distance(out.sweeps.back().swept, limit.swept));
    out.sweeps.push_back(std::move(limit));
    out.report.finalize();
    return out;
}

}  // namespace potentia
