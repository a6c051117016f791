#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "potentia/energy.hpp"
#include "potentia/nnls.hpp"
#include "potentia/report.hpp"
#include "potentia/types.hpp"

namespace potentia {

namespace detail {

// Minimizer of w'Kw over the simplex {w >= 0, sum(w) = 1} and its energy.
inline std::pair<Eigen::VectorXd, double> unit_mass_minimizer(const EnergyContext& ctx,
                                                              const Region& region,
                                                              double tol, int max_iter = 0) {
    auto K = ctx.gram(region.points(), region.points());
    NnlsOptions opts;
    opts.tolerance = tol;
    opts.max_iterations = max_iter;
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(K->rows());
    NnlsSolution sol = solve_nnls_core(*K, zero, MassConstraint::exactly, 1.0, opts);
    double energy = sol.w.dot(K->selfadjointView<Eigen::Lower>() * sol.w);
    return {sol.w, energy};
}

}  // namespace detail

/// Inner capacity via the unit-mass formulation: reciprocal of the minimal
/// energy among probability measures on the region.
inline double capacity_via_unit_mass(const EnergyContext& ctx, const Region& region,
                                     double tol = 1e-9) {
    if (region.empty()) return 0.0;
    auto [w, energy] = detail::unit_mass_minimizer(ctx, region, tol);
    return 1.0 / energy;
}

/// Equilibrium measure gamma of the region: the unit-mass energy minimizer
/// rescaled by the capacity, so that its potential is ~1 on its support and
/// >= 1 everywhere on the region.
inline EquilibriumResult equilibrium_measure(const EnergyContext& ctx, const Region& region,
                                             double tol = 1e-9) {
    EquilibriumResult res;
    if (region.empty()) {
        res.gamma = DiscreteMeasure(PointSet(), Eigen::VectorXd());
        res.capacity = 0.0;
        return res;
    }
    auto [nu, energy] = detail::unit_mass_minimizer(ctx, region, tol);
    Eigen::VectorXd gw = nu / energy;
    res.gamma = DiscreteMeasure(region.points(), gw);
    res.capacity = res.gamma.mass();

    auto K = ctx.gram(region.points(), region.points());
    Eigen::VectorXd pot = K->selfadjointView<Eigen::Lower>() * gw;
    res.min_potential_on_region = pot.minCoeff();
    res.max_potential_on_support = 0.0;
    for (Eigen::Index i = 0; i < gw.size(); ++i)
        if (gw[i] > 0.0)
            res.max_potential_on_support = std::max(res.max_potential_on_support, pot[i]);
    return res;
}

struct EquilibriumExhaustion {
    std::vector<double> capacities;                 // per chain element
    std::vector<std::vector<double>> potentials;    // chain x probes
    std::vector<double> full_potentials;            // full region, per probe
    TheoremReport report;
};

/// Potentials of successive equilibrium measures along a nested chain of
/// subregions, checked to increase toward the full-region equilibrium
/// potential at the probes.
inline EquilibriumExhaustion equilibrium_exhaustion(const EnergyContext& ctx, const Region& region,
                                                    const std::vector<Region>& chain,
                                                    const PointSet& probes, double tol = 1e-7,
                                                    double solver_tol = 1e-9) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!region_subset(chain[i], chain[i + 1]))
            throw validation_error("equilibrium_exhaustion: chain element " + std::to_string(i) +
                                   " is not contained in its successor");
    if (!chain.empty() && !region_subset(chain.back(), region))
        throw validation_error("equilibrium_exhaustion: chain is not contained in the region");

    EquilibriumExhaustion out;
    out.report.theorem_id = "equilibrium-potential-exhaustion";
    out.report.tolerance = tol;

    EquilibriumResult full = equilibrium_measure(ctx, region, solver_tol);
    Eigen::VectorXd full_pot = ctx.potential(full.gamma, probes);
    out.full_potentials.assign(full_pot.data(), full_pot.data() + full_pot.size());

    std::vector<double> prev;
    for (const Region& sub : chain) {
        EquilibriumResult eq = equilibrium_measure(ctx, sub, solver_tol);
        out.capacities.push_back(eq.capacity);
        Eigen::VectorXd pot = ctx.potential(eq.gamma, probes);
        std::vector<double> row(pot.data(), pot.data() + pot.size());
        if (!prev.empty())
            for (std::size_t j = 0; j < row.size(); ++j)
                out.report.record("monotone[" + std::to_string(j) + "]", prev[j] - row[j]);
        prev = row;
        out.potentials.push_back(std::move(row));
    }
    if (!out.capacities.empty()) {
        for (std::size_t i = 0; i + 1 < out.capacities.size(); ++i)
            out.report.record("capacity-monotone[" + std::to_string(i) + "]",
                              out.capacities[i] - out.capacities[i + 1]);
        // When the chain terminates at the full region, potentials must meet.
        if (region_subset(region, chain.back()))
            for (std::size_t j = 0; j < prev.size(); ++j)
                out.report.record("final-match[" + std::to_string(j) + "]",
                                  std::abs(prev[j] - out.full_potentials[j]));
    }
    out.report.finalize();
    return out;
}

}  // namespace potentia
