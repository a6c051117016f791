#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "potentia/equilibrium.hpp"
#include "potentia/grids.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace potentia;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("single point: closed form") {
    EnergyContext ctx(KernelSpec{2.0, 3, 0.5});  // diagonal value D = 2
    Region region({{0, 0, 0}}, "one");
    auto eq = equilibrium_measure(ctx, region);
    CHECK_THAT(eq.capacity, WithinAbs(0.5, 1e-12));
    CHECK_THAT(eq.gamma.weights()[0], WithinAbs(0.5, 1e-12));
    CHECK_THAT(eq.min_potential_on_region, WithinAbs(1.0, 1e-12));
    CHECK_THAT(capacity_via_unit_mass(ctx, region), WithinAbs(0.5, 1e-12));
}

TEST_CASE("two symmetric points: 2x2 closed form") {
    // D = 2, k = (1.25)^{-1/2}; capacity 2/(D+k), equal weights 1/(D+k)
    EnergyContext ctx(KernelSpec{2.0, 3, 0.5});
    Region region({{0, 0, 0}, {1, 0, 0}}, "pair");
    auto eq = equilibrium_measure(ctx, region);
    CHECK_THAT(eq.capacity, WithinAbs(0.6909830056250527, 1e-12));
    CHECK_THAT(eq.gamma.weights()[0], WithinAbs(0.34549150281252633, 1e-12));
    CHECK_THAT(eq.gamma.weights()[1], WithinAbs(0.34549150281252633, 1e-12));
}

TEST_CASE("empty region has capacity zero") {
    EnergyContext ctx(KernelSpec{2.0, 3, 0.5});
    Region empty(std::vector<Point>{}, "empty");
    auto eq = equilibrium_measure(ctx, empty);
    CHECK(eq.capacity == 0.0);
    CHECK(eq.gamma.mass() == 0.0);
    CHECK(capacity_via_unit_mass(ctx, empty) == 0.0);
}

TEST_CASE("agrees with the inequality-constrained oracle") {
    std::mt19937_64 rng(67);
    EnergyContext ctx(KernelSpec{2.0, 3, 0.45});
    for (int trial = 0; trial < 15; ++trial) {
        int n = 2 + static_cast<int>(rng() % 8);
        Region region(generators::lattice_points(rng, n), "r");
        auto eq = equilibrium_measure(ctx, region);
        auto K = ctx.gram(region.points(), region.points());
        Eigen::VectorXd ref = oracles::enumerate_equilibrium(*K);
        Eigen::VectorXd d = eq.gamma.weights() - ref;
        CHECK(std::sqrt(d.dot((*K) * d)) < 1e-7);
    }
}

TEST_CASE("triple identity, potential bounds, and route agreement") {
    std::mt19937_64 rng(71);
    EnergyContext ctx(KernelSpec{2.0, 3, 0.45});
    for (int trial = 0; trial < 10; ++trial) {
        Region region(generators::lattice_points(rng, 12), "r");
        auto eq = equilibrium_measure(ctx, region);
        double tol = 1e-8 * eq.capacity;
        CHECK(std::abs(eq.capacity - eq.gamma.mass()) <= tol);
        CHECK(std::abs(eq.capacity - ctx.norm_squared(eq.gamma)) <= tol);
        CHECK(eq.min_potential_on_region >= 1.0 - 1e-8);
        CHECK(eq.max_potential_on_support <= 1.0 + 1e-8);
        CHECK_THAT(capacity_via_unit_mass(ctx, region), WithinRel(eq.capacity, 1e-6));
    }
}

TEST_CASE("capacity is monotone under region inclusion") {
    std::mt19937_64 rng(73);
    EnergyContext ctx(KernelSpec{2.0, 3, 0.45});
    auto pts = generators::lattice_points(rng, 14);
    Region q(pts, "q");
    Region b(std::vector<Point>(pts.begin(), pts.begin() + 6), "b");
    REQUIRE(region_subset(b, q));
    CHECK(capacity_via_unit_mass(ctx, b) <= capacity_via_unit_mass(ctx, q) + 1e-10);
}

TEST_CASE("sphere grid capacity approaches the classical value") {
    // Newtonian capacity of the radius-1 sphere is 1; coarse grid, loose tol.
    Region region(fibonacci_sphere(1.0, 400), "sphere400");
    double h = min_spacing(region.points());
    EnergyContext ctx(KernelSpec{2.0, 3, 0.5 * h});
    auto eq = equilibrium_measure(ctx, region);
    CHECK_THAT(eq.capacity, WithinRel(1.0, 0.08));
}

TEST_CASE("equilibrium exhaustion: constant chain and nested chain") {
    std::mt19937_64 rng(79);
    auto pts = generators::lattice_points(rng, 16);
    Region region(pts, "full");
    EnergyContext ctx(KernelSpec{2.0, 3, 0.45});
    PointSet probes({{4, 4, 4}, {-4, 2, 0}, {0, 0, 5}});

    auto same = equilibrium_exhaustion(ctx, region, {region, region, region}, probes);
    CHECK(same.report.pass);

    std::vector<Region> chain;
    for (int n : {4, 8, 12, 16})
        chain.emplace_back(std::vector<Point>(pts.begin(), pts.begin() + n),
                           "c" + std::to_string(n));
    auto nested = equilibrium_exhaustion(ctx, region, chain, probes);
    CHECK(nested.report.pass);
    for (std::size_t i = 0; i + 1 < nested.capacities.size(); ++i)
        CHECK(nested.capacities[i] <= nested.capacities[i + 1] + 1e-10);

    // nesting violation is rejected
    std::vector<Region> bad = {chain[2], chain[0]};
    CHECK_THROWS_AS(equilibrium_exhaustion(ctx, region, bad, probes), validation_error);
}
