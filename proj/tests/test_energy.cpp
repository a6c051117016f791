#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "potentia/energy.hpp"
#include "support/generators.hpp"

using namespace potentia;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("potential closed forms") {
    EnergyContext ctx(KernelSpec{2.0, 3, 0.0});
    auto unit = make_measure({{0, 0, 0}}, {1.0});
    PointSet probe({{1, 0, 0}});
    Eigen::VectorXd p = ctx.potential(unit, probe);
    CHECK(p[0] == 1.0);

    auto zero = make_measure({{0, 0, 0}}, {0.0});
    CHECK(ctx.potential(zero, probe)[0] == 0.0);

    auto pair = make_measure({{1, 0, 0}, {-1, 0, 0}}, {0.5, 0.5});
    PointSet origin({{0, 0, 0}});
    CHECK_THAT(ctx.potential(pair, origin)[0], WithinAbs(1.0, 1e-15));
}

TEST_CASE("mutual energy closed forms") {
    EnergyContext ctx(KernelSpec{2.0, 3, 0.0});
    auto a = make_measure({{0, 0, 0}}, {1.0});
    auto b = make_measure({{1, 0, 0}}, {1.0});
    CHECK(ctx.mutual_energy(a, b) == 1.0);
    CHECK(ctx.mutual_energy(make_measure({{0, 0, 0}}, {0.0}), b) == 0.0);

    EnergyContext smoothed(KernelSpec{2.0, 3, 0.5});
    CHECK_THAT(smoothed.norm_squared(a), WithinAbs(2.0, 1e-15));

    // coincident supports with eps = 0 have no finite energy
    CHECK_THROWS_AS(ctx.norm_squared(a), numeric_error);
}

TEST_CASE("energy distance closed forms") {
    EnergyContext ctx(KernelSpec{2.0, 3, 0.5});
    auto a = make_measure({{0, 0, 0}}, {1.0});
    auto b = make_measure({{1, 0, 0}}, {1.0});
    CHECK(ctx.energy_distance(a, a) == 0.0);
    CHECK_THAT(ctx.energy_distance(a, make_measure({{5, 5, 5}}, {0.0})),
               WithinAbs(std::sqrt(2.0), 1e-15));
    // ||d_a - d_b||^2 = 2*2.0 - 2*(1.25)^{-1/2}
    CHECK_THAT(ctx.distance_squared(a, b), WithinAbs(2.2111456180001685, 1e-14));
}

TEST_CASE("bilinearity of the energy form") {
    std::mt19937_64 rng(21);
    EnergyContext ctx(KernelSpec{2.0, 3, 0.35});
    for (int trial = 0; trial < 10; ++trial) {
        auto m1 = generators::random_measure(rng, 5);
        auto m2 = generators::random_measure(rng, 4);
        auto nu = generators::random_measure(rng, 6);
        double a = 0.3, b = 1.7;
        // a*m1 + b*m2 materialized through make_measure
        std::vector<Point> pts = m1.atoms().points();
        std::vector<double> w;
        for (Eigen::Index i = 0; i < m1.weights().size(); ++i) w.push_back(a * m1.weights()[i]);
        for (std::size_t i = 0; i < m2.size(); ++i) {
            pts.push_back(m2.atoms().point(i));
            w.push_back(b * m2.weights()[static_cast<Eigen::Index>(i)]);
        }
        auto combo = make_measure(pts, w);
        double lhs = ctx.mutual_energy(combo, nu);
        double rhs = a * ctx.mutual_energy(m1, nu) + b * ctx.mutual_energy(m2, nu);
        CHECK_THAT(lhs, WithinRel(rhs, 1e-10));
    }
}

TEST_CASE("Cauchy-Schwarz and strict positivity") {
    std::mt19937_64 rng(23);
    EnergyContext ctx(KernelSpec{1.3, 3, 0.4});
    for (int trial = 0; trial < 20; ++trial) {
        auto mu = generators::random_measure(rng, 1 + static_cast<int>(rng() % 30));
        auto nu = generators::random_measure(rng, 1 + static_cast<int>(rng() % 30));
        double mn = ctx.mutual_energy(mu, nu);
        CHECK(mn * mn <= ctx.norm_squared(mu) * ctx.norm_squared(nu) + 1e-10);
        CHECK(ctx.norm_squared(mu) > 0.0);
    }
}

TEST_CASE("gram blocks are cached per point-set identity") {
    EnergyContext ctx(KernelSpec{2.0, 3, 0.5});
    PointSet pts({{0, 0, 0}, {1, 0, 0}});
    auto b1 = ctx.gram(pts, pts);
    auto b2 = ctx.gram(pts, pts);
    CHECK(b1.get() == b2.get());
}
