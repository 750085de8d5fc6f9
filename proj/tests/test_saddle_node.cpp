#include <random>

#include "doctest.h"

#include "allee/bifurcation.hpp"
#include "allee/errors.hpp"
#include "oracles.hpp"

using namespace allee;

TEST_CASE("transversality values at the fold") {
    {
        const SaddleNodeReport r = saddle_node_check({1, 0.25, 1, 0.1});
        CHECK(r.t1 == doctest::Approx(-0.2).epsilon(1e-12));
        CHECK(r.t2 == doctest::Approx(-0.4).epsilon(1e-12));
        CHECK(r.point == State{0.5, 0});
        CHECK(r.v == Vec2{1, 0});
        CHECK(r.w[0] == doctest::Approx(0.2));
        CHECK(r.w[1] == doctest::Approx(-1));
        CHECK(r.jv_residual <= 1e-10);
        CHECK(r.jtw_residual <= 1e-10);
    }
    {
        const SaddleNodeReport r = saddle_node_check({2, 0.25, 0.5, 0.2});
        CHECK(r.t1 == doctest::Approx(-0.2).epsilon(1e-12));
        CHECK(r.t2 == doctest::Approx(-0.4).epsilon(1e-12));
    }
}

TEST_CASE("transversality closed forms at random points") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> Uq(0.1, 5), Us(0.1, 5), Um(0.05, 0.95);
    for (int k = 0; k < 100; ++k) {
        const ModelParams p{Uq(rng), 0.25, Us(rng), Um(rng)};
        const SaddleNodeReport r = saddle_node_check(p);
        CHECK(std::abs(r.t1 + 2 * p.s * p.m) <= 1e-10);
        CHECK(std::abs(r.t2 + 4 * p.s * p.m) <= 1e-10);
    }
}

TEST_CASE("second directional derivative matches finite differences") {
    const ModelParams p{2, 0.25, 0.5, 0.2};
    const SaddleNodeReport r = saddle_node_check(p);
    // D^2 f(v, v) with v = (1, 0) is twice the u^2 Taylor coefficient.
    const double fx = 2 * oracle::fd_coefficient(p, r.point, 0, 2, 0);
    const double fy = 2 * oracle::fd_coefficient(p, r.point, 1, 2, 0);
    CHECK(r.d2f_vv[0] == doctest::Approx(fx).epsilon(1e-8));
    CHECK(r.d2f_vv[1] == doctest::Approx(fy).epsilon(1e-8));
}

TEST_CASE("fold preconditions") {
    CHECK_THROWS_AS(saddle_node_check({1, 0.24, 1, 0.1}), DomainError);
    CHECK_THROWS_AS(saddle_node_check({1, 0.26, 1, 0.1}), DomainError);
}

TEST_CASE("boundary equilibrium counts across the fold") {
    const auto n = boundary_counts({1, 0.25, 1, 0.1}, {0.24, 0.25, 0.26});
    CHECK(n == std::vector<int>{2, 1, 0});
}
