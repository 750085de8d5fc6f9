#include <random>

#include "doctest.h"

#include "allee/classification.hpp"
#include "allee/dynamics.hpp"
#include "allee/errors.hpp"
#include "oracles.hpp"

using namespace allee;

namespace {

Equilibrium find(const ModelParams& p, Label l) {
    for (const auto& e : all_equilibria(p))
        if (e.has_label(l)) return e;
    FAIL("equilibrium " << label_name(l) << " not found");
    return {};
}

}  // namespace

TEST_CASE("kinds at worked examples") {
    {
        const ModelParams p{1, 0.21, 1, 0.1};
        const Classification c = classify(p, find(p, Label::E2));
        CHECK(c.kind == Kind::StableNode);
        CHECK(c.eigen.lambda1.real() == doctest::Approx(-0.1).epsilon(1e-12));
        CHECK(c.eigen.lambda2.real() == doctest::Approx(-0.4).epsilon(1e-12));
    }
    {
        const ModelParams p{1, 0.12, 0.5, 0.1};
        const Classification c = classify(p, find(p, Label::E8));
        CHECK(c.kind == Kind::WeakCenter);
        CHECK(std::abs(c.eigen.lambda1.real()) <= 1e-12);
        // det = s (m - x8)(1 - 2 x8 - 2 q x8) = 0.5 * (-0.2) * (-0.2) = 0.02.
        CHECK(c.eigen.det == doctest::Approx(0.02).epsilon(1e-12));
        CHECK(std::abs(c.eigen.lambda1.imag() - std::sqrt(0.02)) <= 1e-10);
        CHECK(std::abs(c.eigen.lambda2.imag() + std::sqrt(0.02)) <= 1e-10);
    }
    {
        const ModelParams p{1, 0.125, 5.0 / 3, 0.1};
        const Classification c = classify(p, find(p, Label::E7));
        CHECK(c.kind == Kind::CuspCodim2);
        REQUIRE(c.evidence.g20);
        REQUIRE(c.evidence.g11);
        CHECK(*c.evidence.g20 == doctest::Approx(-0.5).epsilon(1e-10));
        // Re-derived: g11 = b11 + 2 b02 - a11 + 2 e20 = -(s + q + 2) at the cusp.
        CHECK(*c.evidence.g11 == doctest::Approx(-14.0 / 3).epsilon(1e-10));
    }
    {
        const ModelParams p{1, 0.14, 1, 0.1};
        const Classification c = classify(p, find(p, Label::E6));
        CHECK(c.kind == Kind::UnstableNode);
        CHECK(c.eigen.lambda1.real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(c.eigen.lambda2.real() == doctest::Approx(0.05).epsilon(1e-12));
    }
}

TEST_CASE("saddle-node coefficient") {
    {
        const ModelParams p{1, 0.25, 1, 0.1};
        const Equilibrium e = find(p, Label::E1);
        CHECK(centre_manifold_coefficient(p, e) == doctest::Approx(-1).epsilon(1e-12));
        const Classification c = classify(p, e);
        CHECK(c.kind == Kind::SaddleNode);
        REQUIRE(c.evidence.c20);
        CHECK(std::abs(*c.evidence.c20 + 1) <= 1e-10);
    }
    {
        // Double diagonal point away from the cusp value of s.
        const ModelParams p{1, 0.125, 1, 0.1};
        const Equilibrium e = find(p, Label::E7);
        const double c20 = centre_manifold_coefficient(p, e);
        CHECK(std::abs(c20) > 1e-3);
        CHECK(classify(p, e).kind == Kind::SaddleNode);
    }
    {
        const ModelParams p{1, 0.2025, 1, 0.1};
        const Equilibrium e = find(p, Label::E4);
        CHECK(std::abs(centre_manifold_coefficient(p, e)) > 1e-3);
        CHECK(classify(p, e).kind == Kind::SaddleNode);
    }
    // Both eigenvalues at zero: the single-zero path refuses.
    const ModelParams cusp{1, 0.125, 5.0 / 3, 0.1};
    CHECK_THROWS_AS(centre_manifold_coefficient(cusp, find(cusp, Label::E7)), DegenerateError);
}

TEST_CASE("saddle-node coefficient against a centre-manifold oracle") {
    // Along the zero-eigenvector v, the centre-manifold reduction gives
    // du/dt = c20 u^2 + ..., with u measured in units of v. A quad-precision
    // second difference of w1^T F(e + u v) / (w1^T v) recovers c20 when the
    // curvature of the manifold is removed by projecting with the left
    // eigenvector of the zero eigenvalue.
    for (const ModelParams& p : {ModelParams{1, 0.25, 1, 0.1}, ModelParams{1, 0.125, 1, 0.1}, ModelParams{1, 0.2025, 1, 0.1},
                                 ModelParams{2, 0.25, 0.5, 0.2}}) {
        Equilibrium e;
        for (const auto& x : all_equilibria(p))
            if (x.multiplicity == 2) e = x;
        const Mat2 J = jet3(p, e.point).jacobian();
        // Right null vector with unit leading component, left null vector.
        REQUIRE(std::abs(J.b) > 1e-12);
        const Vec2 v{1, -J.a / J.b};
        const Vec2 w = std::abs(J.a) > 1e-14 || std::abs(J.c) > 1e-14 ? Vec2{-J.c, J.a} : Vec2{-J.d, J.b};
        const double wv = w[0] * v[0] + w[1] * v[1];
        const double h = 1e-4;
        auto g = [&](double u) {
            const auto f = field_expression<oracle::quad>(p.q, p.h, p.s, p.m, oracle::quad(e.point.x) + u * v[0],
                                                         oracle::quad(e.point.y) + u * v[1]);
            return (oracle::quad(w[0]) * f[0] + oracle::quad(w[1]) * f[1]) / oracle::quad(wv);
        };
        const double c20 = static_cast<double>((g(h) - 2 * g(0) + g(-h)) / (2 * oracle::quad(h) * h));
        INFO(format_params(p));
        CHECK(centre_manifold_coefficient(p, e) == doctest::Approx(c20).epsilon(1e-6));
    }
}

TEST_CASE("cusp coefficients refuse a vanishing a01") {
    Jet3 j;
    j.at = {0.25, 0.25};
    j.a(1, 0) = 0;
    j.a(0, 1) = 0;
    j.b(1, 0) = 1;
    j.b(0, 1) = 0;
    CHECK_THROWS_AS(cusp_coefficients(j), DegenerateError);
}

TEST_CASE("hyperbolic kinds agree with eigenvalues of the finite-difference Jacobian") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> Uq(0.1, 5), Uh(0.005, 0.5), Us(0.1, 5), Um(0.05, 0.95);
    int compared = 0, attempts = 0;
    while (compared < 1000 && attempts < 100000) {
        ++attempts;
        const ModelParams p{Uq(rng), Uh(rng), Us(rng), Um(rng)};
        for (const auto& e : all_equilibria(p)) {
            Mat2 J;
            J.a = oracle::fd_coefficient(p, e.point, 0, 1, 0);
            J.b = oracle::fd_coefficient(p, e.point, 0, 0, 1);
            J.c = oracle::fd_coefficient(p, e.point, 1, 1, 0);
            J.d = oracle::fd_coefficient(p, e.point, 1, 0, 1);
            const auto expected = oracle::hyperbolic_kind(J, 1e-6);
            if (!expected) continue;
            const Classification c = classify(p, e);
            if (c.borderline) continue;
            // A node/focus boundary within rounding is not a disagreement.
            const double disc = c.eigen.discriminant;
            if (std::abs(disc) <= 1e-8) continue;
            INFO(format_params(p) << " at " << e.name());
            CHECK(kind_code(c.kind) == kind_code(*expected));
            ++compared;
        }
    }
    CHECK(compared >= 1000);
}

TEST_CASE("theorem tables hold on sampled hypothesis regions") {
    std::uint64_t seed = 100;
    for (const auto& tc : oracle::theorem_cases()) {
        const auto r = oracle::run_case(tc, 100, seed++);
        INFO(tc.name << ": " << r.first_failure);
        CHECK(r.sampled == 100);
        CHECK(r.passed == r.sampled);
    }
}

TEST_CASE("lower diagonal point is never a stable weak focus candidate") {
    // For m > x9 the trace at E9 is positive for every s > 0, so s3 < 0.
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> Uq(0.1, 5), Uh(0.001, 0.3), Um(0.01, 0.95);
    int seen = 0;
    for (int k = 0; k < 20000; ++k) {
        const ModelParams p{Uq(rng), Uh(rng), 1, Um(rng)};
        const Thresholds t = thresholds(p);
        if (!(t.delta2 > 0) || !t.D) continue;
        const double x9 = (t.C - *t.D) / 2;
        if (!(p.m > x9) || !t.s3) continue;
        ++seen;
        CHECK(*t.s3 < 0);
    }
    CHECK(seen > 100);
}

TEST_CASE("saddle-node signature: attraction on one side, repulsion on the other") {
    for (const ModelParams& p : {ModelParams{1, 0.25, 1, 0.1}, ModelParams{1, 0.2025, 1, 0.1}, ModelParams{1, 0.125, 1, 0.1}}) {
        Equilibrium e;
        for (const auto& x : all_equilibria(p))
            if (x.multiplicity == 2) e = x;
        REQUIRE(classify(p, e).kind == Kind::SaddleNode);
        const Mat2 J = jet3(p, e.point).jacobian();
        REQUIRE(std::abs(J.b) > 1e-12);
        const Vec2 v{1, -J.a / J.b};
        const Vec2 w = std::abs(J.a) > 1e-14 || std::abs(J.c) > 1e-14 ? Vec2{-J.c, J.a} : Vec2{-J.d, J.b};
        const double wv = w[0] * v[0] + w[1] * v[1];
        const double eps = 1e-3;
        IntegratorConfig cfg;
        cfg.max_time = 50;
        cfg.record = false;
        cfg.stop_on_convergence = false;
        // Run in the time direction in which the transverse mode contracts.
        cfg.direction = J.trace() > 0 ? -1 : +1;
        // Centre coordinate (projection on the zero eigendirection) shrinks on one side only.
        auto moved_closer = [&](double sign) {
            const State z0{e.point.x + sign * eps * v[0], e.point.y + sign * eps * v[1]};
            const Trajectory tr = integrate(p, z0, cfg);
            const double xi = (w[0] * (tr.final_state.x - e.point.x) + w[1] * (tr.final_state.y - e.point.y)) / wv;
            return std::abs(xi) < eps;
        };
        INFO(format_params(p));
        CHECK(moved_closer(+1) != moved_closer(-1));
    }
}

TEST_CASE("kind codes parse back") {
    for (Kind k : {Kind::StableNode, Kind::UnstableNode, Kind::StableFocus, Kind::UnstableFocus, Kind::Saddle,
                   Kind::SaddleNode, Kind::WeakCenter, Kind::CuspCodim2, Kind::Degenerate})
        CHECK(parse_kind_code(kind_code(k)) == k);
    CHECK(kind_code(Kind::SaddleNode) == "SNODE");
    CHECK_THROWS_AS(parse_kind_code("XX"), DomainError);
}
