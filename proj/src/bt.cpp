#include <algorithm>
#include <cmath>
#include <random>

#include "allee/bifurcation.hpp"
#include "allee/parallel.hpp"
#include "allee/poly.hpp"

namespace allee {

namespace {

const char* const kStageNames[] = {"shifted", "linear", "near_identity", "time_scaled",
                                   "sheared", "scaled", "translated",    "normal_form"};
constexpr int kStages = 8;

// Every constant of the reduction to dv/dt = l00 + l01 v + u^2 + uv.
struct Chain {
    double q = 0, m = 0, h3 = 0, s1 = 0, x7 = 0, eta1 = 0, eta2 = 0;
    ModelParams perturbed;
    Jet3 jet;
    double a00, a10, a01, a20, a11, b10, b01, b20, b11, b02;
    double c00, c20, c11, d00, d10, d01, d20, d11, d02;
    double e00, e10, e01, e20, e11, e02;
    double f00, f10, f01, f20, f11;
    double sf, rf;  // sign(f20), sqrt|f20|
    double g00, g10, g01, g11;
    double shift;  // u6 = u5 + shift
    double h00, h01, h11;
    double alpha, beta, gamma;  // u7 = alpha u6, v7 = beta v6, t2 = gamma t1
    double l00, l01;
};

void check_centre(double q, double m) {
    if (!(q > 0) || !std::isfinite(q)) throw DomainError("q must be positive");
    if (!(m > 0 && m < 1)) throw DomainError("m must lie in (0, 1)");
    const double h3 = 1 / (4 * (q + 1));
    if (std::abs(m - 2 * h3) <= 1e-12) throw DomainError("m = 2 h3: the cusp condition degenerates");
    const double s1 = (4 * h3 - 1) / (2 * (m - 2 * h3));
    if (!(s1 > 0)) throw DomainError("organizing centre requires s1 > 0 (m < 2 h3)");
}

Chain build_chain(double q, double m, double eta1, double eta2) {
    check_centre(q, m);
    Chain c;
    c.q = q;
    c.m = m;
    c.eta1 = eta1;
    c.eta2 = eta2;
    c.h3 = 1 / (4 * (q + 1));
    c.s1 = (4 * c.h3 - 1) / (2 * (m - 2 * c.h3));
    c.x7 = 2 * c.h3;
    c.perturbed = {q, c.h3 + eta1, c.s1 + eta2, m};
    c.perturbed.validate();
    c.jet = jet3(c.perturbed, {c.x7, c.x7});
    const Jet3& j = c.jet;
    c.a00 = j.a(0, 0);
    c.a10 = j.a(1, 0);
    c.a01 = j.a(0, 1);
    c.a20 = j.a(2, 0);
    c.a11 = j.a(1, 1);
    c.b10 = j.b(1, 0);
    c.b01 = j.b(0, 1);
    c.b20 = j.b(2, 0);
    c.b11 = j.b(1, 1);
    c.b02 = j.b(0, 2);

    const double a00 = c.a00, a10 = c.a10, a01 = c.a01, a20 = c.a20, a11 = c.a11;
    const double b10 = c.b10, b01 = c.b01, b20 = c.b20, b11 = c.b11, b02 = c.b02;
    c.c00 = a00;
    c.c20 = a20 - a11 * a10 / a01;
    c.c11 = a11 / a01;
    c.d00 = a00 * a10;
    c.d10 = a01 * b10 - a10 * b01;
    c.d01 = a10 + b01;
    c.d20 = a10 * a20 + a01 * b20 - a10 * b11 - a10 * a10 * a11 / a01 + a10 * a10 * b02 / a01;
    c.d11 = b11 + a10 * a11 / a01 - 2 * a10 * b02 / a01;
    c.d02 = b02 / a01;

    const double C00 = c.c00, C20 = c.c20, C11 = c.c11;
    const double D00 = c.d00, D10 = c.d10, D01 = c.d01, D20 = c.d20, D11 = c.d11, D02 = c.d02;
    c.e00 = D00 - C00 * D01 + C00 * C00 * D02;
    c.e10 = D10 + C11 * D00 - C00 * D11 - C00 * C00 * C11 * D02;
    c.e01 = D01 - C00 * C11 - 2 * C00 * D02;
    c.e20 = D20 + C11 * D10 - C20 * D01 + 2 * C00 * C20 * D02 + C00 * C00 * C11 * C11 * D02;
    c.e11 = D11 + 2 * C20 + C00 * C11 * C11 + 2 * C00 * C11 * D02;
    c.e02 = D02 + C11;

    c.f00 = c.e00;
    c.f10 = c.e10 - 2 * c.e00 * c.e02;
    c.f01 = c.e01;
    c.f20 = c.e20 - 2 * c.e02 * c.e10 + c.e00 * c.e02 * c.e02;
    c.f11 = c.e11 - c.e01 * c.e02;
    if (std::abs(c.f20) <= 1e-9 * std::max({1.0, std::abs(c.e20), std::abs(c.e10)}))
        throw DegenerateError("f20 vanishes; the chain cannot be scaled");

    c.sf = c.f20 < 0 ? -1.0 : 1.0;
    c.rf = std::sqrt(std::abs(c.f20));
    c.g00 = c.f00 / std::abs(c.f20);
    c.g10 = c.f10 / std::abs(c.f20);
    c.g01 = c.f01 / c.rf;
    c.g11 = c.f11 / c.rf;

    c.shift = c.g10 / (2 * c.sf);
    c.h00 = c.g00 - c.g10 * c.g10 / (4 * c.sf);
    c.h01 = c.g01 - c.g11 * c.g10 / (2 * c.sf);
    c.h11 = c.g11;
    if (std::abs(c.h11) <= 1e-9) throw DegenerateError("h11 vanishes; the chain cannot be scaled");

    c.alpha = c.sf * c.h11 * c.h11;
    c.beta = c.h11 * c.h11 * c.h11;
    c.gamma = c.sf / c.h11;
    c.l00 = c.sf * std::pow(c.h11, 4) * c.h00;
    c.l01 = c.sf * c.h11 * c.h01;
    return c;
}

template <class T>
using Pair = std::array<T, 2>;

// Coordinates of the previous stage expressed through those of `stage`.
template <class T>
Pair<T> to_previous(const Chain& c, int stage, const Pair<T>& w) {
    const T& u = w[0];
    const T& v = w[1];
    switch (stage) {
    case 0: return {u + T(c.x7), v + T(c.x7)};
    case 1: return {u, (v - T(c.a10) * u) * T(1 / c.a01)};
    case 2: return {u, (v - T(c.c00) - T(c.c20) * u * u) / (T(1.0) + T(c.c11) * u)};
    case 3: return {u, v};
    case 4: return {u, v / (T(1.0) - T(c.e02) * u)};
    case 5: return {u, T(c.rf) * v};
    case 6: return {u - T(c.shift), v};
    case 7: return {u * T(1 / c.alpha), v * T(1 / c.beta)};
    }
    throw std::logic_error("bad chain stage");
}

// Field of `stage` at the image of z, given the previous stage's field F at z.
template <class T>
Pair<T> push(const Chain& c, int stage, const Pair<T>& z, const Pair<T>& F) {
    const T& u = z[0];
    const T& v = z[1];
    switch (stage) {
    case 0: return F;
    case 1: return {F[0], T(c.a10) * F[0] + T(c.a01) * F[1]};
    case 2: return {F[0], (T(2 * c.c20) * u + T(c.c11) * v) * F[0] + (T(1.0) + T(c.c11) * u) * F[1]};
    case 3: {
        const T factor = T(1.0) - T(c.e02) * u;
        return {factor * F[0], factor * F[1]};
    }
    case 4: return {F[0], T(-c.e02) * v * F[0] + (T(1.0) - T(c.e02) * u) * F[1]};
    case 5: return {F[0] * T(1 / c.rf), F[1] * T(1 / std::abs(c.f20))};
    case 6: return F;
    case 7: return {F[0] * T(c.alpha / c.gamma), F[1] * T(c.beta / c.gamma)};
    }
    throw std::logic_error("bad chain stage");
}

Vec2 exact_field(const Chain& c, int stage, Vec2 w) {
    const Pair<double> z = to_previous<double>(c, stage, {w[0], w[1]});
    Pair<double> F;
    if (stage == 0) {
        const Vec2 f = vector_field(c.perturbed, {z[0], z[1]});
        F = {f[0], f[1]};
    } else {
        const Vec2 f = exact_field(c, stage - 1, {z[0], z[1]});
        F = {f[0], f[1]};
    }
    const Pair<double> out = push<double>(c, stage, z, F);
    return {out[0], out[1]};
}

std::array<Pair<Poly3>, kStages> pushforward_polys(const Chain& c) {
    std::array<Pair<Poly3>, kStages> P;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) {
            P[0][0](i, j) = c.jet.a(i, j);
            P[0][1](i, j) = c.jet.b(i, j);
        }
    const Pair<Poly3> W{Poly3::u(), Poly3::v()};
    for (int k = 1; k < kStages; ++k) {
        const Pair<Poly3> Z = to_previous<Poly3>(c, k, W);
        const Pair<Poly3> F{compose(P[k - 1][0], Z[0], Z[1]), compose(P[k - 1][1], Z[0], Z[1])};
        P[k] = push<Poly3>(c, k, Z, F);
    }
    return P;
}

Poly3 quad(double k00, double k10, double k01, double k20, double k11, double k02) {
    Poly3 p;
    p(0, 0) = k00;
    p(1, 0) = k10;
    p(0, 1) = k01;
    p(2, 0) = k20;
    p(1, 1) = k11;
    p(0, 2) = k02;
    return p;
}

// Quadratic stage fields predicted by the closed-form recursion.
Pair<Poly3> closed_form(const Chain& c, int stage) {
    const Poly3 V = quad(0, 0, 1, 0, 0, 0);
    switch (stage) {
    case 0: return {quad(c.a00, c.a10, c.a01, c.a20, c.a11, 0), quad(0, c.b10, c.b01, c.b20, c.b11, c.b02)};
    case 1: return {quad(c.c00, 0, 1, c.c20, c.c11, 0), quad(c.d00, c.d10, c.d01, c.d20, c.d11, c.d02)};
    case 2: return {V, quad(c.e00, c.e10, c.e01, c.e20, c.e11, c.e02)};
    case 3:
        return {quad(0, 0, 1, 0, -c.e02, 0),
                quad(c.e00, c.e10 - c.e02 * c.e00, c.e01, c.e20 - c.e02 * c.e10, c.e11 - c.e02 * c.e01, c.e02)};
    case 4: return {V, quad(c.f00, c.f10, c.f01, c.f20, c.f11, 0)};
    case 5: return {V, quad(c.g00, c.g10, c.g01, c.sf, c.g11, 0)};
    case 6: return {V, quad(c.h00, 0, c.h01, c.sf, c.h11, 0)};
    case 7: return {V, quad(c.l00, 0, c.l01, 1, 1, 0)};
    }
    throw std::logic_error("bad chain stage");
}

std::vector<ChainStage> record_stages(const Chain& c) {
    return {
        {"shifted",
         {{"a00", c.a00}, {"a10", c.a10}, {"a01", c.a01}, {"a20", c.a20}, {"a11", c.a11}, {"b10", c.b10},
          {"b01", c.b01}, {"b20", c.b20}, {"b11", c.b11}, {"b02", c.b02}}},
        {"linear",
         {{"c00", c.c00}, {"c20", c.c20}, {"c11", c.c11}, {"d00", c.d00}, {"d10", c.d10}, {"d01", c.d01},
          {"d20", c.d20}, {"d11", c.d11}, {"d02", c.d02}}},
        {"near_identity",
         {{"e00", c.e00}, {"e10", c.e10}, {"e01", c.e01}, {"e20", c.e20}, {"e11", c.e11}, {"e02", c.e02}}},
        {"sheared", {{"f00", c.f00}, {"f10", c.f10}, {"f01", c.f01}, {"f20", c.f20}, {"f11", c.f11}}},
        {"scaled", {{"g00", c.g00}, {"g10", c.g10}, {"g01", c.g01}, {"g11", c.g11}}},
        {"translated", {{"h00", c.h00}, {"h01", c.h01}, {"h11", c.h11}}},
        {"normal_form", {{"l00", c.l00}, {"l01", c.l01}}},
    };
}

}  // namespace

BTReport bt_unfold(double q, double m, double eta1, double eta2) {
    if (!(std::abs(eta1) <= 1e-3 && std::abs(eta2) <= 1e-3)) throw DomainError("|eta1|, |eta2| must not exceed 1e-3");
    const Chain c = build_chain(q, m, eta1, eta2);
    BTReport r;
    r.q = q;
    r.m = m;
    r.h3 = c.h3;
    r.s1 = c.s1;
    r.center = {c.x7, c.x7};
    r.eta1 = eta1;
    r.eta2 = eta2;
    r.stages = record_stages(c);
    r.l00 = c.l00;
    r.l01 = c.l01;
    r.f20_sign = c.sf < 0 ? -1 : 1;

    const double step = 1e-5;
    const Chain p1 = build_chain(q, m, step, 0), m1 = build_chain(q, m, -step, 0);
    const Chain p2 = build_chain(q, m, 0, step), m2 = build_chain(q, m, 0, -step);
    r.jacobian = {(p1.l00 - m1.l00) / (2 * step), (p2.l00 - m2.l00) / (2 * step), (p1.l01 - m1.l01) / (2 * step),
                  (p2.l01 - m2.l01) / (2 * step)};
    r.j_unfold = r.jacobian[0] * r.jacobian[3] - r.jacobian[1] * r.jacobian[2];
    return r;
}

std::vector<StageCheck> bt_chain_self_check(double q, double m, double eta1, double eta2, int points, double radius,
                                            unsigned seed) {
    const Chain c = build_chain(q, m, eta1, eta2);
    const auto P = pushforward_polys(c);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Vec2> probes;
    for (int k = 0; k < points; ++k) {
        const double rho = radius * std::sqrt(unit(rng));
        const double th = 2 * M_PI * unit(rng);
        probes.push_back({rho * std::cos(th), rho * std::sin(th)});
    }
    std::vector<StageCheck> out;
    for (int k = 0; k < kStages; ++k) {
        StageCheck s;
        s.name = kStageNames[k];
        for (const Vec2& w : probes) {
            const Vec2 F = exact_field(c, k, w);
            s.residual = std::max({s.residual, std::abs(F[0] - P[k][0].eval(w[0], w[1])),
                                   std::abs(F[1] - P[k][1].eval(w[0], w[1]))});
        }
        const auto A = closed_form(c, k);
        s.closed_form_gap = std::max(A[0].max_gap(P[k][0], 2), A[1].max_gap(P[k][1], 2));
        out.push_back(s);
    }
    return out;
}

std::string_view regime_name(Regime r) {
    switch (r) {
    case Regime::NoEquilibrium: return "none";
    case Regime::Single: return "single";
    case Regime::SaddleStable: return "saddle_stable";
    case Regime::SaddleUnstable: return "saddle_unstable";
    case Regime::SaddleWeak: return "saddle_weak";
    case Regime::Cycle: return "cycle";
    case Regime::Escape: return "escape";
    case Regime::Other: return "other";
    }
    return "?";
}

Regime parse_regime(std::string_view t) {
    for (Regime r : {Regime::NoEquilibrium, Regime::Single, Regime::SaddleStable, Regime::SaddleUnstable,
                     Regime::SaddleWeak, Regime::Cycle, Regime::Escape, Regime::Other})
        if (regime_name(r) == t) return r;
    throw DomainError("unknown regime '" + std::string(t) + "'");
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw DomainError("grid needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / (n - 1);
        out[k] = lo * (1 - t) + hi * t;
    }
    return out;
}

std::vector<CensusCell> bt_phase_census(double q, double m, const std::vector<double>& eta1_values,
                                        const std::vector<double>& eta2_values, const CensusOptions& opt) {
    check_centre(q, m);
    for (double e : eta1_values)
        if (!(std::abs(e) <= 1e-3)) throw DomainError("census grid must lie in the +-1e-3 box");
    for (double e : eta2_values)
        if (!(std::abs(e) <= 1e-3)) throw DomainError("census grid must lie in the +-1e-3 box");
    const double h3 = 1 / (4 * (q + 1));
    const double s1 = (4 * h3 - 1) / (2 * (m - 2 * h3));
    const double x7 = 2 * h3;

    std::vector<CensusCell> cells(eta1_values.size() * eta2_values.size());
    parallel_for(cells.size(), [&](std::size_t k) {
        CensusCell& cell = cells[k];
        cell.index = k;
        cell.eta1 = eta1_values[k / eta2_values.size()];
        cell.eta2 = eta2_values[k % eta2_values.size()];
        const ModelParams p{q, h3 + cell.eta1, s1 + cell.eta2, m};
        std::vector<Equilibrium> near;
        for (const Equilibrium& e : all_equilibria(p))
            if (std::hypot(e.point.x - x7, e.point.y - x7) <= opt.near_radius_factor * x7) near.push_back(e);
        cell.equilibrium_count = static_cast<int>(near.size());
        if (near.empty()) {
            cell.regime = Regime::NoEquilibrium;
            return;
        }
        if (near.size() == 1) {
            cell.regime = Regime::Single;
            return;
        }
        if (near.size() != 2) {
            cell.regime = Regime::Other;
            return;
        }
        const Classification k0 = classify(p, near[0]), k1 = classify(p, near[1]);
        const bool first_saddle = k0.kind == Kind::Saddle;
        const Equilibrium& anti = first_saddle ? near[1] : near[0];
        const Classification& ka = first_saddle ? k1 : k0;
        if ((first_saddle ? k0 : k1).kind != Kind::Saddle) {
            cell.regime = Regime::Other;
            return;
        }
        switch (ka.kind) {
        case Kind::StableNode:
        case Kind::StableFocus: cell.regime = Regime::SaddleStable; break;
        case Kind::UnstableNode:
        case Kind::UnstableFocus: cell.regime = Regime::SaddleUnstable; break;
        case Kind::WeakCenter: cell.regime = Regime::SaddleWeak; break;
        default: cell.regime = Regime::Other; return;
        }
        if (ka.eigen.det <= 0 || ka.eigen.discriminant >= 0) return;  // no rotation, no small cycle
        const Equilibrium& sad = first_saddle ? near[0] : near[1];
        const double gap = std::hypot(anti.point.x - sad.point.x, anti.point.y - sad.point.y);
        const double period = 2 * M_PI / std::sqrt(ka.eigen.det);
        try {
            // Orbits near the organizing centre are stretched along the diagonal, so the
            // section offsets of interest are far smaller than the equilibrium gap.
            const double radius = std::min(10 * gap, 0.5 * anti.point.x);
            const auto cyc =
                scan_for_cycle(p, anti.point, 1e-3 * gap, 0.8 * gap, opt.scan_samples, 20 * period, radius);
            if (cyc) {
                cell.cycle_found = true;
                cell.regime = Regime::Cycle;
            }
        } catch (const EscapeError&) {
            cell.regime = Regime::Escape;
        }
    }, opt.workers);
    return cells;
}

}  // namespace allee
