#include "allee/classification.hpp"

#include <algorithm>
#include <cmath>

namespace allee {

namespace {

// Nonzero vector v with (J - lambda I) v = 0, using the better-conditioned row.
Vec2 null_vector(const Mat2& J, double lambda) {
    const double r1x = J.a - lambda, r1y = J.b;
    const double r2x = J.c, r2y = J.d - lambda;
    Vec2 v = std::hypot(r1x, r1y) >= std::hypot(r2x, r2y) ? Vec2{-r1y, r1x} : Vec2{-r2y, r2x};
    if (v[0] == 0 && v[1] == 0) v = {1, 0};
    return v;
}

Vec2 unit_leading(Vec2 v) {
    const double n = std::hypot(v[0], v[1]);
    if (std::abs(v[0]) > 1e-12 * n) return {1, v[1] / v[0]};
    return {v[0] / v[1], 1};
}

double quad_a(const Jet3& j, Vec2 v) { return j.a(2, 0) * v[0] * v[0] + j.a(1, 1) * v[0] * v[1] + j.a(0, 2) * v[1] * v[1]; }
double quad_b(const Jet3& j, Vec2 v) { return j.b(2, 0) * v[0] * v[0] + j.b(1, 1) * v[0] * v[1] + j.b(0, 2) * v[1] * v[1]; }

double quadratic_scale(const Jet3& j) {
    double s = 0;
    for (auto [i, k] : {std::pair{2, 0}, {1, 1}, {0, 2}}) s = std::max({s, std::abs(j.a(i, k)), std::abs(j.b(i, k))});
    return std::max(1.0, s);
}

}  // namespace

std::string_view kind_code(Kind k) {
    switch (k) {
    case Kind::StableNode: return "SN";
    case Kind::UnstableNode: return "UN";
    case Kind::StableFocus: return "SF";
    case Kind::UnstableFocus: return "UF";
    case Kind::Saddle: return "SA";
    case Kind::SaddleNode: return "SNODE";
    case Kind::WeakCenter: return "WC";
    case Kind::CuspCodim2: return "CUSP";
    case Kind::Degenerate: return "DEG";
    }
    return "?";
}

Kind parse_kind_code(std::string_view c) {
    for (Kind k : {Kind::StableNode, Kind::UnstableNode, Kind::StableFocus, Kind::UnstableFocus, Kind::Saddle,
                   Kind::SaddleNode, Kind::WeakCenter, Kind::CuspCodim2, Kind::Degenerate})
        if (kind_code(k) == c) return k;
    throw DomainError("unknown kind code '" + std::string(c) + "'");
}

double zero_band(const Mat2& J) { return 1e-9 * std::max(1.0, J.frobenius()); }

EigenData eigen_data(const Mat2& J) {
    EigenData e;
    e.trace = J.trace();
    e.det = J.det();
    e.discriminant = e.trace * e.trace - 4 * e.det;
    if (e.discriminant >= 0) {
        const double root = std::sqrt(e.discriminant);
        const double big = (e.trace + std::copysign(root, e.trace)) / 2;
        const double small = big != 0 ? e.det / big : 0.0;
        e.lambda1 = std::max(big, small);
        e.lambda2 = std::min(big, small);
    } else {
        const double im = std::sqrt(-e.discriminant) / 2;
        e.lambda1 = {e.trace / 2, im};
        e.lambda2 = {e.trace / 2, -im};
    }
    return e;
}

double centre_manifold_coefficient(const Jet3& jet) {
    const Mat2 J = jet.jacobian();
    const double band = zero_band(J);
    const double tr = J.trace(), det = J.det();
    if (std::abs(tr) <= band) throw DegenerateError("both eigenvalues in the zero band; use the cusp test");
    const double l_center = det / tr;  // the eigenvalue near zero
    const double l_other = tr - l_center;
    const Vec2 v0 = unit_leading(null_vector(J, l_center));
    const Vec2 v1 = null_vector(J, l_other);
    // First row of [v0 v1]^{-1}.
    const double dP = v0[0] * v1[1] - v1[0] * v0[1];
    if (dP == 0) throw DegenerateError("eigenvectors are parallel");
    return (v1[1] * quad_a(jet, v0) - v1[0] * quad_b(jet, v0)) / dP;
}

double centre_manifold_coefficient(const ModelParams& p, const Equilibrium& e) { return centre_manifold_coefficient(jet3(p, e.point)); }

CuspCoefficients cusp_coefficients(const Jet3& jet) {
    const Mat2 J = jet.jacobian();
    if (std::abs(J.b) <= zero_band(J)) throw DegenerateError("a01 vanishes; cusp reduction undefined");
    const double a01 = J.b, k = J.d / a01;
    // u = xi, v = k xi + zeta / a01 brings the linear part to [[tr, 1], [-det, 0]].
    const double a20 = jet.a(2, 0), a11 = jet.a(1, 1), a02 = jet.a(0, 2);
    const double b20 = jet.b(2, 0), b11 = jet.b(1, 1), b02 = jet.b(0, 2);
    const double e20 = a20 + a11 * k + a02 * k * k;
    const double e11 = (a11 + 2 * a02 * k) / a01;
    const double B20 = b20 + b11 * k + b02 * k * k;
    const double B11 = (b11 + 2 * b02 * k) / a01;
    const double f20 = a01 * (B20 - k * e20);
    const double f11 = a01 * (B11 - k * e11);
    return {f20, f11 + 2 * e20};
}

CuspCoefficients cusp_coefficients(const ModelParams& p, const Equilibrium& e) {
    return cusp_coefficients(jet3(p, e.point));
}

Classification classify_jet(const Jet3& jet) {
    Classification c;
    const Mat2 J = jet.jacobian();
    c.eigen = eigen_data(J);
    const double band = zero_band(J);
    const double tr = c.eigen.trace, det = c.eigen.det, disc = c.eigen.discriminant;
    if (!std::isfinite(tr) || !std::isfinite(det)) {
        c.kind = Kind::Degenerate;
        c.reason = "non-finite Jacobian";
        return c;
    }
    const double coef_band = 1e-9 * quadratic_scale(jet);

    if (det < -band) {
        c.kind = Kind::Saddle;
    } else if (det > band) {
        if (std::abs(tr) <= band) {
            c.kind = Kind::WeakCenter;
        } else {
            const bool stable = tr < 0;
            const bool on_edge = std::abs(disc) <= 1e-9 * std::max(1.0, J.frobenius() * J.frobenius());
            c.borderline = on_edge;
            const bool node = on_edge || disc > 0;
            c.kind = node ? (stable ? Kind::StableNode : Kind::UnstableNode)
                          : (stable ? Kind::StableFocus : Kind::UnstableFocus);
        }
    } else if (std::abs(tr) > band) {
        const double c20 = centre_manifold_coefficient(jet);
        c.evidence.c20 = c20;
        if (std::abs(c20) > coef_band) {
            c.kind = Kind::SaddleNode;
        } else {
            c.kind = Kind::Degenerate;
            c.reason = "saddle-node coefficient c20 vanishes";
        }
    } else if (std::max({std::abs(J.a), std::abs(J.b), std::abs(J.c), std::abs(J.d)}) <= band) {
        c.kind = Kind::Degenerate;
        c.reason = "Jacobian vanishes";
    } else {
        try {
            const CuspCoefficients g = cusp_coefficients(jet);
            c.evidence.g20 = g.g20;
            c.evidence.g11 = g.g11;
            if (std::abs(g.g20) > coef_band && std::abs(g.g11) > coef_band) {
                c.kind = Kind::CuspCodim2;
            } else {
                c.kind = Kind::Degenerate;
                c.reason = "cusp coefficient g20 or g11 vanishes";
            }
        } catch (const DegenerateError& err) {
            c.kind = Kind::Degenerate;
            c.reason = err.what();
        }
    }
    return c;
}

Classification classify(const ModelParams& p, const Equilibrium& e) { return classify_jet(jet3(p, e.point)); }

}  // namespace allee
