#include <cmath>

#include "allee/bifurcation.hpp"

namespace allee {

SaddleNodeReport saddle_node_check(const ModelParams& p) {
    p.validate();
    if (std::abs(p.h - 0.25) > discriminant_band(1.0)) throw DomainError("saddle-node check requires h = 1/4");
    const auto boundary = solve_boundary(p);
    if (boundary.size() != 1 || boundary[0].label != Label::E1) throw DomainError("E1 does not exist at these parameters");

    SaddleNodeReport r;
    r.h_critical = 0.25;
    r.point = boundary[0].point;
    const Jet3 jet = jet3(p, r.point);
    const Mat2 J = jet.jacobian();

    r.v = {1, 0};
    r.w = {-2 * J.d, 2 * J.b};
    const Vec2 Jv = J * r.v;
    const Vec2 Jtw = J.transpose() * r.w;
    r.jv_residual = std::hypot(Jv[0], Jv[1]);
    r.jtw_residual = std::hypot(Jtw[0], Jtw[1]);

    r.f_h = {-1, 0};
    auto second = [&](const Taylor3& t) {
        return 2 * (t(2, 0) * r.v[0] * r.v[0] + t(1, 1) * r.v[0] * r.v[1] + t(0, 2) * r.v[1] * r.v[1]);
    };
    r.d2f_vv = {second(jet.a), second(jet.b)};
    r.t1 = r.w[0] * r.f_h[0] + r.w[1] * r.f_h[1];
    r.t2 = r.w[0] * r.d2f_vv[0] + r.w[1] * r.d2f_vv[1];

    const double band = zero_band(J);
    if (std::abs(r.t1) <= band || std::abs(r.t2) <= band)
        throw DegenerateError("saddle-node transversality fails");
    return r;
}

std::vector<int> boundary_counts(const ModelParams& p, const std::vector<double>& h_values) {
    std::vector<int> counts;
    for (double h : h_values) {
        ModelParams ph = p;
        ph.h = h;
        counts.push_back(static_cast<int>(solve_boundary(ph).size()));
    }
    return counts;
}

}  // namespace allee
