#include <algorithm>
#include <cmath>
#include <numbers>

#include "allee/bifurcation.hpp"

namespace allee {

std::string_view hopf_direction_name(HopfDirection d) {
    switch (d) {
    case HopfDirection::Supercritical: return "supercritical";
    case HopfDirection::Subcritical: return "subcritical";
    case HopfDirection::Undetermined: return "undetermined";
    }
    return "?";
}

HopfDirection parse_hopf_direction(std::string_view t) {
    for (HopfDirection d : {HopfDirection::Supercritical, HopfDirection::Subcritical, HopfDirection::Undetermined})
        if (hopf_direction_name(d) == t) return d;
    throw DomainError("unknown Hopf direction '" + std::string(t) + "'");
}

std::string_view cycle_stability_name(CycleStability c) {
    return c == CycleStability::Attracting ? "attracting" : "repelling";
}

CycleStability parse_cycle_stability(std::string_view t) {
    if (t == "attracting") return CycleStability::Attracting;
    if (t == "repelling") return CycleStability::Repelling;
    throw DomainError("unknown cycle stability '" + std::string(t) + "'");
}

HopfCritical hopf_critical(const ModelParams& p_in, Label which) {
    if (which != Label::E8 && which != Label::E9) throw DomainError("Hopf analysis is defined for E8 and E9 only");
    ModelParams p = p_in;
    p.s = 1;  // s is the unknown here
    p.validate();
    const auto diag = solve_diagonal(p);
    if (diag.size() != 2) throw DomainError("Hopf analysis requires two diagonal equilibria (delta2 > 0)");
    const Equilibrium& e = which == Label::E8 ? diag[0] : diag[1];
    const double x = e.point.x, q = p.q, m = p.m;
    if (which == Label::E8 && !(m < x)) throw DomainError("weak centre at E8 requires m < x8");
    if (which == Label::E9 && !(m > x)) throw DomainError("weak centre at E9 requires m > x9");

    HopfCritical c;
    c.label = which;
    c.point = e.point;
    c.dtrace_ds = m - x;
    c.s_critical = (2 * x + q * x - 1) / (m - x);
    if (!(c.s_critical > 0))
        throw InfeasibleError(std::string("critical s for ") + std::string(label_name(which)) + " is not positive");
    c.det = c.s_critical * (m - x) * (1 - 2 * x * (q + 1));
    if (!(c.det > 0)) throw DomainError("determinant at the critical s is not positive");
    return c;
}

LyapunovTerms lyapunov_terms(const Jet3& jet) {
    const double a = jet.a(1, 0), b = jet.a(0, 1), c = jet.b(1, 0), d = jet.b(0, 1);
    const double a20 = jet.a(2, 0), a11 = jet.a(1, 1), a02 = jet.a(0, 2);
    const double a30 = jet.a(3, 0), a21 = jet.a(2, 1), a12 = jet.a(1, 2);
    const double b20 = jet.b(2, 0), b11 = jet.b(1, 1), b02 = jet.b(0, 2);
    const double b21 = jet.b(2, 1), b12 = jet.b(1, 2), b03 = jet.b(0, 3);

    LyapunovTerms t;
    t.M = a * d - b * c;
    if (!(t.M > 0)) throw DomainError("first Lyapunov coefficient requires a positive determinant");
    const double cubic = 3 * (c * b03 - b * a30) + 2 * a * (a21 + b12) + (c * a12 - b * b21);
    t.phi[0] = a * c * (a11 * a11 + a11 * b02 + a02 * b11);
    t.phi[1] = a * b * (b11 * b11 + a20 * b11 + a11 * b20);
    t.phi[2] = c * c * (a11 * a02 + 2 * a02 * b02);
    t.phi[3] = -2 * a * c * (b02 * b02 - a20 * a02);
    t.phi[4] = -2 * a * b * (a20 * a20 - b20 * b02);
    t.phi[5] = -b * b * (2 * a20 * b20 + b11 * b20);
    t.phi[6] = (b * c - 2 * a * a) * (b11 * b02 - a11 * a20);
    t.phi[7] = -(a * a + b * c) * cubic;

    const double scale = -3 * std::numbers::pi / (2 * b * std::pow(t.M, 1.5));
    double sum = 0;
    for (double v : t.phi) sum += v;
    t.sigma = scale * sum;
    // Variant with a11*b02 in the a*b term; it disagrees in sign at many points.
    t.sigma_b02 = scale * (sum - t.phi[1] + a * b * (b11 * b11 + a20 * b11 + a11 * b02));

    // Alternative expansion: phi6 pairs b11 with a20, phi7 uses a01*b01 for bc.
    t.phi_alt[0] = a * c * (a11 * a11 + a11 * b02);
    t.phi_alt[1] = a * b * (b11 * b11 + a20 * b11 + a11 * b02);
    t.phi_alt[2] = 0;
    t.phi_alt[3] = -2 * a * c * b02 * b02;
    t.phi_alt[4] = -2 * a * b * (a20 * a20 - b20 * b02);
    t.phi_alt[5] = -b * b * (2 * a20 * b20 + b11 * a20);
    t.phi_alt[6] = (b * d - 2 * a * a) * (b11 * b02 - a11 * a20);
    t.phi_alt[7] = -(a * a + b * c) * (3 * (c * b03 - b * a30) + 2 * a * b12 - b * b21);
    double listing = 0;
    for (double v : t.phi_alt) listing += v;
    t.sigma_alt = scale * listing;
    return t;
}

HopfReport first_lyapunov(const ModelParams& p, const Equilibrium& e) {
    p.validate();
    const Jet3 jet = jet3(p, e.point);
    const Classification cls = classify_jet(jet);
    if (cls.kind != Kind::WeakCenter) throw DomainError("first Lyapunov coefficient requires a weak centre");

    HopfReport r;
    r.params = p;
    r.critical.label = e.label;
    r.critical.point = e.point;
    r.critical.s_critical = p.s;
    r.critical.dtrace_ds = jet.b(0, 1) / p.s;
    r.critical.det = cls.eigen.det;
    r.terms = lyapunov_terms(jet);
    if (std::abs(r.terms.sigma) <= 1e-10)
        throw DegenerateError("first Lyapunov coefficient vanishes; Hopf direction undetermined");
    r.direction = r.terms.sigma < 0 ? HopfDirection::Supercritical : HopfDirection::Subcritical;
    return r;
}

ReturnMap::ReturnMap(const ModelParams& p, State center, int time_direction, double radius, double max_time,
                     double rel_tol)
    : p_(p), center_(center), direction_(time_direction), radius_(radius), max_time_(max_time), rel_tol_(rel_tol) {
    const Mat2 J = jet3(p, center).jacobian();
    // The flow crosses the ray x > x_e with dy/dt of the sign of J21.
    const int turn = J.c >= 0 ? +1 : -1;
    section_ = {center.x, center.y, turn * time_direction};
}

std::optional<ReturnMap::Hit> ReturnMap::operator()(double xi) const {
    IntegratorConfig cfg;
    cfg.rel_tol = rel_tol_;
    cfg.abs_tol = 1e-14;
    cfg.max_step = 1.0;
    cfg.max_time = max_time_;
    cfg.direction = direction_;
    cfg.record = false;
    cfg.stop_on_convergence = false;
    CrossingDetector det(section_);
    bool left = false;
    const Trajectory tr = integrate(p_, {center_.x + xi, center_.y}, cfg, [&](const StepInfo& s) {
        if (std::hypot(s.z1.x - center_.x, s.z1.y - center_.y) > radius_) {
            left = true;
            return false;
        }
        return !det.observe(s);
    });
    if (tr.reason == Termination::Escaped) throw EscapeError("trajectory left the admissible region");
    if (left || det.hits().empty()) return std::nullopt;
    return Hit{det.hits().front().x - center_.x, det.hits().front().t};
}

namespace {

struct Search {
    enum Outcome { Fixed, Decayed, Diverged } outcome;
    double xi = 0, residual = 0;
    int iterations = 0;
};

// Fixed point of the return map by plain iteration with secant acceleration.
Search iterate_fixed_point(const ReturnMap& P, double xi0) {
    const double floor = 0.05 * xi0;
    const double ceiling = 0.9 * P.radius();
    Search s{Search::Diverged};
    double xi = xi0;
    double prev_xi = 0, prev_g = 0;
    bool have_prev = false;
    double best_g = HUGE_VAL, best_xi = xi0;
    for (int it = 1; it <= 200; ++it) {
        s.iterations = it;
        const auto hit = P(xi);
        if (!hit) {
            s.outcome = Search::Diverged;
            return s;
        }
        const double g = hit->xi - xi;
        if (std::abs(g) < best_g) {
            best_g = std::abs(g);
            best_xi = xi;
        }
        if (std::abs(g) <= 1e-11) break;
        if (hit->xi < floor) {
            s.outcome = Search::Decayed;
            return s;
        }
        if (hit->xi > ceiling) {
            s.outcome = Search::Diverged;
            return s;
        }
        double next = hit->xi;
        if (have_prev && g != prev_g && ((g > 0) == (prev_g > 0)) && std::abs(g) < std::abs(prev_g)) {
            const double sec = xi - g * (xi - prev_xi) / (g - prev_g);
            if (sec > floor && sec < ceiling) next = sec;
        }
        prev_xi = xi;
        prev_g = g;
        have_prev = true;
        if (next == xi) break;
        xi = next;
    }
    s.xi = best_xi;
    s.residual = best_g;
    s.outcome = best_g <= 1e-6 ? Search::Fixed : Search::Diverged;
    return s;
}

LimitCycleEvidence describe_cycle(const ModelParams& p, State center, double xi, int search_dir, int iterations,
                                  double radius, double max_time) {
    const ReturnMap fwd(p, center, +1, radius, max_time);
    LimitCycleEvidence ev;
    ev.s_used = p.s;
    ev.section = fwd.section();
    ev.fixed_point = center.x + xi;
    ev.amplitude = xi;
    ev.iterations = iterations;
    ev.search_direction = search_dir;
    const auto hit = fwd(xi);
    if (!hit) throw DegenerateError("located cycle does not close under the forward map");
    ev.period = hit->time;
    ev.residual = std::abs(hit->xi - xi);
    const double dxi = 1e-4 * xi;
    const auto up = fwd(xi + dxi), dn = fwd(xi - dxi);
    if (!up || !dn) throw DegenerateError("return map undefined next to the cycle");
    ev.multiplier = (up->xi - dn->xi) / (2 * dxi);
    ev.stability = std::abs(ev.multiplier) < 1 ? CycleStability::Attracting : CycleStability::Repelling;
    return ev;
}

double neighbourhood_radius(State center) { return std::min(0.5 * center.x, 0.25); }

double rotation_time(const ModelParams& p, State center) {
    const double det = jet3(p, center).jacobian().det();
    const double omega = det > 0 ? std::sqrt(det) : 1e-2;
    return 20 * 2 * std::numbers::pi / omega;
}

}  // namespace

HopfSide simulate_hopf_side(const ModelParams& p_in, const Equilibrium& e, double s_critical, double offset) {
    if (offset == 0 || !(std::abs(offset) <= 0.1 * s_critical))
        throw DomainError("offset must be nonzero with |offset| <= 0.1 * critical s");
    ModelParams p = p_in;
    p.s = s_critical + offset;
    p.validate();
    const State c = e.point;
    const double radius = neighbourhood_radius(c);
    const double max_time = rotation_time(p, c);
    const double xi0 = std::min(1e-2, 0.3 * radius);

    int total = 0;
    std::string reason;
    for (int dir : {+1, -1}) {
        const ReturnMap P(p, c, dir, radius, max_time);
        const Search s = iterate_fixed_point(P, xi0);
        total += s.iterations;
        if (s.outcome == Search::Fixed) return describe_cycle(p, c, s.xi, dir, total, radius, max_time);
        if (!reason.empty()) reason += "; ";
        reason += dir > 0 ? "forward: " : "reverse: ";
        reason += s.outcome == Search::Decayed ? "returns decay to the equilibrium" : "orbit leaves the neighbourhood";
    }
    return NoCycle{p.s, reason, total};
}

bool hopf_sides_consistent(double sigma, double dtrace_ds, const HopfEvidence& ev) {
    // Side with positive trace: (s - s_c) * dtr/ds > 0.
    const bool plus_unstable = dtrace_ds < 0 ? false : true;
    const HopfSide& unstable = plus_unstable ? ev.plus : ev.minus;
    const HopfSide& stable = plus_unstable ? ev.minus : ev.plus;
    auto cycle = [](const HopfSide& s) { return std::get_if<LimitCycleEvidence>(&s); };
    if (sigma < 0) {
        const auto* c = cycle(unstable);
        return c && c->stability == CycleStability::Attracting && !cycle(stable);
    }
    const auto* c = cycle(stable);
    return c && c->stability == CycleStability::Repelling && !cycle(unstable);
}

HopfEvidence hopf_evidence(const ModelParams& p, const Equilibrium& e, double s_critical, double dtrace_ds,
                           double sigma, double offset) {
    HopfEvidence ev;
    ev.offset = std::abs(offset);
    ev.minus = simulate_hopf_side(p, e, s_critical, -ev.offset);
    ev.plus = simulate_hopf_side(p, e, s_critical, +ev.offset);
    ev.consistent = hopf_sides_consistent(sigma, dtrace_ds, ev);
    return ev;
}

namespace {

std::optional<LimitCycleEvidence> scan_one_direction(const ModelParams& p, State center, double xi_lo, double xi_hi,
                                                     int samples, double max_time, double radius, int time_direction) {
    const ReturnMap P(p, center, time_direction, radius, max_time, 1e-12);
    auto G = [&](double xi) -> std::optional<double> {
        const auto hit = P(xi);
        if (!hit) return std::nullopt;
        return hit->xi - xi;
    };
    const double ratio = std::pow(xi_hi / xi_lo, 1.0 / std::max(1, samples - 1));
    double prev_xi = xi_lo;
    std::optional<double> prev_g = G(prev_xi);
    if (!prev_g) return std::nullopt;
    for (int k = 1; k < samples; ++k) {
        const double xi = xi_lo * std::pow(ratio, k);
        const std::optional<double> g = G(xi);
        if (!g) return std::nullopt;
        if ((*g > 0) != (*prev_g > 0)) {
            // Illinois-modified regula falsi on the bracket.
            double a = prev_xi, fa = *prev_g, b = xi, fb = *g;
            int side = 0;
            for (int it = 0; it < 100 && std::abs(b - a) > 1e-13 * b; ++it) {
                const double c = (a * fb - b * fa) / (fb - fa);
                const std::optional<double> fc = G(c);
                if (!fc) return std::nullopt;
                if ((*fc > 0) == (fb > 0)) {
                    b = c;
                    fb = *fc;
                    if (side == -1) fa /= 2;
                    side = -1;
                } else {
                    a = c;
                    fa = *fc;
                    if (side == +1) fb /= 2;
                    side = +1;
                }
                if (std::abs(*fc) <= 1e-14) break;
            }
            const double root = std::abs(fa) < std::abs(fb) ? a : b;
            LimitCycleEvidence ev;
            ev.s_used = p.s;
            ev.section = P.section();
            ev.fixed_point = center.x + root;
            ev.amplitude = root;
            ev.search_direction = time_direction;
            const auto hit = P(root);
            if (!hit) return std::nullopt;
            ev.period = hit->time;
            ev.residual = std::abs(hit->xi - root);
            const double d = 1e-3 * root;
            const auto up = P(root + d), dn = P(root - d);
            if (!up || !dn) return std::nullopt;
            // Multiplier of the forward-time map; the reversed map has the reciprocal one.
            const double mu = (up->xi - dn->xi) / (2 * d);
            ev.multiplier = time_direction > 0 ? mu : 1 / mu;
            ev.stability = std::abs(ev.multiplier) < 1 ? CycleStability::Attracting : CycleStability::Repelling;
            return ev;
        }
        prev_xi = xi;
        prev_g = g;
    }
    return std::nullopt;
}

}  // namespace

std::optional<LimitCycleEvidence> scan_for_cycle(const ModelParams& p, State center, double xi_lo, double xi_hi,
                                                 int samples, double max_time, double radius) {
    if (radius <= 0) radius = 1.5 * xi_hi;
    if (auto ev = scan_one_direction(p, center, xi_lo, xi_hi, samples, max_time, radius, +1)) return ev;
    return scan_one_direction(p, center, xi_lo, xi_hi, samples, max_time, radius, -1);
}

}  // namespace allee
