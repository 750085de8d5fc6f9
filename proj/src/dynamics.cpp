#include "allee/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "allee/parallel.hpp"

namespace allee {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (fifth minus fourth order weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

struct Field {
    const ModelParams& p;
    double sign;
    // NaN outside x > 0 so that trial steps leaving the domain are rejected.
    Vec2 operator()(const Vec2& z) const {
        if (!(z[0] > 0)) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        auto f = field_expression(p.q, p.h, p.s, p.m, z[0], z[1]);
        return {sign * f[0], sign * f[1]};
    }
};

Vec2 axpy(const Vec2& y, double h, std::initializer_list<std::pair<double, const Vec2*>> terms) {
    Vec2 out = y;
    for (auto [c, k] : terms) {
        out[0] += h * c * (*k)[0];
        out[1] += h * c * (*k)[1];
    }
    return out;
}

double error_norm(const Vec2& err, const Vec2& y0, const Vec2& y1, double rtol, double atol) {
    double sum = 0;
    for (int i = 0; i < 2; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        sum += (err[i] / sc) * (err[i] / sc);
    }
    return std::sqrt(sum / 2);
}

double initial_step(const Field& f, const Vec2& y0, const Vec2& f0, const IntegratorConfig& cfg) {
    auto scaled = [&](const Vec2& v) {
        double s = 0;
        for (int i = 0; i < 2; ++i) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
            s += (v[i] / sc) * (v[i] / sc);
        }
        return std::sqrt(s / 2);
    };
    const double d0 = scaled(y0), d1 = scaled(f0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, cfg.max_step);
    const Vec2 y1 = axpy(y0, h0, {{1.0, &f0}});
    const Vec2 f1 = f(y1);
    const double d2 = std::isfinite(f1[0]) ? scaled({f1[0] - f0[0], f1[1] - f0[1]}) / h0 : 1e6;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5);
    return std::min({100 * h0, h1, cfg.max_step});
}

}  // namespace

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0 && rel_tol <= 1e-2)) throw DomainError("relative tolerance must lie in (0, 1e-2]");
    if (!(abs_tol > 0 && abs_tol <= 1e-2)) throw DomainError("absolute tolerance must lie in (0, 1e-2]");
    if (!(escape_floor > 0)) throw DomainError("escape floor must be positive");
    if (!(max_step > 0)) throw DomainError("max step must be positive");
    if (!(max_time > 0)) throw DomainError("max time must be positive");
    if (!(box_x > 0 && box_y > 0)) throw DomainError("escape box must be non-empty");
    if (direction != 1 && direction != -1) throw DomainError("direction must be +1 or -1");
}

std::string_view termination_name(Termination t) {
    switch (t) {
    case Termination::TimeLimit: return "time_limit";
    case Termination::Converged: return "converged";
    case Termination::Escaped: return "escaped";
    case Termination::Stopped: return "stopped";
    }
    return "?";
}

Termination parse_termination(std::string_view t) {
    for (Termination v : {Termination::TimeLimit, Termination::Converged, Termination::Escaped, Termination::Stopped})
        if (termination_name(v) == t) return v;
    throw DomainError("unknown termination '" + std::string(t) + "'");
}

Trajectory integrate(const ModelParams& p, State start, const IntegratorConfig& cfg, const StepObserver& observer) {
    p.validate();
    cfg.validate();
    if (!(start.x > 0) || !(start.y >= 0)) throw DomainError("initial state must lie in x > 0, y >= 0");

    const Field f{p, static_cast<double>(cfg.direction)};
    Trajectory traj;
    traj.direction = cfg.direction;
    Vec2 y{start.x, start.y};
    double t = 0;
    if (cfg.record) traj.samples.push_back({t, start});
    auto finish = [&](Termination why, Vec2 at) {
        traj.reason = why;
        traj.final_time = t;
        traj.final_state = {at[0], at[1]};
        return traj;
    };
    if (start.x <= cfg.escape_floor) return finish(Termination::Escaped, y);

    Vec2 k1 = f(y);
    double h = initial_step(f, y, k1, cfg);
    int quiet = 0;
    bool last_rejected = false;

    while (true) {
        if (traj.accepted_steps + traj.rejected_steps >= cfg.max_steps) return finish(Termination::Stopped, y);
        const double remaining = cfg.max_time - t;
        if (remaining <= 0) return finish(Termination::TimeLimit, y);
        h = std::min({h, cfg.max_step, remaining});
        const double h_min = 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, t);
        if (h < h_min) return finish(Termination::Escaped, y);  // step collapse only happens at the x -> 0 singularity

        const Vec2 k2 = f(axpy(y, h, {{a21, &k1}}));
        const Vec2 k3 = f(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const Vec2 k4 = f(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const Vec2 k5 = f(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const Vec2 k6 = f(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        Vec2 y1 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const Vec2 k7 = f(y1);
        const Vec2 err = axpy({0, 0}, h, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});
        const double en = error_norm(err, y, y1, cfg.rel_tol, cfg.abs_tol);

        if (!std::isfinite(en) || en > 1) {
            ++traj.rejected_steps;
            const double fac = std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.25;
            h *= std::min(fac, 0.9);
            last_rejected = true;
            continue;
        }

        ++traj.accepted_steps;
        // y = 0 is invariant; remove rounding drift across it.
        Vec2 f1 = k7;
        if (std::abs(y1[1]) <= cfg.abs_tol) {
            y1[1] = 0;
            f1 = f(y1);
        }
        const double t1 = t + h;
        const bool escaped = y1[0] <= cfg.escape_floor || y1[0] > cfg.box_x || y1[1] > cfg.box_y || y1[1] < 0;
        if (escaped) {
            t = t1;
            return finish(Termination::Escaped, y1);
        }

        const StepInfo step{t, t1, {y[0], y[1]}, {y1[0], y1[1]}, k1, f1};
        y = y1;
        k1 = f1;
        t = t1;
        if (cfg.record) traj.samples.push_back({t, {y[0], y[1]}});
        if (observer && !observer(step)) return finish(Termination::Stopped, y);

        if (cfg.stop_on_convergence) {
            quiet = std::hypot(k1[0], k1[1]) <= cfg.converge_tol ? quiet + 1 : 0;
            if (quiet >= cfg.converge_steps) return finish(Termination::Converged, y);
        }

        double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
        h *= fac;
        last_rejected = false;
    }
}

State hermite(const StepInfo& s, double t) {
    const double dt = s.t1 - s.t0;
    const double th = (t - s.t0) / dt;
    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
    const double h10 = th * (1 - th) * (1 - th);
    const double h01 = th * th * (3 - 2 * th);
    const double h11 = th * th * (th - 1);
    return {h00 * s.z0.x + h10 * dt * s.f0[0] + h01 * s.z1.x + h11 * dt * s.f1[0],
            h00 * s.z0.y + h10 * dt * s.f0[1] + h01 * s.z1.y + h11 * dt * s.f1[1]};
}

bool CrossingDetector::observe(const StepInfo& s) {
    const double g0 = section_.direction * (s.z0.y - section_.y0);
    const double g1 = section_.direction * (s.z1.y - section_.y0);
    if (!(g0 < 0 && g1 >= 0)) return false;
    double lo = s.t0, hi = s.t1;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double g = section_.direction * (hermite(s, mid).y - section_.y0);
        (g < 0 ? lo : hi) = mid;
    }
    const double tc = 0.5 * (lo + hi);
    const double x = hermite(s, tc).x;
    if (!(x > section_.x0)) return false;
    hits_.push_back({tc, x});
    return true;
}

std::vector<Crossing> crossings(const ModelParams& p, const Trajectory& traj, const Section& section) {
    CrossingDetector det(section);
    auto deriv = [&](State z) {
        const Vec2 v = vector_field(p, z);
        return Vec2{traj.direction * v[0], traj.direction * v[1]};
    };
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const Sample& a = traj.samples[i - 1];
        const Sample& b = traj.samples[i];
        det.observe({a.t, b.t, a.z, b.z, deriv(a.z), deriv(b.z)});
    }
    return det.hits();
}

void PortraitSpec::validate() const {
    if (!(x_lo >= 0 && y_lo >= 0)) throw DomainError("portrait window must lie in x >= 0, y >= 0");
    if (!(x_hi > x_lo && y_hi > y_lo)) throw DomainError("portrait window must have positive extent");
    if (rows < 1 || cols < 1) throw DomainError("portrait grid dimensions must be at least 1");
    if (!(horizon > 0)) throw DomainError("portrait horizon must be positive");
}

std::vector<State> portrait_seeds(const PortraitSpec& spec) {
    spec.validate();
    std::vector<State> seeds;
    seeds.reserve(static_cast<std::size_t>(spec.rows) * spec.cols);
    for (int i = 0; i < spec.rows; ++i)
        for (int j = 0; j < spec.cols; ++j)
            seeds.push_back({spec.x_lo + (j + 0.5) * (spec.x_hi - spec.x_lo) / spec.cols,
                             spec.y_lo + (i + 0.5) * (spec.y_hi - spec.y_lo) / spec.rows});
    return seeds;
}

std::vector<PortraitTrajectory> portrait(const ModelParams& p, const PortraitSpec& spec, const IntegratorConfig& base,
                                         unsigned workers) {
    p.validate();
    const std::vector<State> seeds = portrait_seeds(spec);
    std::vector<int> dirs;
    if (spec.direction != Direction::Backward) dirs.push_back(+1);
    if (spec.direction != Direction::Forward) dirs.push_back(-1);

    std::vector<PortraitTrajectory> out(seeds.size() * dirs.size());
    parallel_for(out.size(), [&](std::size_t k) {
        const std::size_t seed = k / dirs.size();
        IntegratorConfig cfg = base;
        cfg.max_time = spec.horizon;
        cfg.direction = dirs[k % dirs.size()];
        cfg.record = true;
        out[k] = {seed, seeds[seed], cfg.direction, integrate(p, seeds[seed], cfg)};
    }, workers);
    return out;
}

OrderStudy convergence_order(const ModelParams& p, State z0, double horizon, const std::vector<double>& tolerances,
                             double reference_tol) {
    IntegratorConfig cfg;
    cfg.max_time = horizon;
    cfg.record = false;
    cfg.stop_on_convergence = false;
    cfg.rel_tol = cfg.abs_tol = reference_tol;
    const Trajectory ref = integrate(p, z0, cfg);
    OrderStudy study;
    for (double tol : tolerances) {
        cfg.rel_tol = cfg.abs_tol = tol;
        const Trajectory run = integrate(p, z0, cfg);
        const double err = std::hypot(run.final_state.x - ref.final_state.x, run.final_state.y - ref.final_state.y);
        study.points.push_back({tol, run.accepted_steps, err});
    }
    // Least-squares slope of log(error) on log(steps).
    const double n = static_cast<double>(study.points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& pt : study.points) {
        const double lx = std::log(static_cast<double>(pt.steps)), ly = std::log(pt.error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    study.order = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    return study;
}

}  // namespace allee
