#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "allee/model.hpp"

namespace allee {

struct IntegratorConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 1.0;
    double max_time = 100.0;
    double box_x = 10.0, box_y = 10.0;  // escape box [0, box_x] x [0, box_y]
    double escape_floor = 1e-9;          // x <= escape_floor ends the run
    int direction = +1;                  // -1 integrates in reversed time
    bool record = true;                  // keep every accepted step
    bool stop_on_convergence = true;
    double converge_tol = 1e-10;
    int converge_steps = 10;
    std::size_t max_steps = 5'000'000;

    void validate() const;
};

enum class Termination { TimeLimit, Converged, Escaped, Stopped };

std::string_view termination_name(Termination t);
Termination parse_termination(std::string_view text);

struct Sample {
    double t;
    State z;
};

// t is elapsed integration time; with direction = -1 the physical time is -t.
struct Trajectory {
    std::vector<Sample> samples;
    Termination reason = Termination::TimeLimit;
    int direction = +1;
    double final_time = 0;
    State final_state;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

// One accepted step; f0, f1 are derivatives with respect to integration time.
struct StepInfo {
    double t0, t1;
    State z0, z1;
    Vec2 f0, f1;
};

// Return false to stop the integration after this step.
using StepObserver = std::function<bool(const StepInfo&)>;

Trajectory integrate(const ModelParams& p, State z0, const IntegratorConfig& cfg, const StepObserver& observer = {});

// Cubic Hermite interpolation inside an accepted step.
State hermite(const StepInfo& step, double t);

// Poincare section: the ray {y = y0, x > x0} crossed with dy/dt of sign `direction`
// (derivative in integration time).
struct Section {
    double x0 = 0, y0 = 0;
    int direction = +1;
};

struct Crossing {
    double t;
    double x;
};

class CrossingDetector {
public:
    explicit CrossingDetector(Section s) : section_(s) {}
    // Returns the crossing located inside this step, if any.
    bool observe(const StepInfo& step);
    const std::vector<Crossing>& hits() const { return hits_; }

private:
    Section section_;
    std::vector<Crossing> hits_;
};

std::vector<Crossing> crossings(const ModelParams& p, const Trajectory& traj, const Section& section);

enum class Direction { Forward, Backward, Both };

struct PortraitSpec {
    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    int rows = 1, cols = 1;
    double horizon = 100;
    Direction direction = Direction::Forward;

    void validate() const;
};

struct PortraitTrajectory {
    std::size_t seed = 0;
    State seed_point;
    int direction = +1;
    Trajectory trajectory;
};

// Seeds at cell centres, row-major from the lower-left cell.
std::vector<State> portrait_seeds(const PortraitSpec& spec);

std::vector<PortraitTrajectory> portrait(const ModelParams& p, const PortraitSpec& spec,
                                         const IntegratorConfig& base = {}, unsigned workers = 0);

// Error versus work for the adaptive integrator on [0, horizon].
struct OrderPoint {
    double tolerance;
    std::size_t steps;
    double error;
};

struct OrderStudy {
    std::vector<OrderPoint> points;
    double order;  // -slope of log(error) against log(steps)
};

OrderStudy convergence_order(const ModelParams& p, State z0, double horizon, const std::vector<double>& tolerances,
                             double reference_tol = 1e-13);

}  // namespace allee
