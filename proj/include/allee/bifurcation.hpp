#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "allee/classification.hpp"
#include "allee/dynamics.hpp"
#include "allee/equilibria.hpp"
#include "allee/model.hpp"

namespace allee {

// ---------------------------------------------------------------- saddle-node

struct SaddleNodeReport {
    double h_critical = 0.25;
    State point;
    Vec2 v{}, w{};        // right / left null vectors of J(E1)
    Vec2 f_h{}, d2f_vv{};  // parameter derivative and second directional derivative
    double t1 = 0, t2 = 0;
    double jv_residual = 0, jtw_residual = 0;
};

// Transversality at the boundary fold h = 1/4. v = (1, 0) and w = 2(-J22, J12),
// which reproduces w = (2sm, -q).
SaddleNodeReport saddle_node_check(const ModelParams& p);

// Number of boundary equilibria at each harvest value (other parameters from p).
std::vector<int> boundary_counts(const ModelParams& p, const std::vector<double>& h_values);

// ----------------------------------------------------------------------- Hopf

struct HopfCritical {
    Label label = Label::E8;
    State point;
    double s_critical = 0;
    double dtrace_ds = 0;
    double det = 0;
};

// s in p is ignored. Only E8 and E9 are accepted.
HopfCritical hopf_critical(const ModelParams& p, Label which);

enum class HopfDirection { Supercritical, Subcritical, Undetermined };
std::string_view hopf_direction_name(HopfDirection d);
HopfDirection parse_hopf_direction(std::string_view text);

// Terms of the first Lyapunov coefficient for a weak focus with linear part
// (a, b, c, d) = (a10, a01, b10, b01) and Taylor coefficients from a Jet3.
struct LyapunovTerms {
    double M = 0;
    std::array<double, 8> phi{};      // general weak-focus formula; decides the direction
    std::array<double, 8> phi_alt{};  // alternative term-by-term expansion, for comparison only
    double sigma = 0;
    double sigma_b02 = 0;  // general formula with a11*b02 in place of a11*b20 in the a*b term
    double sigma_alt = 0;  // sum of phi_alt
};

LyapunovTerms lyapunov_terms(const Jet3& jet);

enum class CycleStability { Attracting, Repelling };
std::string_view cycle_stability_name(CycleStability c);
CycleStability parse_cycle_stability(std::string_view text);

struct LimitCycleEvidence {
    double s_used = 0;
    Section section;
    double fixed_point = 0;  // section coordinate x of the cycle
    double amplitude = 0;    // fixed_point - x_e
    double period = 0;
    double residual = 0;     // |P(x*) - x*|
    double multiplier = 0;   // forward-time return-map derivative
    CycleStability stability = CycleStability::Attracting;
    int iterations = 0;
    int search_direction = +1;  // time direction in which the iteration converged
};

struct NoCycle {
    double s_used = 0;
    std::string reason;
    int iterations = 0;
};

using HopfSide = std::variant<LimitCycleEvidence, NoCycle>;

struct HopfEvidence {
    double offset = 0;
    HopfSide minus, plus;  // at s_critical - offset and s_critical + offset
    bool consistent = false;
};

struct HopfReport {
    ModelParams params;  // s = s_critical
    HopfCritical critical;
    LyapunovTerms terms;
    HopfDirection direction = HopfDirection::Undetermined;
    std::optional<HopfEvidence> evidence;
};

// p.s must be the critical value; e must be a weak center.
HopfReport first_lyapunov(const ModelParams& p, const Equilibrium& e);

// Poincare return map on the ray {y = y_e, x > x_e}, measured as the offset
// xi = x - x_e. Trajectories leaving the disc of the given radius around the
// equilibrium count as not returning.
class ReturnMap {
public:
    ReturnMap(const ModelParams& p, State center, int time_direction, double radius, double max_time,
              double rel_tol = 1e-11);

    struct Hit {
        double xi;
        double time;
    };
    std::optional<Hit> operator()(double xi) const;

    const Section& section() const { return section_; }
    double radius() const { return radius_; }

private:
    ModelParams p_;
    State center_;
    Section section_;
    int direction_;
    double radius_, max_time_, rel_tol_;
};

HopfSide simulate_hopf_side(const ModelParams& p, const Equilibrium& e, double s_critical, double offset);

// True when the observed sides match the super/subcritical prediction for sigma.
bool hopf_sides_consistent(double sigma, double dtrace_ds, const HopfEvidence& ev);

HopfEvidence hopf_evidence(const ModelParams& p, const Equilibrium& e, double s_critical, double dtrace_ds,
                           double sigma, double offset);

// Scans the forward (then the reversed) return map for sign changes of P(xi) - xi on [xi_lo, xi_hi]
// and refines the first bracket found. Orbits leaving the disc of the given
// radius (default 1.5 xi_hi) count as not returning.
std::optional<LimitCycleEvidence> scan_for_cycle(const ModelParams& p, State center, double xi_lo, double xi_hi,
                                                 int samples, double max_time, double radius = 0);

// ------------------------------------------------------------ Bogdanov-Takens

struct NamedValue {
    std::string name;
    double value;
};

struct ChainStage {
    std::string name;  // "shifted", "linear", "near_identity", ...
    std::vector<NamedValue> coefficients;
};

struct StageCheck {
    std::string name;
    double residual = 0;       // evaluate-then-transform vs truncated-polynomial pushforward
    double closed_form_gap = 0;  // closed-form quadratic coefficients vs the pushforward's
};

struct BTReport {
    double q = 0, m = 0;
    double h3 = 0, s1 = 0;
    State center;
    double eta1 = 0, eta2 = 0;
    std::vector<ChainStage> stages;
    double l00 = 0, l01 = 0;
    int f20_sign = -1;
    std::array<double, 4> jacobian{};  // d(l00, l01)/d(eta1, eta2) at eta = 0, row-major
    double j_unfold = 0;
};

BTReport bt_unfold(double q, double m, double eta1, double eta2);

// Stage-by-stage self-check of the chain at the given perturbation.
std::vector<StageCheck> bt_chain_self_check(double q, double m, double eta1, double eta2, int points = 20,
                                            double radius = 1e-3, unsigned seed = 12345);

enum class Regime { NoEquilibrium, Single, SaddleStable, SaddleUnstable, SaddleWeak, Cycle, Escape, Other };
std::string_view regime_name(Regime r);
Regime parse_regime(std::string_view text);

struct CensusCell {
    std::size_t index = 0;
    double eta1 = 0, eta2 = 0;
    int equilibrium_count = 0;
    bool cycle_found = false;
    Regime regime = Regime::Other;
};

struct CensusOptions {
    double near_radius_factor = 0.5;  // counts equilibria within factor * x7 of the organizing centre
    int scan_samples = 48;
    unsigned workers = 0;
};

std::vector<CensusCell> bt_phase_census(double q, double m, const std::vector<double>& eta1_values,
                                        const std::vector<double>& eta2_values, const CensusOptions& opt = {});

// n evenly spaced values on [lo, hi] (n >= 2) or {lo} for n == 1.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace allee
