#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adwave {

// Scalar hybrid system z'' + z' + phi'(z) = 0 with u_star = 1: the phase
// plane splits into the outer plateaus |z| >= 1, the middle bands
// 1 - 1/sigma <= |z| <= 1, and the inner elastic band |z| <= 1 - 1/sigma,
// each with an explicit closed-form flow.
struct OdeParams {
    double sigma = 2.0;

    void validate() const;  // requires sigma >= 1

    double disc() const { return std::sqrt(1.0 + 8.0 * (sigma - 1.0)); }
    double lambda() const { return 0.5 * (1.0 + disc()); }
    double mu() const { return 0.5 * (-1.0 + disc()); }
    double band_edge() const { return 1.0 - 1.0 / sigma; }

    static double omega() { return 0.5 * std::sqrt(7.0); }
};

enum class Regime { outer_plus, outer_minus, middle_plus, middle_minus, inner };

std::string to_string(Regime r);

// Entry-condition labels I..VII, with `mirrored` marking the z -> -z,
// w -> -w reflection of the listed configuration.
enum class CaseLabel { I, II, III, IV, V, VI, VII };

struct Classification {
    CaseLabel label = CaseLabel::II;
    bool mirrored = false;
    Regime regime = Regime::inner;
};

std::string to_string(const Classification& c);

// Total on finite inputs.  Boundary points resolve by velocity sign;
// (band edge, 0) enters the inner band; (threshold, 0) is an equilibrium.
Classification classify_case(double z, double w, const OdeParams& p);

// Closed-form flow of one regime, in segment-local time s >= 0:
//   outer:  z = sign*(c1 + c2*(1 - e^{-s}))
//   middle: z = sign*(1 - c1 e^{mu s} - c2 e^{-lambda s})
//   inner:  z = e^{-s/2}(c1 cos(omega s) + c2 sin(omega s))
struct RegimeSolution {
    Regime regime = Regime::inner;
    double sign = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double lambda = 0.0;  // middle only
    double mu = 0.0;      // middle only

    double z(double s) const;
    double w(double s) const;
};

// Builds the closed form matching z(0) = z0, w(0) = w0.  The data must lie
// in the regime's closure (to 1e-9), otherwise PreconditionError.
RegimeSolution regime_solution(Regime regime, double z0, double w0, const OdeParams& p);

struct Event {
    double s = 0.0;       // segment-local event time
    double z_exit = 0.0;  // boundary value, snapped exactly
    double w_exit = 0.0;
};

// Earliest s > 0 at which the closed form reaches a regime boundary from
// inside, localized by a forward scan (step min(0.01, pi/(4 omega))) and
// bisection to |ds| <= 1e-13; nullopt when the segment provably stays
// in-regime forever.
std::optional<Event> next_event(const RegimeSolution& sol, const OdeParams& p);

struct Segment {
    double t_begin = 0.0;
    double t_end = 0.0;  // +inf for an eternal final segment
    double z_begin = 0.0;
    double w_begin = 0.0;
    Classification entry;
    RegimeSolution sol;
};

struct PiecewiseTrajectory {
    std::vector<Segment> segments;
    std::optional<double> z_inf;  // empty when the horizon truncated the run
    std::vector<Classification> case_trace;
    int middle_transits = 0;
    int inner_band_crossings = 0;

    std::pair<double, double> eval(double t) const;  // (z, w)
    const Segment& segment_at(double t) const;
};

// Chains classify -> closed form -> event until no event occurs before
// t_max.  Throws ConsistencyError past 8 segments (the case analysis bounds
// the transition count).
PiecewiseTrajectory solve_exact(double z0, double w0, const OdeParams& p, double t_max);

// --- reference integrator -------------------------------------------------

struct OracleNode {
    double t, z, w, dz, dw;
};

struct OracleTrajectory {
    std::vector<OracleNode> nodes;
    std::pair<double, double> eval(double t) const;  // cubic Hermite between nodes
};

// Adaptive embedded Runge-Kutta 5(4) on the full nonlinear equation with
// the potential module's force at u_star = 1.  tol must lie in
// [1e-12, 1e-6]; step underflow raises StiffnessError.
OracleTrajectory rk_oracle(double z0, double w0, const OdeParams& p, double t_max, double tol);

// --- uniform decay verification --------------------------------------------

struct DecayCheck {
    std::vector<double> sigmas;
    std::vector<std::pair<double, double>> battery;
    std::vector<std::vector<double>> M;  // [datum][sigma]
    std::vector<double> ratio;           // per-datum max/min of M across sigmas
    double max_ratio = 0.0;
    double max_abs_z_inf = 0.0;
    int max_middle_transits = 0;
    int max_inner_band_crossings = 0;
    bool envelope_ok = false;   // every run converged with finite M and
                                // |z - z_inf| <= M e^{-t/2} on the grid
    bool structure_ok = false;  // <= 2 middle transits, <= 1 band crossing
};

// For each datum and sigma, M(sigma) = max over t = 0, 0.01, ..., t_max of
// |z(t) - z_inf| e^{t/2}, skipping samples with |z - z_inf| < 1e-13.
// Battery points strictly inside a middle band for some sigma are rejected
// (PreconditionError); non-converged runs raise ConsistencyError.
DecayCheck verify_uniform_decay(const std::vector<std::pair<double, double>>& battery,
                                const std::vector<double>& sigmas, double t_max = 30.0);

// 25 sigma-independent data covering all reachable configurations for
// sigma >= 10.
std::vector<std::pair<double, double>> default_battery();

// 25 data covering entry cases I..VII for the given sigma (band-edge points
// depend on sigma).
std::vector<std::pair<double, double>> case_battery(const OdeParams& p);

}  // namespace adwave
