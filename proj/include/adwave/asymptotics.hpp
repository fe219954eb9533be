#pragma once

#include <string>
#include <vector>

#include "adwave/pde.hpp"

namespace adwave {

enum class EquilibriumClass { zero, detached_plus, detached_minus, critical_band, undecided };

std::string to_string(EquilibriumClass c);

struct EquilibriumReport {
    EquilibriumClass classification = EquilibriumClass::undecided;
    double u_inf = 0.0;          // trailing average of the spatial mean
    double velocity_norm = 0.0;  // max ||v|| over the trailing samples
    double oscillation = 0.0;    // max (max u - min u) over the trailing samples
};

// Classifies the trailing samples of a run (the last `trailing` samples;
// 0 means max(3, sample count / 20)).  Requires >= 3 trailing samples.
// The state counts as settled when velocity_norm <= tol and
// oscillation <= tol; the mean is then classified against
// (-tol, tol) -> zero, (u_star + tol, inf) -> detached_plus,
// (-inf, -u_star - tol) -> detached_minus,
// [u_star - tol, u_star + tol] (either sign) -> critical_band.
EquilibriumReport detect_equilibrium(const Trajectory& traj, const PotentialParams& p,
                                     double tol = 1e-4, std::size_t trailing = 0);

// |u_inf| = sqrt(2 ell / L).  Requires ell >= 0.
double predict_u_inf_modulus(double ell, double domain_length);

struct EllEstimate {
    double ell = 0.0;
    double stddev = 0.0;
};

// Average of J over the trailing 10% of ledger rows, with the trailing
// standard deviation as uncertainty.
EllEstimate ell_limit(const std::vector<LedgerRow>& ledger);

struct DecayFit {
    double kappa = 0.0;  // decay rate (minus the log-linear slope)
    double M = 0.0;      // amplitude exp(intercept)
    double t_begin = 0.0;
    double t_end = 0.0;
    double r_squared = 0.0;
    std::string series;
};

struct SeriesPoint {
    double t = 0.0;
    double y = 0.0;
};

// Least-squares line through (t, log y) on the window [t_begin, t_end].
// Requires >= 10 samples in the window, all y > 0.
DecayFit fit_decay(const std::vector<SeriesPoint>& series, double t_begin, double t_end,
                   std::string name = "");

struct MeanFit {
    double a = 0.0;
    double b = 0.0;
    double max_residual = 0.0;
};

// Fits the spatial mean to a + b e^{-t} over [t_begin, t_end].  Requires the
// window to be fully detached (every node of every sample has |u| > u_star).
MeanFit average_ode_check(const Trajectory& traj, const PotentialParams& p,
                          double t_begin, double t_end);

// Earliest sample time after which every later sample satisfies the target
// regime's nodal condition (zero: max|u| < u_star - 1/sigma;
// detached_plus: min u > u_star; detached_minus: max u < -u_star).
// Throws PreconditionError if the trajectory never settles into the regime.
double regime_entry_time(const Trajectory& traj, const PotentialParams& p,
                         EquilibriumClass target);

// y(t) = ||u - u_inf||_{H^1} + ||v||, the series used for the decay-rate fit.
std::vector<SeriesPoint> deviation_series(const Trajectory& traj, double u_inf);

}  // namespace adwave
