#pragma once

#include <cstddef>
#include <vector>

namespace adwave {

// Piecewise-quadratic adhesion potential: an elastic u^2 core for
// |u| <= u_star - 1/sigma, a concave matching branch of width 1/sigma,
// and a flat force-free plateau beyond the detachment threshold u_star.
struct PotentialParams {
    double u_star = 1.0;
    double sigma = 2.0;

    // Edge of the inner elastic band, u_star - 1/sigma.
    double band_edge() const { return u_star - 1.0 / sigma; }
    // Plateau value u_star * (u_star - 1/sigma).
    double plateau() const { return u_star * band_edge(); }
    // Middle-branch coefficient u_star*sigma - 1 (> 0 for valid params).
    double stiffness() const { return u_star * sigma - 1.0; }

    // Throws ParameterError unless u_star > 0 and sigma*u_star > 1.
    void validate() const;
};

double phi(const PotentialParams& p, double u);
double dphi(const PotentialParams& p, double u);

struct PropertyReport {
    double max_abs_phi = 0.0;         // sup |phi| over the sweep
    double max_abs_dphi = 0.0;        // sup |phi'| over the sweep
    double max_dphi_slope = 0.0;      // sup |finite-difference slope of phi'|
    double max_concavity_jump = 0.0;  // sup increase between consecutive slopes of phi - u^2
    double min_sign_product = 0.0;    // inf u * phi'(u)

    bool bounded_ok = false;    // |phi| <= u_star^2
    bool gradient_ok = false;   // |phi'| <= 2 max(1, u_star)
    bool lipschitz_ok = false;  // slope of phi' <= 2 max(1, u_star*sigma - 1) + tol
    bool concave_ok = false;    // slopes of phi - u^2 nonincreasing
    bool sign_ok = false;       // u phi'(u) >= 0

    // Measured gradient bound exceeds the nominal constant 2 (u_star > 1).
    bool gradient_exceeds_2 = false;
    // Measured slope exceeds the nominal 2(u_star*sigma - 1) (u_star*sigma < 2,
    // where the elastic slope 2 dominates).
    bool lipschitz_exceeds_claim = false;

    bool all_ok() const {
        return bounded_ok && gradient_ok && lipschitz_ok && concave_ok && sign_ok;
    }
};

// Sweeps `points` uniform samples over [-2 u_star, 2 u_star].  The spacing
// must resolve the middle branch: spacing <= 1/(10 u_star sigma), otherwise
// PreconditionError.
PropertyReport check_properties(const PotentialParams& p, std::size_t points);

struct TableRow {
    double u;
    double phi;
    double dphi;
};

// Samples u = from, from+step, ... up to `to` (inclusive within half a step).
std::vector<TableRow> sample_table(const PotentialParams& p, double from, double to, double step);

}  // namespace adwave
