#pragma once

#include <string>
#include <vector>

#include "adwave/energy.hpp"
#include "adwave/grid.hpp"
#include "adwave/potential.hpp"

namespace adwave {

// Force term in the momentum equation: phi'(u) (adhesion) or +u (the
// linear homogeneous problem used for the e^{-t} decay checks).
enum class ForceMode { adhesion, linear };

std::string to_string(ForceMode m);

// One field of initial data (used for both u0 and v0).
struct InitialField {
    enum class Kind { constant, cosine_mode, gaussian, from_file };
    Kind kind = Kind::constant;
    double value = 0.0;      // constant
    double amplitude = 0.0;  // cosine_mode, gaussian
    int mode = 0;            // cosine_mode: amplitude * cos(mode*pi*x/L) + offset
    double offset = 0.0;     // cosine_mode, gaussian
    double center = 0.0;     // gaussian
    double width = 1.0;      // gaussian
    std::string path;        // from_file: CSV with header x,value and one row per node

    void validate() const;
    std::vector<double> evaluate(const Grid1D& g) const;
};

struct InitialData {
    InitialField u;
    InitialField v;
};

struct RunConfig {
    PotentialParams potential;
    Grid1D grid;
    double dt = 1e-3;
    double t_final = 1.0;
    InitialData initial;
    int sample_every = 10;
    ForceMode force = ForceMode::adhesion;
    double lambda = 0.5;       // weight in the G_lambda ledger column
    double reference_u = 0.0;  // equilibrium reference for G_lambda and h1_dev

    void validate() const;  // throws ConfigError (quotes the CFL bound on violation)
};

// Mirror-ghost Neumann Laplacian: interior (u_{j-1} - 2u_j + u_{j+1})/dx^2,
// boundaries 2(u_1 - u_0)/dx^2 and 2(u_{N-1} - u_N)/dx^2.
std::vector<double> neumann_laplacian(const PdeState& s);

// 0.5 * min(dx, 1/sqrt(1 + 2(u_star*sigma - 1))).
double cfl_limit(const Grid1D& g, const PotentialParams& p);

struct StepResult {
    PdeState state;
    std::vector<double> v_half;  // midpoint velocity, for dissipation accounting
};

// One step of the damped splitting scheme:
//   a0 = Lap(u) - f(u);  v_half = e^{-dt/2} v + (1 - e^{-dt/2}) a0;
//   u+ = u + dt v_half;  a1 = Lap(u+) - f(u+);
//   v+ = e^{-dt/2} v_half + (1 - e^{-dt/2}) a1.
// The damping substep is integrated exactly, which keeps the scheme second
// order and makes force-free (plateau) dynamics exact.
StepResult step(const PdeState& s, double dt, const PotentialParams& p,
                ForceMode force = ForceMode::adhesion);

struct Sample {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

struct Trajectory {
    Grid1D grid;
    std::vector<Sample> samples;
    std::vector<LedgerRow> ledger;
};

// Runs the scheme from cfg.initial to t_final, sampling every
// cfg.sample_every steps (plus the final step).  Deterministic:
// identical configs produce bit-identical trajectories.
Trajectory simulate(const RunConfig& cfg);

}  // namespace adwave
