#pragma once

#include <vector>

#include "adwave/grid.hpp"
#include "adwave/potential.hpp"

namespace adwave {

// Total energy: 1/2 ||v||^2 + 1/2 ||grad u||^2 + integral of phi(u).
double total_energy(const PdeState& s, const PotentialParams& p);

// Auxiliary functional 1/2 ||u||^2 + <u, v>; its limit selects the
// equilibrium modulus.
double functional_j(const PdeState& s);

// Linear-problem functional 1/2 ||v||^2 + 1/2 ||grad u||^2 + 1/2 ||u||^2
// + 1/2 <u, v>; decays exactly like e^{-t} along the linear flow.
double functional_g(const PdeState& s);

// Descent functional 1/2 ||v||^2 + 1/2 ||grad u||^2
// + integral of (phi(u) - phi(u_inf)) + lambda <u - u_inf, v>,
// for lambda in (0, 1).
double functional_g_lambda(const PdeState& s, double lambda, double u_inf,
                           const PotentialParams& p);

// One ledger sample.  D is the accumulated damping dissipation
// integral of ||du/dt||^2; S the accumulated J-source integral of
// ||grad u||^2 + <u, phi'(u)> - ||du/dt||^2.
struct LedgerRow {
    double t = 0.0;
    double E = 0.0;
    double J = 0.0;
    double G = 0.0;
    double G_lambda = 0.0;
    double D = 0.0;
    double S = 0.0;
    double mean_u = 0.0;
    double h1_dev = 0.0;
};

struct ResidualProfile {
    std::vector<double> t;
    std::vector<double> r;
    double max_residual = 0.0;
};

// r(t_k) = |E(t_k) + D(t_k) - E(0)| / max(E(0), 1e-12).
ResidualProfile balance_residual_E(const std::vector<LedgerRow>& rows);

// r(t_k) = |J(t_k) + S(t_k) - J(0)| / max(|J(0)| + E(0), 1e-12).
ResidualProfile balance_residual_J(const std::vector<LedgerRow>& rows);

}  // namespace adwave
