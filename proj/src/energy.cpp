#include "adwave/energy.hpp"

#include <cmath>

#include "adwave/errors.hpp"

namespace adwave {

double total_energy(const PdeState& s, const PotentialParams& p) {
    s.validate();
    const double dx = s.grid.dx();
    double pot = 0.0;
    {
        const std::size_t n = s.u.size();
        double sum = 0.5 * (phi(p, s.u[0]) + phi(p, s.u[n - 1]));
        for (std::size_t j = 1; j + 1 < n; ++j) sum += phi(p, s.u[j]);
        pot = dx * sum;
    }
    return 0.5 * trap_norm_sq(s.v, dx) + 0.5 * grad_norm_sq(s.u, dx) + pot;
}

double functional_j(const PdeState& s) {
    s.validate();
    const double dx = s.grid.dx();
    return 0.5 * trap_norm_sq(s.u, dx) + trap_inner(s.u, s.v, dx);
}

double functional_g(const PdeState& s) {
    s.validate();
    const double dx = s.grid.dx();
    return 0.5 * trap_norm_sq(s.v, dx) + 0.5 * grad_norm_sq(s.u, dx) +
           0.5 * trap_norm_sq(s.u, dx) + 0.5 * trap_inner(s.u, s.v, dx);
}

double functional_g_lambda(const PdeState& s, double lambda, double u_inf,
                           const PotentialParams& p) {
    s.validate();
    if (!(lambda > 0.0 && lambda < 1.0))
        throw ParameterError("lambda must lie in (0,1), got " + std::to_string(lambda));
    const double dx = s.grid.dx();
    const double ref = phi(p, u_inf);
    const std::size_t n = s.u.size();
    double pot = 0.0, cross = 0.0;
    {
        double sp = 0.5 * ((phi(p, s.u[0]) - ref) + (phi(p, s.u[n - 1]) - ref));
        double sc = 0.5 * ((s.u[0] - u_inf) * s.v[0] + (s.u[n - 1] - u_inf) * s.v[n - 1]);
        for (std::size_t j = 1; j + 1 < n; ++j) {
            sp += phi(p, s.u[j]) - ref;
            sc += (s.u[j] - u_inf) * s.v[j];
        }
        pot = dx * sp;
        cross = dx * sc;
    }
    return 0.5 * trap_norm_sq(s.v, dx) + 0.5 * grad_norm_sq(s.u, dx) + pot + lambda * cross;
}

namespace {

ResidualProfile residual(const std::vector<LedgerRow>& rows, bool energy_balance) {
    if (rows.size() < 2) throw PreconditionError("balance residual needs at least 2 ledger rows");
    ResidualProfile prof;
    prof.t.reserve(rows.size());
    prof.r.reserve(rows.size());
    const double denom = energy_balance ? std::max(rows.front().E, 1e-12)
                                        : std::max(std::abs(rows.front().J) + rows.front().E, 1e-12);
    for (const auto& row : rows) {
        const double defect = energy_balance ? (row.E + row.D - rows.front().E)
                                             : (row.J + row.S - rows.front().J);
        const double r = std::abs(defect) / denom;
        prof.t.push_back(row.t);
        prof.r.push_back(r);
        prof.max_residual = std::max(prof.max_residual, r);
    }
    return prof;
}

}  // namespace

ResidualProfile balance_residual_E(const std::vector<LedgerRow>& rows) {
    return residual(rows, true);
}

ResidualProfile balance_residual_J(const std::vector<LedgerRow>& rows) {
    return residual(rows, false);
}

}  // namespace adwave
