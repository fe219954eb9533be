#include <cmath>
#include <vector>

#include "doctest.h"

#include "adwave/energy.hpp"
#include "adwave/errors.hpp"
#include "adwave/pde.hpp"

using namespace adwave;

namespace {

PdeState make_state(const Grid1D& g, double u, double v) {
    PdeState s;
    s.grid = g;
    s.u.assign(g.nodes(), u);
    s.v.assign(g.nodes(), v);
    return s;
}

}  // namespace

TEST_CASE("energy of simple states") {
    const PotentialParams p{1.0, 2.0};
    CHECK(total_energy(make_state({1.0, 8}, 0.0, 0.0), p) == 0.0);
    // Plateau state: only the potential integral contributes, phi = 0.5.
    CHECK(total_energy(make_state({1.0, 8}, 2.0, 0.0), p) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(total_energy(make_state({2.0, 8}, 0.0, 1.0), p) == doctest::Approx(1.0).epsilon(1e-14));
    // Gradient contribution: u = x has |u'|^2 = 1 per cell.
    {
        const Grid1D g{1.0, 16};
        PdeState s = make_state(g, 0.0, 0.0);
        for (std::size_t j = 0; j < g.nodes(); ++j) s.u[j] = 0.1 * g.node(j);
        const double pot = 0.01 / 3.0;  // integral of (0.1 x)^2 up to quadrature error
        const double e = total_energy(s, p);
        CHECK(e == doctest::Approx(0.5 * 0.01 + pot).epsilon(1e-3));
    }
}

TEST_CASE("auxiliary functional J") {
    CHECK(functional_j(make_state({1.0, 8}, 0.0, 0.0)) == 0.0);
    CHECK(functional_j(make_state({3.0, 8}, 1.0, 0.0)) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(functional_j(make_state({1.0, 8}, 1.0, -1.0)) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("linear functional G") {
    CHECK(functional_g(make_state({1.0, 8}, 0.0, 0.0)) == 0.0);
    CHECK(functional_g(make_state({1.0, 8}, 1.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(functional_g(make_state({1.0, 8}, 1.0, 1.0)) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("descent functional G_lambda") {
    const PotentialParams p{1.0, 2.0};
    // At a plateau equilibrium relative to itself everything cancels.
    CHECK(functional_g_lambda(make_state({1.0, 8}, 2.0, 0.0), 0.5, 2.0, p) == 0.0);
    CHECK(functional_g_lambda(make_state({1.0, 8}, 3.0, 0.0), 0.5, 2.0, p) == 0.0);
    CHECK(functional_g_lambda(make_state({1.0, 8}, 0.0, 1.0), 0.5, 0.0, p) ==
          doctest::Approx(0.5).epsilon(1e-14));
    // Cross term: lambda <u - u_inf, v> = 0.5 * (2-0)*1 * L.
    CHECK(functional_g_lambda(make_state({1.0, 8}, 2.0, 1.0), 0.5, 0.0, p) ==
          doctest::Approx(0.5 + 0.5 + 1.0).epsilon(1e-14));
    CHECK_THROWS_AS(functional_g_lambda(make_state({1.0, 8}, 0.0, 0.0), 0.0, 0.0, p),
                    ParameterError);
    CHECK_THROWS_AS(functional_g_lambda(make_state({1.0, 8}, 0.0, 0.0), 1.0, 0.0, p),
                    ParameterError);
}

TEST_CASE("ledger functionals match the standalone evaluations at t = 0") {
    RunConfig cfg;
    cfg.potential = {1.0, 4.0};
    cfg.grid = {1.0, 64};
    cfg.dt = 0.001;
    cfg.t_final = 0.01;
    cfg.lambda = 0.25;
    cfg.reference_u = 0.0;
    cfg.initial.u.kind = InitialField::Kind::cosine_mode;
    cfg.initial.u.amplitude = 0.2;
    cfg.initial.u.mode = 2;
    cfg.initial.v.kind = InitialField::Kind::cosine_mode;
    cfg.initial.v.amplitude = 0.1;
    cfg.initial.v.mode = 1;
    const auto traj = simulate(cfg);
    PdeState s;
    s.grid = cfg.grid;
    s.u = traj.samples.front().u;
    s.v = traj.samples.front().v;
    const auto& row = traj.ledger.front();
    CHECK(row.E == doctest::Approx(total_energy(s, cfg.potential)).epsilon(1e-13));
    CHECK(row.J == doctest::Approx(functional_j(s)).epsilon(1e-13));
    CHECK(row.G == doctest::Approx(functional_g(s)).epsilon(1e-13));
    CHECK(row.G_lambda ==
          doctest::Approx(functional_g_lambda(s, 0.25, 0.0, cfg.potential)).epsilon(1e-13));
    CHECK(row.D == 0.0);
    CHECK(row.S == 0.0);
}

TEST_CASE("balance residuals vanish on an equilibrium and catch corruption") {
    RunConfig cfg;
    cfg.potential = {1.0, 2.0};
    cfg.grid = {1.0, 16};
    cfg.dt = 0.01;
    cfg.t_final = 0.2;
    cfg.initial.u.kind = InitialField::Kind::constant;
    cfg.initial.u.value = 2.0;
    const auto traj = simulate(cfg);
    CHECK(balance_residual_E(traj.ledger).max_residual == 0.0);
    CHECK(balance_residual_J(traj.ledger).max_residual <= 1e-15);

    // A tampered dissipation column must show up in the residual.
    RunConfig live = cfg;
    live.initial.u.kind = InitialField::Kind::cosine_mode;
    live.initial.u.amplitude = 0.3;
    live.initial.u.mode = 1;
    live.t_final = 2.0;
    auto ledger = simulate(live).ledger;
    const double honest = balance_residual_E(ledger).max_residual;
    CHECK(honest <= 2e-3);
    for (auto& row : ledger) row.D *= 1.5;
    // Half the dissipated energy reappears as a defect: O(1), not O(dt^2).
    CHECK(balance_residual_E(ledger).max_residual > 0.05);

    CHECK_THROWS_AS(balance_residual_E(std::vector<LedgerRow>{LedgerRow{}}), PreconditionError);
    CHECK_THROWS_AS(balance_residual_J(std::vector<LedgerRow>{}), PreconditionError);
}

TEST_CASE("profiles line up with the ledger rows") {
    RunConfig cfg;
    cfg.potential = {1.0, 2.0};
    cfg.grid = {1.0, 32};
    cfg.dt = 0.005;
    cfg.t_final = 1.0;
    cfg.sample_every = 20;
    cfg.initial.u.kind = InitialField::Kind::cosine_mode;
    cfg.initial.u.amplitude = 0.1;
    cfg.initial.u.mode = 1;
    const auto traj = simulate(cfg);
    const auto prof = balance_residual_E(traj.ledger);
    REQUIRE(prof.t.size() == traj.ledger.size());
    REQUIRE(prof.r.size() == traj.ledger.size());
    CHECK(prof.t.front() == 0.0);
    CHECK(prof.r.front() == 0.0);
    double m = 0.0;
    for (double r : prof.r) m = std::max(m, r);
    CHECK(prof.max_residual == m);
}

TEST_CASE("energy decays monotonically along the damped flow") {
    RunConfig cfg;
    cfg.potential = {1.0, 2.0};
    cfg.grid = {1.0, 64};
    cfg.dt = cfg.grid.dx() / 4.0;
    cfg.t_final = 3.0;
    cfg.sample_every = 1;
    cfg.initial.u.kind = InitialField::Kind::cosine_mode;
    cfg.initial.u.amplitude = 0.3;
    cfg.initial.u.mode = 1;
    cfg.initial.v.kind = InitialField::Kind::cosine_mode;
    cfg.initial.v.amplitude = 0.2;
    cfg.initial.v.mode = 2;
    const auto traj = simulate(cfg);
    const double slack = 10.0 * cfg.dt * cfg.dt;
    for (std::size_t i = 1; i < traj.ledger.size(); ++i) {
        CHECK(traj.ledger[i].E <= traj.ledger[i - 1].E + slack);
        // J - D decreases too: d/dt J = ||v||^2 - ||grad u||^2 - <u, phi'(u)>.
        CHECK(traj.ledger[i].J - traj.ledger[i].D <=
              traj.ledger[i - 1].J - traj.ledger[i - 1].D + slack);
    }
}
