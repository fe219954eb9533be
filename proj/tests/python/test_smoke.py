"""Smoke tests for the compiled adwave module."""

import json
import math

import pytest

import adwave


def test_potential_values():
    p = adwave.PotentialParams(u_star=1.0, sigma=4.0)
    assert adwave.phi(p, 0.9) == pytest.approx(0.72, abs=1e-14)
    assert adwave.dphi(p, 0.9) == pytest.approx(0.6, abs=1e-14)
    assert adwave.phi(p, 2.0) == p.plateau()
    rep = adwave.check_properties(p)
    assert rep.all_ok()


def test_invalid_parameters_raise_value_error():
    with pytest.raises(ValueError):
        adwave.phi(adwave.PotentialParams(1.0, 1.0), 0.3)
    with pytest.raises(ValueError):
        adwave.run_config_from_json(json.dumps({"dt": 99.0}))
    with pytest.raises(ValueError):
        adwave.run_config_from_json("{nope")


def test_simulate_and_classify():
    cfg = adwave.run_config_from_json(
        json.dumps(
            {
                "grid": {"cells": 32},
                "dt": 0.01,
                "t_final": 2.0,
                "initial": {"u": {"kind": "constant", "value": 2.0}},
            }
        )
    )
    traj = adwave.simulate(cfg)
    rows = traj.ledger
    assert rows[0].t == 0.0
    assert rows[-1].t == pytest.approx(2.0)
    # plateau rest state: energy stays put, nothing moves
    assert rows[-1].E == rows[0].E
    rep = adwave.detect_equilibrium(traj, cfg.potential)
    assert rep.classification == "detached_plus"
    assert rep.u_inf == pytest.approx(2.0, abs=1e-12)


def test_energy_decreases_for_oscillating_data():
    cfg = adwave.run_config_from_json(
        json.dumps(
            {
                "grid": {"cells": 64},
                "dt": 0.002,
                "t_final": 1.0,
                "initial": {
                    "u": {"kind": "cosine_mode", "amplitude": 0.1, "mode": 1}
                },
            }
        )
    )
    rows = adwave.simulate(cfg).ledger
    energies = [r.E for r in rows]
    assert energies[0] > 0.0
    assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))
    assert energies[-1] < energies[0]


def test_hybrid_ode_chain():
    p = adwave.OdeParams(sigma=10.0)
    assert p.lambda_() * (p.lambda_() - 1.0) == pytest.approx(2.0 * (p.sigma - 1.0))
    traj = adwave.solve_exact(2.0, -3.0, p, 40.0)
    assert traj.case_trace == ["IV", "V", "VI"]
    assert traj.z_inf == 0.0
    assert traj.middle_transits == 1
    z0, w0 = traj.eval(0.0)
    assert (z0, w0) == (2.0, -3.0)
    # first leg: z(t) = 2 - 3(1 - e^-t) until z hits 1
    z, w = traj.eval(0.2)
    assert z == pytest.approx(2.0 - 3.0 * (1.0 - math.exp(-0.2)), abs=1e-12)
    assert w == pytest.approx(-3.0 * math.exp(-0.2), abs=1e-12)


def test_oracle_agrees_with_closed_form():
    p = adwave.OdeParams(sigma=2.0)
    exact = adwave.solve_exact(1.5, 1.0, p, 25.0)
    oracle = adwave.rk_oracle(1.5, 1.0, p, 10.0, 1e-10)
    for k in range(0, 101):
        t = 0.1 * k
        assert exact.eval(t)[0] == pytest.approx(oracle.eval(t)[0], abs=1e-7)


def test_run_experiment_writes_artifacts(tmp_path):
    config = {"kind": "potential-table", "table": {"sigma": 4.0}, "out": "tbl"}
    status = adwave.run_experiment(json.dumps(config), str(tmp_path))
    assert status == 0
    csv = tmp_path / "tbl.csv"
    assert csv.exists()
    assert csv.read_text().splitlines()[0] == "u,phi,dphi"
    summary = json.loads((tmp_path / "tbl_summary.json").read_text())
    assert summary["rows"] == 401
