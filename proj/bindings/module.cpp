#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adwave/asymptotics.hpp"
#include "adwave/energy.hpp"
#include "adwave/experiment.hpp"
#include "adwave/ode.hpp"
#include "adwave/pde.hpp"
#include "adwave/potential.hpp"

namespace py = pybind11;
using namespace adwave;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Damped adhesion-wave laboratory: potential, PDE stepper, energy ledger, "
              "asymptotics, and the exactly solvable scalar hybrid model.";

    // --- potential ----------------------------------------------------------
    py::class_<PotentialParams>(m, "PotentialParams")
        .def(py::init<double, double>(), py::arg("u_star") = 1.0, py::arg("sigma") = 2.0)
        .def_readwrite("u_star", &PotentialParams::u_star)
        .def_readwrite("sigma", &PotentialParams::sigma)
        .def("band_edge", &PotentialParams::band_edge)
        .def("plateau", &PotentialParams::plateau)
        .def("stiffness", &PotentialParams::stiffness)
        .def("validate", &PotentialParams::validate)
        .def("__repr__", [](const PotentialParams& p) {
            return "PotentialParams(u_star=" + std::to_string(p.u_star) +
                   ", sigma=" + std::to_string(p.sigma) + ")";
        });

    m.def("phi", &phi, py::arg("params"), py::arg("u"), "Adhesion potential value");
    m.def("dphi", &dphi, py::arg("params"), py::arg("u"), "Adhesion force phi'(u)");

    py::class_<PropertyReport>(m, "PropertyReport")
        .def_readonly("max_abs_phi", &PropertyReport::max_abs_phi)
        .def_readonly("max_abs_dphi", &PropertyReport::max_abs_dphi)
        .def_readonly("max_dphi_slope", &PropertyReport::max_dphi_slope)
        .def_readonly("max_concavity_jump", &PropertyReport::max_concavity_jump)
        .def_readonly("min_sign_product", &PropertyReport::min_sign_product)
        .def_readonly("bounded_ok", &PropertyReport::bounded_ok)
        .def_readonly("gradient_ok", &PropertyReport::gradient_ok)
        .def_readonly("lipschitz_ok", &PropertyReport::lipschitz_ok)
        .def_readonly("concave_ok", &PropertyReport::concave_ok)
        .def_readonly("sign_ok", &PropertyReport::sign_ok)
        .def_readonly("gradient_exceeds_2", &PropertyReport::gradient_exceeds_2)
        .def_readonly("lipschitz_exceeds_claim", &PropertyReport::lipschitz_exceeds_claim)
        .def("all_ok", &PropertyReport::all_ok);

    m.def("check_properties", &check_properties, py::arg("params"), py::arg("points") = 100001);
    m.def(
        "sample_table",
        [](const PotentialParams& p, double from, double to, double step) {
            std::vector<std::tuple<double, double, double>> rows;
            for (const auto& r : sample_table(p, from, to, step))
                rows.emplace_back(r.u, r.phi, r.dphi);
            return rows;
        },
        py::arg("params"), py::arg("from"), py::arg("to"), py::arg("step"),
        "Rows of (u, phi, dphi)");

    // --- grid / PDE -----------------------------------------------------------
    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init<double, int>(), py::arg("length") = 1.0, py::arg("cells") = 4)
        .def_readwrite("length", &Grid1D::length)
        .def_readwrite("cells", &Grid1D::cells)
        .def("dx", &Grid1D::dx)
        .def("nodes", &Grid1D::nodes);

    m.def("cfl_limit", &cfl_limit, py::arg("grid"), py::arg("params"));

    py::class_<LedgerRow>(m, "LedgerRow")
        .def_readonly("t", &LedgerRow::t)
        .def_readonly("E", &LedgerRow::E)
        .def_readonly("J", &LedgerRow::J)
        .def_readonly("G", &LedgerRow::G)
        .def_readonly("G_lambda", &LedgerRow::G_lambda)
        .def_readonly("D", &LedgerRow::D)
        .def_readonly("S", &LedgerRow::S)
        .def_readonly("mean_u", &LedgerRow::mean_u)
        .def_readonly("h1_dev", &LedgerRow::h1_dev);

    py::class_<Sample>(m, "Sample")
        .def_readonly("t", &Sample::t)
        .def_readonly("u", &Sample::u)
        .def_readonly("v", &Sample::v);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("grid", &Trajectory::grid)
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("ledger", &Trajectory::ledger);

    py::class_<RunConfig>(m, "RunConfig")
        .def_readonly("dt", &RunConfig::dt)
        .def_readonly("t_final", &RunConfig::t_final)
        .def_readonly("sample_every", &RunConfig::sample_every)
        .def_readonly("lambda_", &RunConfig::lambda)
        .def_readonly("reference_u", &RunConfig::reference_u)
        .def_readonly("potential", &RunConfig::potential)
        .def_readonly("grid", &RunConfig::grid);

    m.def("run_config_from_json", &run_config_from_json, py::arg("text"),
          "Parse a RunConfig from its JSON document (strict keys)");
    m.def("simulate", &simulate, py::arg("config"));

    // --- asymptotics ----------------------------------------------------------
    py::class_<EquilibriumReport>(m, "EquilibriumReport")
        .def_property_readonly(
            "classification",
            [](const EquilibriumReport& r) { return to_string(r.classification); })
        .def_readonly("u_inf", &EquilibriumReport::u_inf)
        .def_readonly("velocity_norm", &EquilibriumReport::velocity_norm)
        .def_readonly("oscillation", &EquilibriumReport::oscillation);

    m.def("detect_equilibrium", &detect_equilibrium, py::arg("trajectory"), py::arg("params"),
          py::arg("tol") = 1e-4, py::arg("trailing") = 0);
    m.def("predict_u_inf_modulus", &predict_u_inf_modulus, py::arg("ell"),
          py::arg("domain_length"));
    m.def(
        "ell_limit",
        [](const Trajectory& traj) {
            const auto e = ell_limit(traj.ledger);
            return py::make_tuple(e.ell, e.stddev);
        },
        py::arg("trajectory"), "(ell, stddev) from the trailing ledger rows");
    m.def(
        "max_balance_residual_E",
        [](const Trajectory& traj) { return balance_residual_E(traj.ledger).max_residual; },
        py::arg("trajectory"));
    m.def(
        "max_balance_residual_J",
        [](const Trajectory& traj) { return balance_residual_J(traj.ledger).max_residual; },
        py::arg("trajectory"));

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("kappa", &DecayFit::kappa)
        .def_readonly("M", &DecayFit::M)
        .def_readonly("t_begin", &DecayFit::t_begin)
        .def_readonly("t_end", &DecayFit::t_end)
        .def_readonly("r_squared", &DecayFit::r_squared);

    m.def(
        "fit_decay",
        [](const std::vector<std::pair<double, double>>& pts, double t0, double t1) {
            std::vector<SeriesPoint> series;
            series.reserve(pts.size());
            for (const auto& [t, y] : pts) series.push_back({t, y});
            return fit_decay(series, t0, t1);
        },
        py::arg("series"), py::arg("t_begin"), py::arg("t_end"));
    m.def(
        "deviation_series",
        [](const Trajectory& traj, double u_inf) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : deviation_series(traj, u_inf)) out.emplace_back(p.t, p.y);
            return out;
        },
        py::arg("trajectory"), py::arg("u_inf"));

    py::class_<MeanFit>(m, "MeanFit")
        .def_readonly("a", &MeanFit::a)
        .def_readonly("b", &MeanFit::b)
        .def_readonly("max_residual", &MeanFit::max_residual);
    m.def("average_ode_check", &average_ode_check, py::arg("trajectory"), py::arg("params"),
          py::arg("t_begin"), py::arg("t_end"));
    m.def("regime_entry_time",
          [](const Trajectory& traj, const PotentialParams& p, const std::string& target) {
              EquilibriumClass cls;
              if (target == "zero")
                  cls = EquilibriumClass::zero;
              else if (target == "detached_plus")
                  cls = EquilibriumClass::detached_plus;
              else if (target == "detached_minus")
                  cls = EquilibriumClass::detached_minus;
              else
                  throw std::invalid_argument("target must be zero/detached_plus/detached_minus");
              return regime_entry_time(traj, p, cls);
          });

    // --- scalar hybrid model ---------------------------------------------------
    py::class_<OdeParams>(m, "OdeParams")
        .def(py::init<double>(), py::arg("sigma") = 2.0)
        .def_readwrite("sigma", &OdeParams::sigma)
        .def("band_edge", &OdeParams::band_edge)
        .def("lambda_", &OdeParams::lambda)
        .def("mu", &OdeParams::mu)
        .def_static("omega", &OdeParams::omega);

    m.def(
        "classify_case",
        [](double z, double w, const OdeParams& p) {
            const auto c = classify_case(z, w, p);
            return py::make_tuple(to_string(c), to_string(c.regime));
        },
        py::arg("z"), py::arg("w"), py::arg("params"), "(case label, regime) strings");

    py::class_<PiecewiseTrajectory>(m, "PiecewiseTrajectory")
        .def("eval", &PiecewiseTrajectory::eval, py::arg("t"), "(z, w) at time t")
        .def_readonly("z_inf", &PiecewiseTrajectory::z_inf)
        .def_readonly("middle_transits", &PiecewiseTrajectory::middle_transits)
        .def_readonly("inner_band_crossings", &PiecewiseTrajectory::inner_band_crossings)
        .def_property_readonly("case_trace", [](const PiecewiseTrajectory& t) {
            std::vector<std::string> out;
            for (const auto& c : t.case_trace) out.push_back(to_string(c));
            return out;
        });

    m.def("solve_exact", &solve_exact, py::arg("z0"), py::arg("w0"), py::arg("params"),
          py::arg("t_max"));

    py::class_<OracleTrajectory>(m, "OracleTrajectory")
        .def("eval", &OracleTrajectory::eval, py::arg("t"), "(z, w) at time t");
    m.def("rk_oracle", &rk_oracle, py::arg("z0"), py::arg("w0"), py::arg("params"),
          py::arg("t_max"), py::arg("tol") = 1e-10);

    py::class_<DecayCheck>(m, "DecayCheck")
        .def_readonly("sigmas", &DecayCheck::sigmas)
        .def_readonly("battery", &DecayCheck::battery)
        .def_readonly("M", &DecayCheck::M)
        .def_readonly("ratio", &DecayCheck::ratio)
        .def_readonly("max_ratio", &DecayCheck::max_ratio)
        .def_readonly("max_abs_z_inf", &DecayCheck::max_abs_z_inf)
        .def_readonly("max_middle_transits", &DecayCheck::max_middle_transits)
        .def_readonly("max_inner_band_crossings", &DecayCheck::max_inner_band_crossings)
        .def_readonly("envelope_ok", &DecayCheck::envelope_ok)
        .def_readonly("structure_ok", &DecayCheck::structure_ok);

    m.def("verify_uniform_decay", &verify_uniform_decay, py::arg("battery"), py::arg("sigmas"),
          py::arg("t_max") = 30.0);
    m.def("default_battery", &default_battery);
    m.def("case_battery", &case_battery, py::arg("params"));

    // --- experiments -----------------------------------------------------------
    m.def(
        "run_experiment",
        [](const std::string& config_text, const std::string& out_dir, bool quiet) {
            const auto doc = nlohmann::json::parse(config_text);
            return run_experiment(parse_config(doc), out_dir, quiet);
        },
        py::arg("config_text"), py::arg("out_dir") = ".", py::arg("quiet") = true,
        "Parse a JSON experiment config and run it; returns the exit status");
}
