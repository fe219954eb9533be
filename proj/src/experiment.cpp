#include "adwave/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "adwave/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace adwave {

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::pde_run: return "pde-run";
        case ExperimentKind::pde_verify_energy: return "pde-verify-energy";
        case ExperimentKind::pde_decay: return "pde-decay";
        case ExperimentKind::pde_linear_decay: return "pde-linear-decay";
        case ExperimentKind::ode_run: return "ode-run";
        case ExperimentKind::ode_verify: return "ode-verify";
        case ExperimentKind::potential_table: return "potential-table";
    }
    return "pde-run";
}

namespace {

// --- strict JSON access -----------------------------------------------------

void expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
    }
}

double get_num(const json& j, const char* key, double dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    return v.get<double>();
}

int get_int(const json& j, const char* key, int dflt, const std::string& where) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
    return v.get<int>();
}

std::string get_str(const json& j, const char* key, const std::string& dflt,
                    const std::string& where) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
    return v.get<std::string>();
}

// --- sub-object parsers -----------------------------------------------------

InitialField parse_field(const json& j, const std::string& where) {
    expect_object(j, where);
    const std::string kind = get_str(j, "kind", "constant", where);
    InitialField f;
    if (kind == "constant") {
        check_keys(j, where, {"kind", "value"});
        f.kind = InitialField::Kind::constant;
        f.value = get_num(j, "value", 0.0, where);
    } else if (kind == "cosine_mode") {
        check_keys(j, where, {"kind", "amplitude", "mode", "offset"});
        f.kind = InitialField::Kind::cosine_mode;
        f.amplitude = get_num(j, "amplitude", 0.0, where);
        f.mode = get_int(j, "mode", 0, where);
        f.offset = get_num(j, "offset", 0.0, where);
    } else if (kind == "gaussian") {
        check_keys(j, where, {"kind", "amplitude", "center", "width", "offset"});
        f.kind = InitialField::Kind::gaussian;
        f.amplitude = get_num(j, "amplitude", 0.0, where);
        f.center = get_num(j, "center", 0.0, where);
        f.width = get_num(j, "width", 1.0, where);
        f.offset = get_num(j, "offset", 0.0, where);
    } else if (kind == "from_file") {
        check_keys(j, where, {"kind", "path"});
        f.kind = InitialField::Kind::from_file;
        f.path = get_str(j, "path", "", where);
        if (f.path.empty()) throw ConfigError(where + ".path is required for kind from_file");
    } else {
        throw ConfigError(where +
                          ".kind must be one of constant, cosine_mode, gaussian, from_file");
    }
    return f;
}

RunConfig parse_run(const json& j, const std::string& where, RunConfig cfg) {
    expect_object(j, where);
    check_keys(j, where,
               {"potential", "grid", "dt", "t_final", "initial", "sample_every", "force",
                "lambda", "reference_u"});
    if (j.contains("potential")) {
        const auto& p = j.at("potential");
        expect_object(p, where + ".potential");
        check_keys(p, where + ".potential", {"u_star", "sigma"});
        cfg.potential.u_star = get_num(p, "u_star", cfg.potential.u_star, where + ".potential");
        cfg.potential.sigma = get_num(p, "sigma", cfg.potential.sigma, where + ".potential");
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        expect_object(g, where + ".grid");
        check_keys(g, where + ".grid", {"length", "cells"});
        cfg.grid.length = get_num(g, "length", cfg.grid.length, where + ".grid");
        cfg.grid.cells = get_int(g, "cells", cfg.grid.cells, where + ".grid");
    }
    cfg.dt = get_num(j, "dt", cfg.dt, where);
    cfg.t_final = get_num(j, "t_final", cfg.t_final, where);
    if (j.contains("initial")) {
        const auto& ini = j.at("initial");
        expect_object(ini, where + ".initial");
        check_keys(ini, where + ".initial", {"u", "v"});
        if (ini.contains("u")) cfg.initial.u = parse_field(ini.at("u"), where + ".initial.u");
        if (ini.contains("v")) cfg.initial.v = parse_field(ini.at("v"), where + ".initial.v");
    }
    cfg.sample_every = get_int(j, "sample_every", cfg.sample_every, where);
    if (j.contains("force")) {
        const std::string s = get_str(j, "force", "", where);
        if (s == "phi")
            cfg.force = ForceMode::adhesion;
        else if (s == "linear")
            cfg.force = ForceMode::linear;
        else
            throw ConfigError(where + ".force must be \"phi\" or \"linear\"");
    }
    cfg.lambda = get_num(j, "lambda", cfg.lambda, where);
    cfg.reference_u = get_num(j, "reference_u", cfg.reference_u, where);
    return cfg;
}

// Base configuration for the verify-mode kinds: the inner-regime cosine run
// (small single-mode data that never leave the elastic band).
RunConfig inner_cosine_run(double t_final) {
    RunConfig cfg;
    cfg.potential = {1.0, 2.0};
    cfg.grid = {1.0, 512};
    cfg.dt = cfg.grid.dx() / 4.0;
    cfg.t_final = t_final;
    cfg.initial.u.kind = InitialField::Kind::cosine_mode;
    cfg.initial.u.amplitude = 1e-3;
    cfg.initial.u.mode = 1;
    cfg.initial.v.kind = InitialField::Kind::constant;
    return cfg;
}

RunConfig linear_decay_run() {
    RunConfig cfg = inner_cosine_run(10.0);
    cfg.force = ForceMode::linear;
    cfg.initial.u.amplitude = 1.0;
    cfg.initial.u.offset = 1.0;  // cos(pi x) + 1
    return cfg;
}

std::string default_out(ExperimentKind k) {
    std::string s = to_string(k);
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

}  // namespace

ExperimentSpec parse_config(const json& doc) {
    expect_object(doc, "config");
    if (!doc.contains("kind"))
        throw ConfigError(
            "config.kind is required (one of pde-run, pde-verify-energy, pde-decay, "
            "pde-linear-decay, ode-run, ode-verify, potential-table)");
    const std::string kind = get_str(doc, "kind", "", "config");

    ExperimentSpec spec;
    if (kind == "pde-run") {
        spec.kind = ExperimentKind::pde_run;
        check_keys(doc, "config", {"kind", "run", "snapshot_times", "out"});
        spec.run = doc.contains("run") ? parse_run(doc.at("run"), "config.run", RunConfig{})
                                       : RunConfig{};
        if (doc.contains("snapshot_times")) {
            const auto& arr = doc.at("snapshot_times");
            if (!arr.is_array()) throw ConfigError("config.snapshot_times must be an array");
            for (const auto& v : arr) {
                if (!v.is_number())
                    throw ConfigError("config.snapshot_times entries must be numbers");
                const double t = v.get<double>();
                if (!(t >= 0.0) || t > spec.run.t_final)
                    throw ConfigError("config.snapshot_times entries must lie in [0, t_final]");
                spec.snapshot_times.push_back(t);
            }
        }
    } else if (kind == "pde-verify-energy") {
        spec.kind = ExperimentKind::pde_verify_energy;
        check_keys(doc, "config", {"kind", "run", "refinement_levels", "out"});
        spec.run = doc.contains("run")
                       ? parse_run(doc.at("run"), "config.run", inner_cosine_run(10.0))
                       : inner_cosine_run(10.0);
        spec.refinement_levels = get_int(doc, "refinement_levels", 2, "config");
        if (spec.refinement_levels < 1 || spec.refinement_levels > 4)
            throw ConfigError("config.refinement_levels must lie in [1, 4]");
    } else if (kind == "pde-decay") {
        spec.kind = ExperimentKind::pde_decay;
        check_keys(doc, "config", {"kind", "run", "fit", "out"});
        spec.run = doc.contains("run")
                       ? parse_run(doc.at("run"), "config.run", inner_cosine_run(50.0))
                       : inner_cosine_run(50.0);
        if (doc.contains("fit")) {
            const auto& f = doc.at("fit");
            expect_object(f, "config.fit");
            check_keys(f, "config.fit", {"target", "skip"});
            spec.fit.target = get_str(f, "target", spec.fit.target, "config.fit");
            spec.fit.skip = get_num(f, "skip", spec.fit.skip, "config.fit");
        }
        if (spec.fit.target != "auto" && spec.fit.target != "zero" &&
            spec.fit.target != "detached_plus" && spec.fit.target != "detached_minus")
            throw ConfigError(
                "config.fit.target must be one of auto, zero, detached_plus, detached_minus");
        if (!(spec.fit.skip >= 0.0) || !std::isfinite(spec.fit.skip))
            throw ConfigError("config.fit.skip must be a nonnegative number");
    } else if (kind == "pde-linear-decay") {
        spec.kind = ExperimentKind::pde_linear_decay;
        check_keys(doc, "config", {"kind", "run", "out"});
        spec.run = doc.contains("run")
                       ? parse_run(doc.at("run"), "config.run", linear_decay_run())
                       : linear_decay_run();
        if (spec.run.force != ForceMode::linear)
            throw ConfigError("pde-linear-decay requires config.run.force = \"linear\"");
    } else if (kind == "ode-run") {
        spec.kind = ExperimentKind::ode_run;
        check_keys(doc, "config", {"kind", "ode", "out"});
        if (doc.contains("ode")) {
            const auto& o = doc.at("ode");
            expect_object(o, "config.ode");
            check_keys(o, "config.ode", {"z0", "w0", "sigma", "t_max", "sample_dt"});
            spec.ode.z0 = get_num(o, "z0", spec.ode.z0, "config.ode");
            spec.ode.w0 = get_num(o, "w0", spec.ode.w0, "config.ode");
            spec.ode.sigma = get_num(o, "sigma", spec.ode.sigma, "config.ode");
            spec.ode.t_max = get_num(o, "t_max", spec.ode.t_max, "config.ode");
            spec.ode.sample_dt = get_num(o, "sample_dt", spec.ode.sample_dt, "config.ode");
        }
        OdeParams{spec.ode.sigma}.validate();
        if (!(spec.ode.t_max > 0.0)) throw ConfigError("config.ode.t_max must be positive");
        if (!(spec.ode.sample_dt > 0.0))
            throw ConfigError("config.ode.sample_dt must be positive");
    } else if (kind == "ode-verify") {
        spec.kind = ExperimentKind::ode_verify;
        check_keys(doc, "config", {"kind", "verify", "out"});
        if (doc.contains("verify")) {
            const auto& v = doc.at("verify");
            expect_object(v, "config.verify");
            check_keys(v, "config.verify", {"battery", "sigmas", "t_max"});
            spec.verify.battery = get_str(v, "battery", spec.verify.battery, "config.verify");
            if (v.contains("sigmas")) {
                const auto& arr = v.at("sigmas");
                if (!arr.is_array() || arr.empty())
                    throw ConfigError("config.verify.sigmas must be a nonempty array");
                spec.verify.sigmas.clear();
                for (const auto& s : arr) {
                    if (!s.is_number())
                        throw ConfigError("config.verify.sigmas entries must be numbers");
                    spec.verify.sigmas.push_back(s.get<double>());
                }
            }
            spec.verify.t_max = get_num(v, "t_max", spec.verify.t_max, "config.verify");
        }
        if (spec.verify.battery != "default")
            throw ConfigError("config.verify.battery must be \"default\"");
        for (double s : spec.verify.sigmas) OdeParams{s}.validate();
        if (!(spec.verify.t_max > 0.0)) throw ConfigError("config.verify.t_max must be positive");
    } else if (kind == "potential-table") {
        spec.kind = ExperimentKind::potential_table;
        check_keys(doc, "config", {"kind", "table", "out"});
        if (doc.contains("table")) {
            const auto& t = doc.at("table");
            expect_object(t, "config.table");
            check_keys(t, "config.table", {"u_star", "sigma", "from", "to", "step"});
            spec.table.potential.u_star =
                get_num(t, "u_star", spec.table.potential.u_star, "config.table");
            spec.table.potential.sigma =
                get_num(t, "sigma", spec.table.potential.sigma, "config.table");
            spec.table.from = get_num(t, "from", spec.table.from, "config.table");
            spec.table.to = get_num(t, "to", spec.table.to, "config.table");
            spec.table.step = get_num(t, "step", spec.table.step, "config.table");
        }
        spec.table.potential.validate();
        if (!(spec.table.step > 0.0)) throw ConfigError("config.table.step must be positive");
        if (!(spec.table.from <= spec.table.to))
            throw ConfigError("config.table.from must not exceed config.table.to");
    } else {
        throw ConfigError(
            "config.kind \"" + kind +
            "\" is not one of pde-run, pde-verify-energy, pde-decay, pde-linear-decay, "
            "ode-run, ode-verify, potential-table");
    }

    spec.out = get_str(doc, "out", default_out(spec.kind), "config");
    if (spec.out.empty()) throw ConfigError("config.out must be a nonempty string");

    switch (spec.kind) {
        case ExperimentKind::pde_run:
        case ExperimentKind::pde_verify_energy:
        case ExperimentKind::pde_decay:
        case ExperimentKind::pde_linear_decay: spec.run.validate(); break;
        default: break;
    }
    return spec;
}

RunConfig run_config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("run config is not valid JSON: ") + e.what());
    }
    RunConfig cfg = parse_run(doc, "run", RunConfig{});
    cfg.validate();
    return cfg;
}

namespace {

json emit_field(const InitialField& f) {
    json j;
    switch (f.kind) {
        case InitialField::Kind::constant:
            j["kind"] = "constant";
            j["value"] = f.value;
            break;
        case InitialField::Kind::cosine_mode:
            j["kind"] = "cosine_mode";
            j["amplitude"] = f.amplitude;
            j["mode"] = f.mode;
            j["offset"] = f.offset;
            break;
        case InitialField::Kind::gaussian:
            j["kind"] = "gaussian";
            j["amplitude"] = f.amplitude;
            j["center"] = f.center;
            j["width"] = f.width;
            j["offset"] = f.offset;
            break;
        case InitialField::Kind::from_file:
            j["kind"] = "from_file";
            j["path"] = f.path;
            break;
    }
    return j;
}

json emit_run(const RunConfig& cfg) {
    json j;
    j["potential"] = {{"u_star", cfg.potential.u_star}, {"sigma", cfg.potential.sigma}};
    j["grid"] = {{"length", cfg.grid.length}, {"cells", cfg.grid.cells}};
    j["dt"] = cfg.dt;
    j["t_final"] = cfg.t_final;
    j["initial"] = {{"u", emit_field(cfg.initial.u)}, {"v", emit_field(cfg.initial.v)}};
    j["sample_every"] = cfg.sample_every;
    j["force"] = to_string(cfg.force);
    j["lambda"] = cfg.lambda;
    j["reference_u"] = cfg.reference_u;
    return j;
}

}  // namespace

json emit(const ExperimentSpec& spec) {
    json doc;
    doc["kind"] = to_string(spec.kind);
    switch (spec.kind) {
        case ExperimentKind::pde_run:
            doc["run"] = emit_run(spec.run);
            doc["snapshot_times"] = spec.snapshot_times;
            break;
        case ExperimentKind::pde_verify_energy:
            doc["run"] = emit_run(spec.run);
            doc["refinement_levels"] = spec.refinement_levels;
            break;
        case ExperimentKind::pde_decay:
            doc["run"] = emit_run(spec.run);
            doc["fit"] = {{"target", spec.fit.target}, {"skip", spec.fit.skip}};
            break;
        case ExperimentKind::pde_linear_decay: doc["run"] = emit_run(spec.run); break;
        case ExperimentKind::ode_run:
            doc["ode"] = {{"z0", spec.ode.z0},
                          {"w0", spec.ode.w0},
                          {"sigma", spec.ode.sigma},
                          {"t_max", spec.ode.t_max},
                          {"sample_dt", spec.ode.sample_dt}};
            break;
        case ExperimentKind::ode_verify:
            doc["verify"] = {{"battery", spec.verify.battery},
                             {"sigmas", spec.verify.sigmas},
                             {"t_max", spec.verify.t_max}};
            break;
        case ExperimentKind::potential_table:
            doc["table"] = {{"u_star", spec.table.potential.u_star},
                            {"sigma", spec.table.potential.sigma},
                            {"from", spec.table.from},
                            {"to", spec.table.to},
                            {"step", spec.table.step}};
            break;
    }
    if (!spec.out.empty()) doc["out"] = spec.out;
    return doc;
}

// --- experiment execution ----------------------------------------------------

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
    return f;
}

void finish(std::ofstream& f, const fs::path& p) {
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + p.string());
}

void write_json_file(const fs::path& p, const json& j) {
    auto f = open_out(p);
    f << j.dump(2) << "\n";
    finish(f, p);
}

void write_ledger_csv(const fs::path& p, const std::vector<LedgerRow>& rows) {
    auto f = open_out(p);
    f << "t,E,J,G,G_lambda,D,S,mean_u,h1_dev\n";
    for (const auto& r : rows)
        f << fmt(r.t) << ',' << fmt(r.E) << ',' << fmt(r.J) << ',' << fmt(r.G) << ','
          << fmt(r.G_lambda) << ',' << fmt(r.D) << ',' << fmt(r.S) << ',' << fmt(r.mean_u) << ','
          << fmt(r.h1_dev) << '\n';
    finish(f, p);
}

void write_snapshot_csv(const fs::path& p, const Grid1D& g, const Sample& s) {
    auto f = open_out(p);
    f << "x,u,v\n";
    for (std::size_t j = 0; j < g.nodes(); ++j)
        f << fmt(g.node(j)) << ',' << fmt(s.u[j]) << ',' << fmt(s.v[j]) << '\n';
    finish(f, p);
}

const Sample& nearest_sample(const Trajectory& traj, double t) {
    const auto& ss = traj.samples;
    std::size_t best = 0;
    double gap = std::abs(ss[0].t - t);
    for (std::size_t i = 1; i < ss.size(); ++i) {
        const double g = std::abs(ss[i].t - t);
        if (g < gap) {
            gap = g;
            best = i;
        }
    }
    return ss[best];
}

double h_norm_sq(const Sample& s, double dx) {
    return trap_norm_sq(s.u, dx) + grad_norm_sq(s.u, dx) + trap_norm_sq(s.v, dx);
}

void say(bool quiet, const std::string& line) {
    if (!quiet) std::cout << line << "\n";
}

// Shared post-run analysis: classification, ell, balance residuals, and (when
// the run converged) the regime entry time and decay fit.
json analyze_run(const Trajectory& traj, const RunConfig& cfg) {
    json out;
    const auto resE = balance_residual_E(traj.ledger);
    const auto resJ = balance_residual_J(traj.ledger);
    out["max_residual_E"] = resE.max_residual;
    out["max_residual_J"] = resJ.max_residual;

    const auto rep = detect_equilibrium(traj, cfg.potential);
    out["classification"] = to_string(rep.classification);
    out["u_inf"] = rep.u_inf;
    out["velocity_norm"] = rep.velocity_norm;
    out["oscillation"] = rep.oscillation;

    const auto ell = ell_limit(traj.ledger);
    out["ell"] = ell.ell;
    out["ell_stddev"] = ell.stddev;
    out["predicted_modulus"] = predict_u_inf_modulus(std::max(ell.ell, 0.0), cfg.grid.length);

    out["regime_entry_time"] = nullptr;
    out["kappa"] = nullptr;
    out["M"] = nullptr;
    out["r_squared"] = nullptr;
    if (rep.classification == EquilibriumClass::zero ||
        rep.classification == EquilibriumClass::detached_plus ||
        rep.classification == EquilibriumClass::detached_minus) {
        try {
            const double entry = regime_entry_time(traj, cfg.potential, rep.classification);
            out["regime_entry_time"] = entry;
            const auto series = deviation_series(traj, rep.u_inf);
            const auto fit = fit_decay(series, entry + 2.0, cfg.t_final, "h1_dev+v");
            out["kappa"] = fit.kappa;
            out["M"] = fit.M;
            out["r_squared"] = fit.r_squared;
        } catch (const PreconditionError&) {
            // left as null: not enough settled samples for a fit
        }
    }
    return out;
}

int run_pde_run(const ExperimentSpec& spec, const fs::path& dir, bool quiet) {
    const Trajectory traj = simulate(spec.run);
    const fs::path ledger_path = dir / (spec.out + "_ledger.csv");
    write_ledger_csv(ledger_path, traj.ledger);
    say(quiet, "wrote " + ledger_path.string());

    json snaps = json::array();
    for (std::size_t k = 0; k < spec.snapshot_times.size(); ++k) {
        const Sample& s = nearest_sample(traj, spec.snapshot_times[k]);
        const fs::path p = dir / (spec.out + "_snapshot_" + std::to_string(k) + ".csv");
        write_snapshot_csv(p, traj.grid, s);
        snaps.push_back(
            {{"requested_t", spec.snapshot_times[k]}, {"t", s.t}, {"file", p.filename().string()}});
        say(quiet, "wrote " + p.string());
    }

    json summary = analyze_run(traj, spec.run);
    summary["kind"] = to_string(spec.kind);
    summary["ledger"] = ledger_path.filename().string();
    summary["snapshots"] = snaps;
    const fs::path sp = dir / (spec.out + "_summary.json");
    write_json_file(sp, summary);
    say(quiet, "wrote " + sp.string());
    return 0;
}

int run_verify_energy(const ExperimentSpec& spec, const fs::path& dir, bool quiet) {
    json levels = json::array();
    std::vector<double> maxE, maxJ;
    for (int lvl = 0; lvl < spec.refinement_levels; ++lvl) {
        RunConfig cfg = spec.run;
        cfg.grid.cells = spec.run.grid.cells << lvl;
        cfg.dt = spec.run.dt / static_cast<double>(1 << lvl);
        const Trajectory traj = simulate(cfg);
        const auto resE = balance_residual_E(traj.ledger);
        const auto resJ = balance_residual_J(traj.ledger);
        maxE.push_back(resE.max_residual);
        maxJ.push_back(resJ.max_residual);
        levels.push_back({{"cells", cfg.grid.cells},
                          {"dt", cfg.dt},
                          {"max_residual_E", resE.max_residual},
                          {"max_residual_J", resJ.max_residual}});
        say(quiet, "level " + std::to_string(lvl) + ": cells=" + std::to_string(cfg.grid.cells) +
                       " maxE=" + fmt(resE.max_residual) + " maxJ=" + fmt(resJ.max_residual));
    }

    auto ratios = [](const std::vector<double>& r) {
        json a = json::array();
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            a.push_back(r[i + 1] > 0.0 ? r[i] / r[i + 1]
                                       : std::numeric_limits<double>::infinity());
        return a;
    };
    const json ratioE = ratios(maxE);
    const json ratioJ = ratios(maxJ);

    bool pass = maxE[0] <= thresholds::energy_residual_max &&
                maxJ[0] <= thresholds::energy_residual_max;
    for (const auto& r : ratioE) pass = pass && r.get<double>() >= thresholds::energy_residual_ratio_min;
    for (const auto& r : ratioJ) pass = pass && r.get<double>() >= thresholds::energy_residual_ratio_min;

    json summary = {{"kind", to_string(spec.kind)},
                    {"levels", levels},
                    {"ratio_E", ratioE},
                    {"ratio_J", ratioJ},
                    {"residual_threshold", thresholds::energy_residual_max},
                    {"ratio_threshold", thresholds::energy_residual_ratio_min},
                    {"pass", pass}};
    const fs::path sp = dir / (spec.out + "_summary.json");
    write_json_file(sp, summary);
    say(quiet, "wrote " + sp.string());
    say(quiet, pass ? "energy balance: PASS" : "energy balance: FAIL");
    return pass ? 0 : 1;
}

int run_linear_decay(const ExperimentSpec& spec, const fs::path& dir, bool quiet) {
    const Trajectory traj = simulate(spec.run);
    const fs::path ledger_path = dir / (spec.out + "_ledger.csv");
    write_ledger_csv(ledger_path, traj.ledger);

    const double g0 = traj.ledger.front().G;
    if (!(g0 > 0.0))
        throw PreconditionError("linear decay check requires nonzero initial data (G(0) > 0)");
    double max_rel = 0.0;
    for (const auto& row : traj.ledger)
        max_rel = std::max(max_rel, std::abs(row.G / g0 - std::exp(-row.t)));

    const double dx = traj.grid.dx();
    const double h0 = h_norm_sq(traj.samples.front(), dx);
    double max_contraction = 0.0;  // max of ||U(t)||^2 / (3 ||U0||^2 e^{-t})
    for (const auto& s : traj.samples) {
        const double bound = 3.0 * h0 * std::exp(-s.t);
        max_contraction = std::max(max_contraction, h_norm_sq(s, dx) / bound);
    }

    const bool pass = max_rel <= thresholds::linear_g_rel_error_max &&
                      max_contraction <= 1.0 + thresholds::contraction_slack;
    json summary = {{"kind", to_string(spec.kind)},
                    {"ledger", ledger_path.filename().string()},
                    {"max_g_rel_error", max_rel},
                    {"g_rel_error_threshold", thresholds::linear_g_rel_error_max},
                    {"max_contraction_quotient", max_contraction},
                    {"contraction_threshold", 1.0 + thresholds::contraction_slack},
                    {"pass", pass}};
    const fs::path sp = dir / (spec.out + "_summary.json");
    write_json_file(sp, summary);
    say(quiet, "wrote " + sp.string());
    say(quiet, pass ? "linear decay: PASS" : "linear decay: FAIL");
    return pass ? 0 : 1;
}

int run_pde_decay(const ExperimentSpec& spec, const fs::path& dir, bool quiet) {
    const Trajectory traj = simulate(spec.run);
    const fs::path ledger_path = dir / (spec.out + "_ledger.csv");
    write_ledger_csv(ledger_path, traj.ledger);

    const auto rep = detect_equilibrium(traj, spec.run.potential);
    EquilibriumClass target = rep.classification;
    if (spec.fit.target == "zero") target = EquilibriumClass::zero;
    if (spec.fit.target == "detached_plus") target = EquilibriumClass::detached_plus;
    if (spec.fit.target == "detached_minus") target = EquilibriumClass::detached_minus;

    json summary = {{"kind", to_string(spec.kind)},
                    {"ledger", ledger_path.filename().string()},
                    {"classification", to_string(rep.classification)},
                    {"u_inf", rep.u_inf}};
    bool pass = false;
    if (target != EquilibriumClass::zero && target != EquilibriumClass::detached_plus &&
        target != EquilibriumClass::detached_minus) {
        summary["error"] = "run did not converge to a fit-able regime";
    } else {
        const double entry = regime_entry_time(traj, spec.run.potential, target);
        const auto series = deviation_series(traj, rep.u_inf);
        const auto fit =
            fit_decay(series, entry + spec.fit.skip, spec.run.t_final, "h1_dev+v");
        pass = fit.kappa >= thresholds::decay_kappa_min &&
               fit.kappa <= thresholds::decay_kappa_max &&
               fit.r_squared >= thresholds::decay_r2_min;
        summary["regime_entry_time"] = entry;
        summary["window"] = {fit.t_begin, fit.t_end};
        summary["kappa"] = fit.kappa;
        summary["M"] = fit.M;
        summary["r_squared"] = fit.r_squared;
        summary["kappa_band"] = {thresholds::decay_kappa_min, thresholds::decay_kappa_max};
        summary["r2_threshold"] = thresholds::decay_r2_min;
    }
    summary["pass"] = pass;
    const fs::path sp = dir / (spec.out + "_summary.json");
    write_json_file(sp, summary);
    say(quiet, "wrote " + sp.string());
    say(quiet, pass ? "decay fit: PASS" : "decay fit: FAIL");
    return pass ? 0 : 1;
}

int run_ode_run(const ExperimentSpec& spec, const fs::path& dir, bool quiet) {
    const OdeParams p{spec.ode.sigma};
    const auto traj = solve_exact(spec.ode.z0, spec.ode.w0, p, spec.ode.t_max);

    const fs::path csv = dir / (spec.out + ".csv");
    {
        auto f = open_out(csv);
        f << "t,z,w,regime\n";
        const long steps = std::lround(spec.ode.t_max / spec.ode.sample_dt);
        for (long i = 0; i <= steps; ++i) {
            const double t = std::min(spec.ode.sample_dt * static_cast<double>(i), spec.ode.t_max);
            const auto [z, w] = traj.eval(t);
            f << fmt(t) << ',' << fmt(z) << ',' << fmt(w) << ','
              << to_string(traj.segment_at(t).sol.regime) << '\n';
        }
        finish(f, csv);
    }
    say(quiet, "wrote " + csv.string());

    json trace = json::array();
    for (const auto& c : traj.case_trace) trace.push_back(to_string(c));
    json segs = json::array();
    for (const auto& s : traj.segments)
        segs.push_back({{"t_begin", s.t_begin},
                        {"t_end", std::isfinite(s.t_end) ? json(s.t_end) : json(nullptr)},
                        {"regime", to_string(s.sol.regime)},
                        {"entry_case", to_string(s.entry)},
                        {"z_begin", s.z_begin},
                        {"w_begin", s.w_begin}});
    json summary = {{"kind", to_string(spec.kind)},
                    {"csv", csv.filename().string()},
                    {"z_inf", traj.z_inf ? json(*traj.z_inf) : json(nullptr)},
                    {"case_trace", trace},
                    {"segments", segs},
                    {"middle_transits", traj.middle_transits},
                    {"inner_band_crossings", traj.inner_band_crossings}};
    const fs::path sp = dir / (spec.out + "_summary.json");
    write_json_file(sp, summary);
    say(quiet, "wrote " + sp.string());
    return 0;
}

int run_ode_verify(const ExperimentSpec& spec, const fs::path& dir, bool quiet) {
    const auto battery = default_battery();
    const auto check = verify_uniform_decay(battery, spec.verify.sigmas, spec.verify.t_max);

    const bool pass =
        check.envelope_ok && check.structure_ok && check.max_ratio <= thresholds::ode_m_ratio_max;
    json data = json::array();
    for (std::size_t d = 0; d < battery.size(); ++d)
        data.push_back({{"z0", battery[d].first},
                        {"w0", battery[d].second},
                        {"M", check.M[d]},
                        {"ratio", check.ratio[d]}});
    json report = {{"kind", to_string(spec.kind)},
                   {"battery", spec.verify.battery},
                   {"sigmas", check.sigmas},
                   {"t_max", spec.verify.t_max},
                   {"data", data},
                   {"max_ratio", check.max_ratio},
                   {"ratio_threshold", thresholds::ode_m_ratio_max},
                   {"max_abs_z_inf", check.max_abs_z_inf},
                   {"max_middle_transits", check.max_middle_transits},
                   {"max_inner_band_crossings", check.max_inner_band_crossings},
                   {"envelope_ok", check.envelope_ok},
                   {"structure_ok", check.structure_ok},
                   {"pass", pass}};
    const fs::path rp = dir / (spec.out + ".json");
    write_json_file(rp, report);
    say(quiet, "wrote " + rp.string());
    say(quiet, pass ? "uniform decay: PASS" : "uniform decay: FAIL");
    return pass ? 0 : 1;
}

int run_table(const ExperimentSpec& spec, const fs::path& dir, bool quiet) {
    const auto rows =
        sample_table(spec.table.potential, spec.table.from, spec.table.to, spec.table.step);
    const fs::path csv = dir / (spec.out + ".csv");
    {
        auto f = open_out(csv);
        f << "u,phi,dphi\n";
        for (const auto& r : rows)
            f << fmt(r.u) << ',' << fmt(r.phi) << ',' << fmt(r.dphi) << '\n';
        finish(f, csv);
    }
    say(quiet, "wrote " + csv.string());
    json summary = {{"kind", to_string(spec.kind)},
                    {"csv", csv.filename().string()},
                    {"rows", rows.size()},
                    {"u_star", spec.table.potential.u_star},
                    {"sigma", spec.table.potential.sigma}};
    const fs::path sp = dir / (spec.out + "_summary.json");
    write_json_file(sp, summary);
    say(quiet, "wrote " + sp.string());
    return 0;
}

}  // namespace

int run_experiment(const ExperimentSpec& spec, const std::string& out_dir, bool quiet) {
    const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string());

    switch (spec.kind) {
        case ExperimentKind::pde_run: return run_pde_run(spec, dir, quiet);
        case ExperimentKind::pde_verify_energy: return run_verify_energy(spec, dir, quiet);
        case ExperimentKind::pde_decay: return run_pde_decay(spec, dir, quiet);
        case ExperimentKind::pde_linear_decay: return run_linear_decay(spec, dir, quiet);
        case ExperimentKind::ode_run: return run_ode_run(spec, dir, quiet);
        case ExperimentKind::ode_verify: return run_ode_verify(spec, dir, quiet);
        case ExperimentKind::potential_table: return run_table(spec, dir, quiet);
    }
    throw ConsistencyError("unhandled experiment kind");
}

}  // namespace adwave
