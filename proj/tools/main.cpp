#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "adwave/errors.hpp"
#include "adwave/experiment.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// `--out tables/phi.csv` -> artifact prefix "tables/phi"; run_experiment
// appends the kind's own extensions.
std::string strip_extension(const std::string& out) {
    fs::path p(out);
    if (p.extension() == ".csv" || p.extension() == ".json") p.replace_extension();
    return p.generic_string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adwave: numerical laboratory for a damped wave equation with adhesion"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    bool quiet = false;
    app.add_option("--out-dir", out_dir, "Directory receiving all artifacts")
        ->capture_default_str();
    app.add_flag("--quiet", quiet, "Suppress progress output");

    auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a JSON config");
    std::string config_path;
    run_cmd->add_option("config", config_path, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);

    auto* pot_cmd = app.add_subcommand("potential", "Adhesion potential utilities");
    pot_cmd->require_subcommand(1);
    auto* table_cmd = pot_cmd->add_subcommand("table", "Emit a u,phi,dphi table as CSV");
    double u_star = 1.0, table_sigma = 2.0, table_from = -2.0, table_to = 2.0, table_step = 0.01;
    std::string table_out = "potential_table.csv";
    table_cmd->add_option("--u-star", u_star, "Detachment threshold")->capture_default_str();
    table_cmd->add_option("--sigma", table_sigma, "Stiffness parameter")->capture_default_str();
    table_cmd->add_option("--from", table_from, "First u value")->capture_default_str();
    table_cmd->add_option("--to", table_to, "Last u value")->capture_default_str();
    table_cmd->add_option("--step", table_step, "Sample spacing")->capture_default_str();
    table_cmd->add_option("--out", table_out, "Output CSV path")->capture_default_str();

    auto* ode_cmd = app.add_subcommand("ode", "Scalar hybrid model");
    ode_cmd->require_subcommand(1);

    auto* ode_run_cmd = ode_cmd->add_subcommand("run", "Solve one trajectory exactly");
    double z0 = 0.0, w0 = 0.0, ode_sigma = 2.0, ode_t_max = 20.0, sample_dt = 0.01;
    std::string ode_out = "ode_run.csv";
    ode_run_cmd->add_option("--z0", z0, "Initial displacement")->required();
    ode_run_cmd->add_option("--w0", w0, "Initial velocity")->required();
    ode_run_cmd->add_option("--sigma", ode_sigma, "Stiffness parameter (>= 1)")
        ->capture_default_str();
    ode_run_cmd->add_option("--t-max", ode_t_max, "Horizon")->capture_default_str();
    ode_run_cmd->add_option("--sample-dt", sample_dt, "CSV sample spacing")
        ->capture_default_str();
    ode_run_cmd->add_option("--out", ode_out, "Output CSV path")->capture_default_str();

    auto* ode_verify_cmd =
        ode_cmd->add_subcommand("verify", "Uniform-decay verification over a sigma sweep");
    std::string battery = "default";
    std::vector<double> sigmas = {10.0, 100.0, 1000.0, 10000.0};
    double verify_t_max = 30.0;
    std::string verify_out = "report.json";
    ode_verify_cmd->add_option("--battery", battery, "Battery name")->capture_default_str();
    ode_verify_cmd->add_option("--sigmas", sigmas, "Comma-separated sigma sweep")
        ->delimiter(',')
        ->capture_default_str();
    ode_verify_cmd->add_option("--t-max", verify_t_max, "Grid horizon")->capture_default_str();
    ode_verify_cmd->add_option("--out", verify_out, "Report JSON path")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        json doc;
        if (run_cmd->parsed()) {
            std::ifstream f(config_path);
            doc = json::parse(f);
        } else if (table_cmd->parsed()) {
            doc = {{"kind", "potential-table"},
                   {"table",
                    {{"u_star", u_star},
                     {"sigma", table_sigma},
                     {"from", table_from},
                     {"to", table_to},
                     {"step", table_step}}},
                   {"out", strip_extension(table_out)}};
        } else if (ode_run_cmd->parsed()) {
            doc = {{"kind", "ode-run"},
                   {"ode",
                    {{"z0", z0},
                     {"w0", w0},
                     {"sigma", ode_sigma},
                     {"t_max", ode_t_max},
                     {"sample_dt", sample_dt}}},
                   {"out", strip_extension(ode_out)}};
        } else {
            doc = {{"kind", "ode-verify"},
                   {"verify",
                    {{"battery", battery}, {"sigmas", sigmas}, {"t_max", verify_t_max}}},
                   {"out", strip_extension(verify_out)}};
        }
        const adwave::ExperimentSpec spec = adwave::parse_config(doc);
        return adwave::run_experiment(spec, out_dir, quiet);
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        // ConfigError, ParameterError, PreconditionError
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
