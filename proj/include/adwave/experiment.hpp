#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "adwave/asymptotics.hpp"
#include "adwave/ode.hpp"
#include "adwave/pde.hpp"

namespace adwave {

enum class ExperimentKind {
    pde_run,
    pde_verify_energy,
    pde_decay,
    pde_linear_decay,
    ode_run,
    ode_verify,
    potential_table,
};

std::string to_string(ExperimentKind k);

struct OdeRunSpec {
    double z0 = 0.0;
    double w0 = 0.0;
    double sigma = 2.0;
    double t_max = 20.0;
    double sample_dt = 0.01;
};

struct OdeVerifySpec {
    std::string battery = "default";  // only the built-in default battery
    std::vector<double> sigmas = {10.0, 100.0, 1000.0, 10000.0};
    double t_max = 30.0;
};

struct TableSpec {
    PotentialParams potential;
    double from = -2.0;
    double to = 2.0;
    double step = 0.01;
};

struct DecayFitSpec {
    // Target regime of the run; "auto" classifies from the trailing samples.
    std::string target = "auto";
    double skip = 2.0;  // window starts at regime entry time + skip
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::pde_run;
    RunConfig run;                       // pde-* kinds
    OdeRunSpec ode;                      // ode-run
    OdeVerifySpec verify;                // ode-verify
    TableSpec table;                     // potential-table
    DecayFitSpec fit;                    // pde-decay
    int refinement_levels = 2;           // pde-verify-energy, in [1, 4]
    std::vector<double> snapshot_times;  // pde-run extra snapshot CSVs
    std::string out;                     // artifact basename (default per kind)
};

// Strict parser: unknown keys anywhere in the document are rejected, and all
// module-level invariants (CFL bound included) are checked up front.
ExperimentSpec parse_config(const nlohmann::json& doc);

// Parses the "run" sub-document (the RunConfig JSON form) on its own.
RunConfig run_config_from_json(const std::string& text);

nlohmann::json emit(const ExperimentSpec& spec);

// Runs the experiment, writing its artifacts (CSV + summary JSON) under
// out_dir.  Returns 0 on success; verify-mode specs return 1 when any
// threshold fails.
int run_experiment(const ExperimentSpec& spec, const std::string& out_dir, bool quiet = false);

// Pinned verify-mode thresholds.
namespace thresholds {
inline constexpr double energy_residual_max = 1e-4;
inline constexpr double energy_residual_ratio_min = 2.0;
inline constexpr double linear_g_rel_error_max = 0.01;
inline constexpr double contraction_slack = 0.02;
inline constexpr double decay_kappa_min = 0.4;
inline constexpr double decay_kappa_max = 0.6;
inline constexpr double decay_r2_min = 0.999;
inline constexpr double equilibrium_match_tol = 1e-3;
inline constexpr double ode_oracle_gap_max = 1e-6;
inline constexpr double ode_m_ratio_max = 5.0;
}  // namespace thresholds

}  // namespace adwave
