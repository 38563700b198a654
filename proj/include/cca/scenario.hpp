#pragma once

#include <string>
#include <vector>

#include "cca/model.hpp"

namespace cca {

// Resolved settings for one CLI scenario run.  Defaults mirror the running
// example: N = 5, delta = j = 1, omega = 0.03, closed system.
struct ScenarioConfig {
    std::string scenario;  // spectrum | identities | evolve | gate-fidelity | tomography

    // Chain scenarios.
    int m = 7;
    double j = 1.0;
    double delta_min = -10.0;
    double delta_max = 10.0;
    int steps = 400;
    std::vector<double> deltas;  // when non-empty, overrides the linear grid
    int m_max = 101;

    // Model scenarios.
    int n = 5;
    double g = 1.0;
    double delta = 1.0;
    double omega = 0.03;
    bool open_system = false;
    double kappa = 0.0;
    double gamma = 0.0;
    double hz_reference = 0.0;  // when > 0, kappa and gamma are given in Hz

    // Time grid.
    double t_max_t_units = 1.2;  // horizon in units of the gate time
    int samples = 200;
    double gate_t = -1.0;  // tomography time; -1 means the gate time

    std::string out_dir = ".";

    // All validation problems, empty when the config is runnable.
    std::vector<std::string> validate() const;

    // Rates divided by hz_reference when that conversion is requested.
    double kappa_in_j() const;
    double gamma_in_j() const;
};

// Parse a flat JSON object of scalars (plus "deltas" as array or
// comma-separated string).  Throws ConfigInvalid listing every problem.
ScenarioConfig parse_config(const std::string& text);

// Model parameters with the drive signs resolved so that the full dynamics
// realizes the sqrt(swap) target.
ModelParams resolve_gate_params(const ScenarioConfig& config);

// Runs the scenario, writing its artifacts plus a run.json manifest under
// out_dir.  Returns the process exit status: 0 success, 2 invalid config,
// 3 numerical failure.
int run_scenario(const ScenarioConfig& config);

}  // namespace cca
