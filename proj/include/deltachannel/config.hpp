#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "deltachannel/effective.hpp"
#include "deltachannel/model.hpp"
#include "deltachannel/ode.hpp"

namespace deltachannel {

struct RunConfig {
    ScatteringModel model;
    EnergyGrid grid;
    SolveMode mode = SolveMode::exact;
    bool compare_oracle = false;
    bool lenient = false;
    int jobs = 1;
    std::string output_path;  // empty: standard output
    IntegratorConfig quad;
    /// Non-fatal findings from validate_model.
    std::vector<std::string> warnings;
};

/// Parses the sectioned key-value format:
///
///   [units]      hbar, mass
///   [channel1]   potential = <kind>, parameters of that kind
///   [channel.N]  potential, parameters, x_cross, K0       (N >= 2)
///   [sweep]      e_min, e_max, steps, mode, oracle, lenient, jobs, output
///   [numerics]   x_min, x_max, abs_tol, rel_tol, pole_tol, max_steps
///
/// Throws ParseError for syntax, unknown sections/keys/kinds and missing
/// fields; ValidationError when the model or grid fails validation.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

}  // namespace deltachannel
