// Copyright 2026 The holosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOLOSIM_SCENARIO_HPP
#define HOLOSIM_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holosim/analysis.hpp"
#include "holosim/evolution.hpp"
#include "holosim/gates.hpp"
#include "holosim/loop.hpp"

namespace holosim {

enum class Subcommand { GateZ, GateX, GateCZ, LzScan, Fidelity, LoopDump };

const char *subcommand_name(Subcommand sub);
std::optional<Subcommand> parse_subcommand(std::string_view name);

enum class OutputFormat { Json, Csv };

/// Everything a run needs, after defaults are filled in.
struct Scenario {
    std::string units = "E_J";
    BlockKind block = BlockKind::Z;
    std::string encoding = "single-box";
    std::map<std::string, JunctionParams> junctions;
    std::optional<double> coupling_e_c;  // CZ joint tunneling
    ControlSettings base;                // parked fluxes and bias

    std::string loop_shape;  // Z_RECT, X_PATH, CZ_RECT or explicit
    LoopCorners corners;
    int samples = 10000;
    std::pair<std::string, std::string> labels{"J1", "J2"};
    std::vector<std::map<std::string, double>> vertices;

    std::vector<double> eta_over_gap;
    std::vector<double> etas;
    std::optional<double> tau_op;
    ScheduleOptions schedule;

    std::optional<std::uint64_t> scramble_seed;

    ErrorBudget budget;
    std::optional<double> budget_p;          // overrides the channel sum
    std::optional<double> budget_delta_phi;  // overrides delta_e * tau_op
    std::vector<double> grid_p;
    std::vector<double> grid_delta_phi;
};

/// Parses and validates a JSON scenario; every problem found is reported in one ValidationError.
Scenario parse_scenario(std::string_view text, Subcommand sub);

/// The normalized scenario as JSON text; parse_scenario of it yields the same scenario.
std::string scenario_json(const Scenario &scenario, Subcommand sub);

BlockLayout scenario_layout(const Scenario &scenario);
ParameterLoop scenario_loop(const Scenario &scenario);

struct RunOutput {
    std::string json;
    std::string csv;
};

/// Runs a subcommand. Throws ValidationError or NumericalError.
RunOutput run_scenario(Subcommand sub, const Scenario &scenario);

/// Problems with an emitted document relative to the scenario that produced it; empty when valid.
std::vector<std::string> validate_result(std::string_view json_text, Subcommand sub, const Scenario &scenario);

}  // namespace holosim

#endif
