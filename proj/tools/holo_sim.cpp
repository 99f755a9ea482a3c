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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "holosim/scenario.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int run(const std::string &sub_name, const std::string &config, const std::string &out_path, const std::string &format) {
    auto sub = holosim::parse_subcommand(sub_name);
    if (!sub) {
        std::cerr << "error: unknown subcommand '" << sub_name << "'\n";
        return kExitValidation;
    }
    std::ifstream in(config);
    if (!in) {
        std::cerr << "error: cannot read scenario file '" << config << "'\n";
        return kExitValidation;
    }
    std::stringstream text;
    text << in.rdbuf();

    holosim::RunOutput result;
    try {
        holosim::Scenario scenario = holosim::parse_scenario(text.str(), *sub);
        result = holosim::run_scenario(*sub, scenario);
        auto problems = holosim::validate_result(result.json, *sub, scenario);
        if (!problems.empty()) {
            std::cerr << "error: result document failed re-validation:\n";
            for (const auto &p : problems) {
                std::cerr << "  - " << p << "\n";
            }
            return kExitNumerical;
        }
    } catch (const holosim::ValidationError &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const holosim::DomainError &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const holosim::NumericalError &e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }

    const std::string &payload = format == "csv" ? result.csv : result.json;
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitValidation;
        }
        out << payload;
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"holo-sim: holonomic gates on Josephson charge-qubit networks"};
    app.require_subcommand(1, 1);
    std::string config;
    std::string out_path;
    std::string format = "json";
    for (const char *name : {"gate-z", "gate-x", "gate-cz", "lz-scan", "fidelity", "loop-dump"}) {
        CLI::App *sub = app.add_subcommand(name);
        sub->add_option("config", config, "scenario file (JSON)")->required();
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }
    return run(app.get_subcommands().front()->get_name(), config, out_path, format);
}
