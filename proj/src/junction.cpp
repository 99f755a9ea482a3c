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

#include "holosim/junction.hpp"

#include <cmath>
#include <string>

namespace holosim {
namespace {

void check_domain(double gamma, double phi) {
    if (!(gamma > 0) || !std::isfinite(gamma)) {
        throw DomainError("junction asymmetry gamma must be > 0, got " + std::to_string(gamma));
    }
    if (!(std::abs(phi) <= kHalfPi)) {
        throw DomainError("reduced flux must satisfy |phi| <= pi/2, got " + std::to_string(phi));
    }
}

}  // namespace

void validate(const JunctionParams &params) {
    if (!(params.e_j > 0) || !std::isfinite(params.e_j)) {
        throw DomainError("junction energy e_j must be > 0, got " + std::to_string(params.e_j));
    }
    check_domain(params.gamma, params.phi);
}

double amplitude(double gamma, double phi) {
    check_domain(gamma, phi);
    double c = std::cos(phi);
    // exact zero at the switch-off point
    if (std::abs(phi) == kHalfPi) {
        c = 0;
    }
    double d = 1 - gamma;
    return std::sqrt(d * d / 4 + gamma * c * c);
}

double phase_shift(double gamma, double phi) {
    check_domain(gamma, phi);
    if (gamma == 1) {
        return 0;
    }
    double c = std::abs(phi) == kHalfPi ? 0.0 : std::cos(phi);
    return std::atan2((1 - gamma) * std::sin(phi), (1 + gamma) * c);
}

cplx effective_coupling(const JunctionParams &params) {
    validate(params);
    double a = amplitude(params.gamma, params.phi);
    double alpha = phase_shift(params.gamma, params.phi);
    return 2 * params.e_j * a * std::polar(1.0, -alpha);
}

}  // namespace holosim
