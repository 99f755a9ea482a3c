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

#include "holosim/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "holosim/types.hpp"

namespace holosim {

std::vector<std::string> ErrorBudget::check() const {
    std::vector<std::string> out;
    auto positive = [&](double v, const char *name) {
        if (!(v > 0)) {
            out.push_back(std::string(name) + " must be > 0");
        }
    };
    positive(delta, "delta");
    positive(eta, "eta");
    positive(tau_op, "tau_op");
    positive(temperature, "temperature");
    positive(qp_prefactor, "qp_prefactor");
    if (!(delta_e >= 0)) {
        out.push_back("delta_e must be >= 0");
    }
    if (!(delta_s >= 0)) {
        out.push_back("delta_s must be >= 0");
    }
    if (!(e_c >= 0)) {
        out.push_back("e_c must be >= 0");
    }
    if (tau_op * delta < 1) {
        out.push_back("warning: tau_op * delta < 1, adiabaticity violated");
    }
    return out;
}

double lz_probability(double delta, double eta) {
    if (!(delta > 0) || !(eta > 0)) {
        throw DomainError("lz_probability needs delta > 0 and eta > 0");
    }
    return std::clamp(std::exp(-kPi * delta / eta), 0.0, 1.0);
}

double quasiparticle_exponent(const ErrorBudget &budget) {
    if (!(budget.temperature > 0)) {
        throw DomainError("quasiparticle_rate needs temperature > 0");
    }
    return -(2 * budget.delta_s + budget.e_c) / budget.temperature;
}

double quasiparticle_rate(const ErrorBudget &budget) {
    return budget.qp_prefactor * std::exp(quasiparticle_exponent(budget));
}

double phase_error(double delta_e, double tau_op) {
    if (!(delta_e >= 0) || !(tau_op >= 0)) {
        throw DomainError("phase_error needs non-negative inputs");
    }
    return delta_e * tau_op;
}

double fidelity(double p, double delta_phi) {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("fidelity needs p in [0, 1]");
    }
    double s = std::sin(delta_phi / 2);
    double s2 = s * s;
    return std::sqrt((1 - p) * (1 - s2 * s2));
}

AdiabaticWindow adiabatic_window(double delta, double delta_e) {
    AdiabaticWindow w;
    if (!(delta > 0) || !(delta_e > 0) || delta <= delta_e) {
        return w;
    }
    w.tau_min = 1 / delta;
    w.tau_max = 1 / delta_e;
    w.empty = false;
    return w;
}

ChannelProbabilities channel_probabilities(const ErrorBudget &budget) {
    ChannelProbabilities c;
    c.p_lz = lz_probability(budget.delta, budget.eta);
    c.p_qp = std::min(1.0, quasiparticle_rate(budget) * budget.tau_op);
    c.p_total = std::min(1.0, c.p_lz + c.p_qp);
    return c;
}

UnitSystem UnitSystem::from_period(double seconds) {
    if (!(seconds > 0)) {
        throw DomainError("unit period must be > 0");
    }
    return UnitSystem{1 / seconds};
}

double UnitSystem::time_from_seconds(double seconds) const {
    return seconds * omega;
}

double UnitSystem::seconds_from_time(double t) const {
    return t / omega;
}

double UnitSystem::energy_from_rate(double per_second) const {
    return per_second / omega;
}

double UnitSystem::energy_from_temperature(double kelvin) const {
    return kBoltzmann * kelvin / kHbar / omega;
}

}  // namespace holosim
