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

#ifndef HOLOSIM_ANALYSIS_HPP
#define HOLOSIM_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

namespace holosim {

/// Energies and rates share the simulation unit (hbar = 1); times are inverse energies.
struct ErrorBudget {
    double delta = 1.0;       // minimal gap
    double eta = 1.0;         // adiabaticity
    double tau_op = 3.0;      // operation time
    double delta_e = 0.1;     // degeneracy splitting from n_g fluctuations
    double delta_s = 5.0;     // superconducting gap
    double e_c = 0.0;         // charging energy
    double temperature = 0.1; // k_B T
    double qp_prefactor = 1.0;

    /// Messages for entries that must be positive; a warning if tau_op * delta < 1.
    std::vector<std::string> check() const;
};

/// exp(-pi delta / eta), clamped to [0, 1].
double lz_probability(double delta, double eta);

/// qp_prefactor * exp(-(2 delta_s + e_c) / temperature).
double quasiparticle_rate(const ErrorBudget &budget);
/// The exponent -(2 delta_s + e_c) / temperature alone.
double quasiparticle_exponent(const ErrorBudget &budget);

/// delta_e * tau_op
double phase_error(double delta_e, double tau_op);

/// sqrt((1 - p) (1 - sin^4(delta_phi / 2)))
double fidelity(double p, double delta_phi);

struct AdiabaticWindow {
    double tau_min = 0.0;
    double tau_max = 0.0;
    bool empty = true;

    bool contains(double tau) const {
        return !empty && tau_min < tau && tau < tau_max;
    }
};

/// (1/delta, 1/delta_e); empty when delta <= delta_e.
AdiabaticWindow adiabatic_window(double delta, double delta_e);

/// Both loss channels for one operation: LZ at the budget eta and quasiparticles over tau_op.
struct ChannelProbabilities {
    double p_lz = 0.0;
    double p_qp = 0.0;
    double p_total = 0.0;  // p_lz + p_qp, clamped to 1
};
ChannelProbabilities channel_probabilities(const ErrorBudget &budget);

/// Converts laboratory quantities to simulation units given the angular frequency of one energy unit.
struct UnitSystem {
    double omega = 1.0;  // rad/s represented by one simulation energy unit

    /// One energy unit corresponds to 1 / period.
    static UnitSystem from_period(double seconds);

    double time_from_seconds(double seconds) const;
    double seconds_from_time(double t) const;
    double energy_from_rate(double per_second) const;
    double energy_from_temperature(double kelvin) const;
};

inline constexpr double kBoltzmann = 1.380649e-23;    // J/K
inline constexpr double kHbar = 1.054571817e-34;      // J s

/// Reference operating-point fidelity, reported next to the formula value.
inline constexpr double kQuotedFidelity = 0.998;

}  // namespace holosim

#endif
