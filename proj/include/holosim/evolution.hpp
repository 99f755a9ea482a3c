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

#ifndef HOLOSIM_EVOLUTION_HPP
#define HOLOSIM_EVOLUTION_HPP

#include <optional>
#include <vector>

#include "holosim/holonomy.hpp"
#include "holosim/kernels.hpp"
#include "holosim/loop.hpp"
#include "holosim/network.hpp"
#include "holosim/spectrum.hpp"

namespace holosim {

/// Time profile along each loop segment (or the whole loop for CosineGlobal).
enum class RampProfile {
    Smooth,            // u -> f(u) / (f(u) + f(1-u)), f(x) = exp(-1/x), per segment
    CosinePerSegment,  // (1 - cos(pi u)) / 2 per segment
    CosineGlobal,      // (1 - cos(pi tau)) / 2 over the whole loop
    Linear,
};

const char *ramp_profile_name(RampProfile p);
RampProfile parse_ramp_profile(const std::string &name);

struct ScheduleOptions {
    RampProfile profile = RampProfile::Smooth;
    double dt_max = 0.25;
    int min_steps = 100;
    int probe_points_per_segment = 400;
};

struct Schedule {
    double total_time = 0.0;
    int time_steps = 100;
    RampProfile profile = RampProfile::Smooth;
    std::size_t segments = 1;
    /// eta with max_t |dH/dt| = eta * gap
    double eta = 0.0;
    double gap = 0.0;
    /// max over tau in [0,1] of |dH/dtau|
    double max_slope = 0.0;

    /// Loop parameter s in [0,1] at normalized time tau = t / total_time.
    double position(double tau) const;
};

/// Minimal gap and steepest |dH/dtau| of the loop under a profile, inside the anchor's charge sectors.
struct LoopProfile {
    double gap = 0.0;
    double max_slope = 0.0;
};
LoopProfile measure_loop(
    const BlockLayout &block,
    const ParameterLoop &loop,
    const SubspaceBasis &anchor,
    const ScheduleOptions &options = {});

/// Schedule realizing adiabaticity `eta` (absolute rate, energy units).
Schedule make_schedule(
    const BlockLayout &block,
    const ParameterLoop &loop,
    double eta,
    const ScheduleOptions &options = {},
    const std::optional<SubspaceBasis> &anchor = std::nullopt);

/// Schedule with eta = gap / ratio.
Schedule make_schedule_for_ratio(
    const BlockLayout &block,
    const ParameterLoop &loop,
    double ratio,
    const ScheduleOptions &options = {},
    const std::optional<SubspaceBasis> &anchor = std::nullopt);

/// Same schedule with `steps` time steps.
Schedule with_steps(Schedule s, int steps);

/// max_n |H(t_{n+1}) - H(t_n)| / dt / gap on (at most 20000) step intervals.
double realized_eta(const BlockLayout &block, const ParameterLoop &loop, const Schedule &schedule, const SubspaceBasis &anchor);

struct Propagation {
    CMatrix states;  // one column per initial state
    double max_norm_error = 0.0;
    double frame_phase = 0.0;  // -sum_n E_comp(t_n) dt, already included in states
};

/// Midpoint exponential stepping; each step applies exp(-i H(t_mid) dt) exactly on every charge sector.
/// `table` defaults to kernels::active().
Propagation propagate(
    const BlockLayout &block,
    const ParameterLoop &loop,
    const Schedule &schedule,
    const CMatrix &initial,
    const kernels::KernelTable *table = nullptr);
CVector propagate(const BlockLayout &block, const ParameterLoop &loop, const Schedule &schedule, const CVector &initial);

struct GateEstimate {
    CMatrix unitary;   // polar-unitarized transfer matrix in the anchor basis
    CMatrix transfer;  // anchor^H psi(T) with the dynamic phase removed
    double leakage = 0.0;
    /// -E T, the common phase every computational state acquires
    double dynamic_phase = 0.0;
    double max_norm_error = 0.0;
    SubspaceBasis anchor;
    Schedule schedule;
};

GateEstimate adiabatic_gate(
    const BlockLayout &block,
    const ParameterLoop &loop,
    const Schedule &schedule,
    const std::optional<SubspaceBasis> &anchor = std::nullopt);

struct LzRow {
    double eta = 0.0;
    double eta_over_gap = 0.0;
    double total_time = 0.0;
    int steps = 0;
    double leakage = 0.0;
    bool in_fit = false;
};

struct LzScan {
    std::vector<LzRow> rows;
    double gap = 0.0;
    double slope = 0.0;  // d ln(leakage) / d(1/eta)
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t fit_points = 0;
};

inline constexpr double kLeakageFloor = 1e-13;

/// `etas` positive and descending. Leakage below 1e-13 is reported but excluded from the fit.
LzScan landau_zener_scan(
    const BlockLayout &block,
    const ParameterLoop &loop,
    const std::vector<double> &etas,
    const ScheduleOptions &options = {},
    const std::optional<SubspaceBasis> &anchor = std::nullopt);

}  // namespace holosim

#endif
