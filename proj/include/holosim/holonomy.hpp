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

#ifndef HOLOSIM_HOLONOMY_HPP
#define HOLOSIM_HOLONOMY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "holosim/loop.hpp"
#include "holosim/network.hpp"
#include "holosim/spectrum.hpp"

namespace holosim {

struct HolonomyResult {
    CMatrix unitary;  // in the anchor basis
    std::size_t subspace_dim = 0;
    SubspaceBasis gauge_anchor;
    double discretization_error_estimate = 0.0;
    double unitarity_defect = 0.0;  // |U^H U - 1| before the polar correction
    std::size_t band_dim = 0;       // full band inside the anchor's charge sectors
    double min_gap = 0.0;
    std::size_t samples = 0;
};

struct HolonomyOptions {
    /// Defaults to the analytic basis at the loop start (X block at J1 = J2 = 0: the two-box encoding).
    std::optional<SubspaceBasis> anchor;
    /// Multiply every numerical band by a random unitary before transport.
    std::optional<std::uint64_t> scramble_seed;
    bool estimate_error = true;
};

/// Anchor used when none is supplied.
SubspaceBasis default_anchor(const BlockModel &model, const ControlSettings &start);

/// Discrete Wilson loop of bands[0..N] (bands[N] spans the same space as bands[0]) seen from `anchor`.
/// Returns anchor^H F_N before polar correction.
CMatrix wilson_loop(const std::vector<CMatrix> &bands, const CMatrix &anchor);

HolonomyResult loop_holonomy(
    const BlockLayout &block,
    const ParameterLoop &loop,
    double energy_selector,
    const HolonomyOptions &options = {});

/// Direction in control space: flux components by junction label plus a bias component.
struct ControlTangent {
    std::map<std::string, double> dphi;
    double dh = 0.0;
};

struct ConnectionResult {
    CMatrix a;  // anti-Hermitian part of <lambda_a | d lambda_b>
    double hermitian_residual = 0.0;
};

/// Central-difference connection in the gauge of the analytic basis.
ConnectionResult wilczek_zee_connection(
    const BlockLayout &block,
    const ControlSettings &controls,
    const ControlTangent &direction,
    double energy_selector,
    double step);

/// Closed-form Berry phase on the Z rectangle; adaptive quadrature to 1e-10 absolute.
double berry_phase_z(double gamma2, double phi1_star, double phi2_star);

struct RotationAngles {
    double phi = 0.0;
    double phi_prime = 0.0;
};

/// Rotation angle from the closed-form integral and phi' = alpha_3/2 - pi/4. Requires gamma_3 != 1.
RotationAngles rotation_angle_x(double phi_star, const JunctionParams &junction3);

}  // namespace holosim

#endif
