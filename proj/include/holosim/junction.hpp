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

#ifndef HOLOSIM_JUNCTION_HPP
#define HOLOSIM_JUNCTION_HPP

#include "holosim/types.hpp"

namespace holosim {

/// A flux-tunable SQUID: two parallel junctions with energies E_J and gamma*E_J.
struct JunctionParams {
    double e_j = 1.0;
    double gamma = 1.0;
    /// Reduced flux pi*Phi/Phi_0, |phi| <= pi/2.
    double phi = 0.0;
};

/// Throws DomainError on gamma <= 0, e_j <= 0 or |phi| > pi/2.
void validate(const JunctionParams &params);

/// A(phi) = sqrt((1-gamma)^2/4 + gamma cos^2 phi).
double amplitude(double gamma, double phi);

/// Continuous branch alpha = atan2((1-gamma) sin phi, (1+gamma) cos phi).
double phase_shift(double gamma, double phi);

/// J = 2 E_J A(phi) exp(-i alpha(phi)).
cplx effective_coupling(const JunctionParams &params);

}  // namespace holosim

#endif
