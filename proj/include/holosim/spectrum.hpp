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

#ifndef HOLOSIM_SPECTRUM_HPP
#define HOLOSIM_SPECTRUM_HPP

#include <vector>

#include "holosim/network.hpp"
#include "holosim/types.hpp"

namespace holosim {

struct EigenSystem {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // columns
};

struct SubspaceBasis {
    double energy = 0.0;
    CMatrix vectors;  // orthonormal columns
    double tolerance = 0.0;

    std::size_t dimension() const {
        return static_cast<std::size_t>(vectors.cols());
    }
    CMatrix projector() const {
        return vectors * vectors.adjoint();
    }
};

EigenSystem eigendecompose(const HermitianOperator &h);
EigenSystem eigendecompose(const CMatrix &h);

/// 1e-9 times the spectral range (1e-9 for a scalar spectrum).
double default_degeneracy_tolerance(const RVector &eigenvalues);

/// Span of eigenvectors with |lambda - energy| <= tol. Throws NumericalError if empty.
SubspaceBasis degenerate_subspace(const HermitianOperator &h, double energy, double tol);
SubspaceBasis degenerate_subspace(const HermitianOperator &h, double energy);

/// Normalized Eq.-(7) pair (lambda1, lambda2) on the Z-block basis; energy -h/2.
SubspaceBasis analytic_z_subspace(cplx j1, cplx j2, double h = 0.0);
/// Normalized X-block dark pair (lambda1, lambda2) on the 4-box basis; energy -h/2.
SubspaceBasis analytic_x_subspace(cplx j1, cplx j2, cplx j3, double h = 0.0);
/// Normalized CZ states in logical order (lambda00, lambda01, lambda10, lambda11); energy -h.
SubspaceBasis analytic_cz_subspace(cplx j_a, cplx j_b, double h = 0.0);
/// Dispatch on the block kind using the couplings at `controls`.
SubspaceBasis analytic_subspace(const BlockModel &model, const ControlSettings &controls);

struct PolarFactor {
    CMatrix unitary;  // closest isometry U V^H
    double min_singular = 0.0;
};
PolarFactor polar_factor(const CMatrix &m);

/// basis * polar(basis^H reference): the frame in span(basis) closest to `reference`.
PolarFactor procrustes_align(const CMatrix &basis, const CMatrix &reference);

/// Band and gap of a Hamiltonian restricted to a union of conserved sectors.
struct SectorBand {
    CMatrix band;  // full-basis columns with |lambda - energy| <= tol
    double gap = 0.0;  // distance from energy to the nearest eigenvalue outside the band
    double tolerance = 0.0;
};
SectorBand sector_band(
    const BlockModel &model,
    const ControlSettings &controls,
    const std::vector<std::vector<int>> &sectors,
    double energy);

}  // namespace holosim

#endif
