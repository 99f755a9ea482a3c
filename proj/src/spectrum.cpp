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

#include "holosim/spectrum.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace holosim {

EigenSystem eigendecompose(const CMatrix &h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenSystem eigendecompose(const HermitianOperator &h) {
    return eigendecompose(h.matrix());
}

double default_degeneracy_tolerance(const RVector &eigenvalues) {
    double range = eigenvalues.size() > 0 ? eigenvalues.maxCoeff() - eigenvalues.minCoeff() : 0.0;
    return 1e-9 * (range > 0 ? range : 1.0);
}

SubspaceBasis degenerate_subspace(const HermitianOperator &h, double energy, double tol) {
    if (!(tol > 0)) {
        throw ValidationError("degeneracy tolerance must be > 0");
    }
    EigenSystem es = eigendecompose(h);
    std::vector<Eigen::Index> picked;
    for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
        if (std::abs(es.eigenvalues(k) - energy) <= tol) {
            picked.push_back(k);
        }
    }
    if (picked.empty()) {
        throw NumericalError("no eigenvalue within tolerance of energy " + std::to_string(energy));
    }
    SubspaceBasis out;
    out.energy = energy;
    out.tolerance = tol;
    out.vectors.resize(es.eigenvectors.rows(), static_cast<Eigen::Index>(picked.size()));
    for (std::size_t c = 0; c < picked.size(); ++c) {
        out.vectors.col(static_cast<Eigen::Index>(c)) = es.eigenvectors.col(picked[c]);
    }
    return out;
}

SubspaceBasis degenerate_subspace(const HermitianOperator &h, double energy) {
    EigenSystem es = eigendecompose(h);
    return degenerate_subspace(h, energy, default_degeneracy_tolerance(es.eigenvalues));
}

SubspaceBasis analytic_z_subspace(cplx j1, cplx j2, double h) {
    double norm2 = std::norm(j1) + std::norm(j2);
    if (!(norm2 > 0)) {
        throw DomainError("analytic_z_subspace: J1 = J2 = 0 leaves lambda1 undefined");
    }
    SubspaceBasis s;
    s.energy = -0.5 * h;
    s.vectors = CMatrix::Zero(8, 2);
    // |010> = 2, |001> = 1, |000> = 0 in box order (0,1,2)
    s.vectors(2, 0) = std::conj(j2);
    s.vectors(1, 0) = -std::conj(j1);
    s.vectors.col(0) /= std::sqrt(norm2);
    s.vectors(0, 1) = 1;
    return s;
}

SubspaceBasis analytic_x_subspace(cplx j1, cplx j2, cplx j3, double h) {
    double norm2 = std::norm(j1) + std::norm(j2);
    if (!(norm2 > 0)) {
        throw DomainError("analytic_x_subspace: J1 = J2 = 0 leaves the dark pair undefined");
    }
    SubspaceBasis s;
    s.energy = -0.5 * h;
    s.vectors = CMatrix::Zero(16, 2);
    // box order (0,1,2,3): |0100> = 4, |0010> = 2, |0001> = 1
    s.vectors(4, 0) = std::conj(j2);
    s.vectors(2, 0) = -std::conj(j1);
    s.vectors.col(0) /= std::sqrt(norm2);
    cplx pre = std::conj(j3) / norm2;
    s.vectors(4, 1) = pre * j1;
    s.vectors(2, 1) = pre * j2;
    s.vectors(1, 1) = -1;
    s.vectors.col(1).normalize();
    return s;
}

SubspaceBasis analytic_cz_subspace(cplx j_a, cplx j_b, double h) {
    double norm2 = std::norm(j_a) + std::norm(j_b);
    if (!(norm2 > 0)) {
        throw DomainError("analytic_cz_subspace: J_a = J_b = 0 leaves lambda10 undefined");
    }
    SubspaceBasis s;
    s.energy = -h;
    s.vectors = CMatrix::Zero(64, 4);
    // box order (1,1',0,0',2,2')
    s.vectors(5, 0) = 1;   // |00>|0101>
    s.vectors(21, 1) = 1;  // |01>|0101>
    s.vectors(37, 2) = std::conj(j_b) / std::sqrt(norm2);   // |10>|0101>
    s.vectors(22, 2) = -std::conj(j_a) / std::sqrt(norm2);  // |01>|0110>
    s.vectors(53, 3) = 1;  // |11>|0101>
    return s;
}

SubspaceBasis analytic_subspace(const BlockModel &model, const ControlSettings &controls) {
    auto terms = model.term_couplings(controls);
    switch (model.layout().kind) {
        case BlockKind::Z:
            return analytic_z_subspace(terms[0], terms[1], controls.h);
        case BlockKind::X:
            return analytic_x_subspace(terms[0], terms[1], terms[2], controls.h);
        case BlockKind::CZ:
            return analytic_cz_subspace(terms[0], terms[1], controls.h);
        case BlockKind::Prototype:
            break;
    }
    throw ValidationError("no analytic subspace for this block kind");
}

PolarFactor polar_factor(const CMatrix &m) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    PolarFactor p;
    p.unitary = svd.matrixU() * svd.matrixV().adjoint();
    p.min_singular = svd.singularValues().size() > 0 ? svd.singularValues().minCoeff() : 0.0;
    return p;
}

PolarFactor procrustes_align(const CMatrix &basis, const CMatrix &reference) {
    PolarFactor p = polar_factor(basis.adjoint() * reference);
    p.unitary = basis * p.unitary;
    return p;
}

SectorBand sector_band(
    const BlockModel &model,
    const ControlSettings &controls,
    const std::vector<std::vector<int>> &sectors,
    double energy) {
    auto terms = model.term_couplings(controls);
    std::vector<EigenSystem> systems;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto &sector : sectors) {
        systems.push_back(eigendecompose(model.assemble_from(terms, controls.h, sector)));
        lo = std::min(lo, systems.back().eigenvalues.minCoeff());
        hi = std::max(hi, systems.back().eigenvalues.maxCoeff());
    }
    SectorBand out;
    out.tolerance = 1e-9 * (hi > lo ? hi - lo : 1.0);
    out.gap = std::numeric_limits<double>::infinity();
    std::vector<CVector> cols;
    for (std::size_t s = 0; s < sectors.size(); ++s) {
        const auto &es = systems[s];
        for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
            double d = std::abs(es.eigenvalues(k) - energy);
            if (d <= out.tolerance) {
                CVector v = CVector::Zero(static_cast<Eigen::Index>(model.dimension()));
                for (std::size_t r = 0; r < sectors[s].size(); ++r) {
                    v(sectors[s][r]) = es.eigenvectors(static_cast<Eigen::Index>(r), k);
                }
                cols.push_back(std::move(v));
            } else {
                out.gap = std::min(out.gap, d);
            }
        }
    }
    out.band.resize(static_cast<Eigen::Index>(model.dimension()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out.band.col(static_cast<Eigen::Index>(c)) = cols[c];
    }
    return out;
}

}  // namespace holosim
