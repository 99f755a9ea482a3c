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

#include "holosim/gates.hpp"

#include <cmath>

#include <Eigen/LU>

namespace holosim {
namespace {

double wrap(double x) {
    double y = std::remainder(x, 2 * kPi);
    return y <= -kPi ? y + 2 * kPi : y;
}

void require_unitary(const CMatrix &m, double tol, const char *what) {
    if (m.rows() != m.cols()) {
        throw ValidationError(std::string(what) + ": matrix must be square");
    }
    if ((m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())).norm() > tol) {
        throw ValidationError(std::string(what) + ": matrix is not unitary");
    }
}

LogicalGate make_gate(CMatrix m, GateLabel label, std::vector<double> angles) {
    LogicalGate g;
    g.det = m.determinant();
    g.matrix = std::move(m);
    g.label = label;
    g.angles = std::move(angles);
    return g;
}

}  // namespace

const char *gate_label_name(GateLabel label) {
    switch (label) {
        case GateLabel::UZ:
            return "U_Z";
        case GateLabel::UX:
            return "U_X";
        case GateLabel::UCZ:
            return "U_CZ";
        case GateLabel::Composed:
            return "COMPOSED";
    }
    return "?";
}

LogicalGate ideal_gate(GateLabel label, double angle) {
    switch (label) {
        case GateLabel::UZ: {
            CMatrix m = CMatrix::Identity(2, 2);
            m(1, 1) = std::polar(1.0, angle);
            return make_gate(std::move(m), label, {angle});
        }
        case GateLabel::UX: {
            CMatrix m(2, 2);
            m << std::cos(angle), cplx(0, std::sin(angle)), cplx(0, std::sin(angle)), std::cos(angle);
            return make_gate(std::move(m), label, {angle});
        }
        case GateLabel::UCZ: {
            CMatrix m = CMatrix::Identity(4, 4);
            m(2, 2) = std::polar(1.0, angle);
            return make_gate(std::move(m), label, {angle});
        }
        case GateLabel::Composed:
            break;
    }
    throw ValidationError("ideal_gate needs U_Z, U_X or U_CZ");
}

Encoding Encoding::z_single_box() {
    Encoding e{"single-box", BlockKind::Z, CMatrix::Zero(8, 2)};
    e.states(0, 0) = 1;  // |000>
    e.states(2, 1) = 1;  // |010>
    return e;
}

Encoding Encoding::two_box() {
    Encoding e{"two-box", BlockKind::X, CMatrix::Zero(16, 2)};
    e.states(2, 0) = 1;  // |0010>
    e.states(4, 1) = 1;  // |0100>
    return e;
}

Encoding Encoding::cz_single_box() {
    Encoding e{"single-box", BlockKind::CZ, CMatrix::Zero(64, 4)};
    e.states(5, 0) = 1;   // |00>|0101>
    e.states(21, 1) = 1;  // |01>|0101>
    e.states(37, 2) = 1;  // |10>|0101>
    e.states(53, 3) = 1;  // |11>|0101>
    return e;
}

CMatrix canonical_phase(const CMatrix &m) {
    cplx z = m(0, 0);
    double chi = 0;
    if (std::abs(z) >= 1e-8) {
        chi = -std::arg(z);
    } else {
        chi = -std::arg(m.determinant()) / static_cast<double>(m.rows());
    }
    return m * std::polar(1.0, chi);
}

LogicalGate extract_logical(const CMatrix &unitary, const CMatrix &anchor, const Encoding &encoding) {
    if (anchor.cols() != encoding.states.cols() || anchor.rows() != encoding.states.rows()) {
        throw ValidationError(
            "encoding '" + encoding.name + "' does not match the holonomy subspace (dimension " +
            std::to_string(anchor.cols()) + ")");
    }
    CMatrix overlap = anchor.adjoint() * encoding.states;
    if ((overlap.adjoint() * overlap - CMatrix::Identity(overlap.cols(), overlap.cols())).norm() > 1e-8) {
        throw ValidationError("encoding '" + encoding.name + "' does not span the holonomy subspace");
    }
    CMatrix g = overlap.adjoint() * unitary * overlap;
    GateLabel label = g.rows() == 4 ? GateLabel::UCZ : GateLabel::Composed;
    return make_gate(canonical_phase(g), label, {});
}

LogicalGate extract_logical(const HolonomyResult &holonomy, const Encoding &encoding) {
    return extract_logical(holonomy.unitary, holonomy.gauge_anchor.vectors, encoding);
}

LogicalGate compose(const std::vector<LogicalGate> &gates) {
    if (gates.empty()) {
        throw ValidationError("compose needs at least one gate");
    }
    CMatrix m = gates.front().matrix;
    std::vector<double> angles = gates.front().angles;
    for (std::size_t i = 1; i < gates.size(); ++i) {
        if (gates[i].matrix.rows() != m.rows()) {
            throw ValidationError("compose: gate dimensions differ");
        }
        m = gates[i].matrix * m;
        angles.insert(angles.end(), gates[i].angles.begin(), gates[i].angles.end());
    }
    return make_gate(std::move(m), GateLabel::Composed, std::move(angles));
}

EulerAngles euler_decompose(const CMatrix &t) {
    if (t.rows() != 2) {
        throw ValidationError("euler_decompose needs a 2x2 matrix");
    }
    require_unitary(t, 1e-8, "euler_decompose");
    double cb = std::sqrt((std::norm(t(0, 0)) + std::norm(t(1, 1))) / 2);
    double sb = std::sqrt((std::norm(t(0, 1)) + std::norm(t(1, 0))) / 2);
    EulerAngles e;
    e.b = std::atan2(sb, cb);
    if (sb < 1e-12) {
        e.b = 0;
        e.global_phase = std::arg(t(0, 0));
        e.a = std::arg(t(1, 1)) - e.global_phase;
        e.c = 0;
    } else if (cb < 1e-12) {
        e.b = kHalfPi;
        e.c = 0;
        e.global_phase = std::arg(t(0, 1)) - kHalfPi;
        e.a = std::arg(t(1, 0)) - e.global_phase - kHalfPi;
    } else {
        e.global_phase = std::arg(t(0, 0));
        e.c = std::arg(t(0, 1)) - e.global_phase - kHalfPi;
        e.a = std::arg(t(1, 0)) - e.global_phase - kHalfPi;
    }
    e.a = wrap(e.a);
    e.c = wrap(e.c);
    e.global_phase = wrap(e.global_phase);
    if (std::abs(e.a) < 1e-15) {
        e.a = 0;
    }
    if (std::abs(e.c) < 1e-15) {
        e.c = 0;
    }
    if (std::abs(e.global_phase) < 1e-15) {
        e.global_phase = 0;
    }
    return e;
}

CMatrix euler_reconstruct(const EulerAngles &e) {
    return std::polar(1.0, e.global_phase) * ideal_gate(GateLabel::UZ, e.a).matrix * ideal_gate(GateLabel::UX, e.b).matrix *
           ideal_gate(GateLabel::UZ, e.c).matrix;
}

double phase_stripped_distance(const CMatrix &u, const CMatrix &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw ValidationError("phase_stripped_distance: shape mismatch");
    }
    cplx t = (u.adjoint() * v).trace();
    cplx phase = std::abs(t) > 0 ? t / std::abs(t) : cplx(1, 0);
    return (u * phase - v).norm();
}

}  // namespace holosim
