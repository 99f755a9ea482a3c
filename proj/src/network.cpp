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

#include "holosim/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace holosim {

const char *block_kind_name(BlockKind kind) {
    switch (kind) {
        case BlockKind::Prototype:
            return "PROTOTYPE";
        case BlockKind::Z:
            return "Z_BLOCK";
        case BlockKind::X:
            return "X_BLOCK";
        case BlockKind::CZ:
            return "CZ_BLOCK";
    }
    return "?";
}

namespace {

void require_switchable(const JunctionParams &p, const char *label) {
    if (p.gamma != 1.0) {
        throw ValidationError(std::string("junction ") + label + " must be symmetric (gamma = 1) to switch off");
    }
}

}  // namespace

BlockLayout BlockLayout::z_block(const JunctionParams &j1, const JunctionParams &j2) {
    BlockLayout l;
    l.kind = BlockKind::Z;
    l.boxes = {"0", "1", "2"};
    l.junctions = {{"J1", 1, 0, j1}, {"J2", 2, 0, j2}};
    l.validate();
    return l;
}

BlockLayout BlockLayout::x_block(const JunctionParams &j1, const JunctionParams &j2, const JunctionParams &j3) {
    BlockLayout l;
    l.kind = BlockKind::X;
    l.boxes = {"0", "1", "2", "3"};
    l.junctions = {{"J1", 1, 0, j1}, {"J2", 2, 0, j2}, {"J3", 3, 0, j3}};
    l.validate();
    return l;
}

BlockLayout BlockLayout::cz_block(
    const JunctionParams &j1,
    const JunctionParams &j2,
    const JunctionParams &j1p,
    const JunctionParams &j2p,
    double e_c) {
    BlockLayout l;
    l.kind = BlockKind::CZ;
    l.boxes = {"1", "1'", "0", "0'", "2", "2'"};
    l.junctions = {{"J1", 0, 2, j1}, {"J2", 4, 2, j2}, {"J1'", 1, 3, j1p}, {"J2'", 5, 3, j2p}};
    l.e_c = e_c;
    l.validate();
    return l;
}

int BlockLayout::box_index(std::string_view label) const {
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (boxes[i] == label) {
            return static_cast<int>(i);
        }
    }
    throw ValidationError("unknown box label '" + std::string(label) + "'");
}

int BlockLayout::junction_index(std::string_view label) const {
    for (std::size_t i = 0; i < junctions.size(); ++i) {
        if (junctions[i].label == label) {
            return static_cast<int>(i);
        }
    }
    throw ValidationError("unknown junction label '" + std::string(label) + "'");
}

const Junction &BlockLayout::junction(std::string_view label) const {
    return junctions[junction_index(label)];
}

void BlockLayout::validate() const {
    std::size_t want_boxes = 0;
    std::vector<std::string> want_junctions;
    std::vector<std::string> switchable;
    switch (kind) {
        case BlockKind::Z:
            want_boxes = 3;
            want_junctions = {"J1", "J2"};
            switchable = {"J1"};
            break;
        case BlockKind::X:
            want_boxes = 4;
            want_junctions = {"J1", "J2", "J3"};
            switchable = {"J1", "J2"};
            break;
        case BlockKind::CZ:
            want_boxes = 6;
            want_junctions = {"J1", "J2", "J1'", "J2'"};
            switchable = {"J1", "J1'"};
            if (!e_c || !(*e_c > 0)) {
                throw ValidationError("CZ block requires a charging energy e_c > 0");
            }
            break;
        case BlockKind::Prototype:
            throw ValidationError("the prototype model has no block layout; use prototype_hamiltonian");
    }
    if (boxes.size() != want_boxes) {
        throw ValidationError(std::string(block_kind_name(kind)) + " needs " + std::to_string(want_boxes) + " boxes");
    }
    if (junctions.size() != want_junctions.size()) {
        throw ValidationError(std::string(block_kind_name(kind)) + " has the wrong number of junctions");
    }
    for (std::size_t i = 0; i < junctions.size(); ++i) {
        if (junctions[i].label != want_junctions[i]) {
            throw ValidationError("junction " + std::to_string(i) + " must be labelled " + want_junctions[i]);
        }
        holosim::validate(junctions[i].params);
    }
    for (const auto &s : switchable) {
        require_switchable(junction(s).params, s.c_str());
    }
}

int occupation(const BlockLayout &layout, std::size_t index, int box) {
    int shift = static_cast<int>(layout.boxes.size()) - 1 - box;
    return static_cast<int>((index >> shift) & 1u);
}

std::string basis_label(const BlockLayout &layout, std::size_t index) {
    std::string s;
    for (std::size_t b = 0; b < layout.boxes.size(); ++b) {
        s.push_back(occupation(layout, index, static_cast<int>(b)) ? '1' : '0');
    }
    return s;
}

std::size_t basis_index(const BlockLayout &layout, std::string_view bits) {
    if (bits.size() != layout.boxes.size()) {
        throw ValidationError("charge state '" + std::string(bits) + "' has the wrong length");
    }
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ValidationError("charge state '" + std::string(bits) + "' must contain only 0/1");
        }
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    return index;
}

CVector basis_vector(const BlockLayout &layout, std::string_view bits) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(layout.dimension()));
    v(static_cast<Eigen::Index>(basis_index(layout, bits))) = 1;
    return v;
}

ControlSettings ControlSettings::from_gate_charge(std::map<std::string, double> phis, double n_g, double e_c) {
    ControlSettings c;
    c.phis = std::move(phis);
    c.n_g = n_g;
    c.e_c = e_c;
    c.h = e_c * (2 * n_g - 1);
    return c;
}

void validate(const BlockLayout &layout, const ControlSettings &controls) {
    for (const auto &j : layout.junctions) {
        auto it = controls.phis.find(j.label);
        if (it == controls.phis.end()) {
            throw ValidationError("controls lack a flux for junction " + j.label);
        }
        JunctionParams p = j.params;
        p.phi = it->second;
        validate(p);
    }
    for (const auto &[label, phi] : controls.phis) {
        (void)phi;
        layout.junction_index(label);
    }
    if (!std::isfinite(controls.h)) {
        throw ValidationError("bias h must be finite");
    }
    if (controls.n_g) {
        std::optional<double> e_c = controls.e_c ? controls.e_c : layout.e_c;
        if (e_c && std::abs(controls.h - *e_c * (2 * *controls.n_g - 1)) > 1e-12) {
            throw ValidationError("bias h is inconsistent with h = E_C (2 n_g - 1)");
        }
    }
    if (layout.kind == BlockKind::CZ && controls.e_c && std::abs(*controls.e_c - *layout.e_c) > 1e-12) {
        throw ValidationError("controls e_c differs from the CZ block charging energy");
    }
}

HermitianOperator::HermitianOperator(CMatrix m, std::vector<std::string> basis) : m_(std::move(m)), basis_(std::move(basis)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ValidationError("Hermitian operator must be square and non-empty");
    }
    double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-13 * scale) {
        throw ValidationError("operator is not Hermitian");
    }
    if (!basis_.empty() && basis_.size() != static_cast<std::size_t>(m_.rows())) {
        throw ValidationError("basis label count does not match operator dimension");
    }
}

HermitianOperator prototype_hamiltonian(double epsilon, const std::vector<cplx> &omegas) {
    if (omegas.empty()) {
        throw ValidationError("prototype_hamiltonian needs at least one coupling");
    }
    auto n = static_cast<Eigen::Index>(omegas.size());
    CMatrix m = CMatrix::Zero(n + 1, n + 1);
    m(0, 0) = epsilon;
    std::vector<std::string> basis{"0^"};
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i + 1, 0) = -0.5 * omegas[i];
        m(0, i + 1) = -0.5 * std::conj(omegas[i]);
        basis.push_back(std::to_string(i + 1) + "^");
    }
    return HermitianOperator(std::move(m), std::move(basis));
}

std::pair<cplx, cplx> joint_tunneling_amplitudes(cplx j1, cplx j1p, cplx j2, cplx j2p, double e_c) {
    if (!(e_c > 0)) {
        throw DomainError("charging energy e_c must be > 0");
    }
    return {4.0 * j1 * std::conj(j1p) / e_c, 4.0 * j2 * std::conj(j2p) / e_c};
}

BlockModel::BlockModel(BlockLayout layout) : layout_(std::move(layout)) {
    layout_.validate();
    const std::size_t dim = layout_.dimension();
    bias_diag_.assign(dim, 0.0);
    auto bit = [&](std::size_t i, int box) { return occupation(layout_, i, box); };
    auto flip = [&](std::size_t i, int box) {
        return i ^ (std::size_t{1} << (layout_.boxes.size() - 1 - static_cast<std::size_t>(box)));
    };
    if (layout_.kind == BlockKind::CZ) {
        const int b1 = 0, b1p = 1, b0 = 2, b0p = 3, b2 = 4, b2p = 5;
        for (std::size_t i = 0; i < dim; ++i) {
            // -h/2 [sz_0 - sz_0'] with sz = |0><0| - |1><1|
            bias_diag_[i] = bit(i, b0) - bit(i, b0p);
            // pair 0 -> 1 together with pair 1' -> 0' (J_a), likewise via 2, 2' (J_b)
            const int targets[2][2] = {{b1, b1p}, {b2, b2p}};
            for (int t = 0; t < 2; ++t) {
                int a = targets[t][0], ap = targets[t][1];
                if (bit(i, b0) == 1 && bit(i, a) == 0 && bit(i, ap) == 1 && bit(i, b0p) == 0) {
                    std::size_t j = flip(flip(flip(flip(i, b0), a), ap), b0p);
                    hops_.push_back({static_cast<int>(j), static_cast<int>(i), t});
                }
            }
        }
    } else {
        const int b0 = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            // -h/2 sz_0
            bias_diag_[i] = -0.5 * (1 - 2 * bit(i, b0));
            for (std::size_t n = 0; n < layout_.junctions.size(); ++n) {
                int b = layout_.junctions[n].box;
                if (bit(i, b0) == 1 && bit(i, b) == 0) {
                    std::size_t j = flip(flip(i, b0), b);
                    hops_.push_back({static_cast<int>(j), static_cast<int>(i), static_cast<int>(n)});
                }
            }
        }
    }
}

std::vector<cplx> BlockModel::junction_couplings(const ControlSettings &controls) const {
    validate(layout_, controls);
    std::vector<cplx> out;
    for (const auto &j : layout_.junctions) {
        JunctionParams p = j.params;
        p.phi = controls.phis.at(j.label);
        out.push_back(effective_coupling(p));
    }
    return out;
}

std::vector<cplx> BlockModel::term_couplings(const ControlSettings &controls) const {
    auto js = junction_couplings(controls);
    if (layout_.kind != BlockKind::CZ) {
        return js;
    }
    auto [ja, jb] = joint_tunneling_amplitudes(js[0], js[2], js[1], js[3], *layout_.e_c);
    return {ja, jb};
}

CMatrix BlockModel::assemble_from(const std::vector<cplx> &terms, double h, const std::vector<int> &indices) const {
    const auto dim = static_cast<int>(dimension());
    std::vector<int> local(static_cast<std::size_t>(dim), -1);
    int n = dim;
    if (indices.empty()) {
        for (int i = 0; i < dim; ++i) {
            local[static_cast<std::size_t>(i)] = i;
        }
    } else {
        n = static_cast<int>(indices.size());
        for (int k = 0; k < n; ++k) {
            local[static_cast<std::size_t>(indices[static_cast<std::size_t>(k)])] = k;
        }
    }
    CMatrix m = CMatrix::Zero(n, n);
    for (int i = 0; i < dim; ++i) {
        int li = local[static_cast<std::size_t>(i)];
        if (li >= 0) {
            m(li, li) = h * bias_diag_[static_cast<std::size_t>(i)];
        }
    }
    for (const auto &hop : hops_) {
        int lt = local[static_cast<std::size_t>(hop.to)];
        int lf = local[static_cast<std::size_t>(hop.from)];
        if (lt < 0 && lf < 0) {
            continue;
        }
        if (lt < 0 || lf < 0) {
            throw ValidationError("state subset is not closed under the block Hamiltonian");
        }
        cplx c = -0.5 * terms[static_cast<std::size_t>(hop.term)];
        m(lt, lf) += c;
        m(lf, lt) += std::conj(c);
    }
    return m;
}

CMatrix BlockModel::assemble(const ControlSettings &controls, const std::vector<int> &indices) const {
    return assemble_from(term_couplings(controls), controls.h, indices);
}

HermitianOperator BlockModel::hamiltonian(const ControlSettings &controls) const {
    std::vector<std::string> basis;
    for (std::size_t i = 0; i < dimension(); ++i) {
        basis.push_back(basis_label(layout_, i));
    }
    return HermitianOperator(assemble(controls), std::move(basis));
}

std::vector<int> BlockModel::charges(std::size_t index) const {
    if (layout_.kind == BlockKind::CZ) {
        int unprimed = occupation(layout_, index, 0) + occupation(layout_, index, 2) + occupation(layout_, index, 4);
        int primed = occupation(layout_, index, 1) + occupation(layout_, index, 3) + occupation(layout_, index, 5);
        return {unprimed, primed};
    }
    int total = 0;
    for (std::size_t b = 0; b < layout_.boxes.size(); ++b) {
        total += occupation(layout_, index, static_cast<int>(b));
    }
    return {total};
}

std::vector<std::vector<int>> BlockModel::sectors_touching(const CMatrix &vectors, double tol) const {
    std::set<std::vector<int>> keys;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
        if (vectors.row(i).cwiseAbs().maxCoeff() > tol) {
            keys.insert(charges(static_cast<std::size_t>(i)));
        }
    }
    std::vector<std::vector<int>> out;
    for (const auto &key : keys) {
        std::vector<int> sector;
        for (std::size_t i = 0; i < dimension(); ++i) {
            if (charges(i) == key) {
                sector.push_back(static_cast<int>(i));
            }
        }
        out.push_back(std::move(sector));
    }
    return out;
}

namespace {

HermitianOperator checked_block(BlockKind want, const BlockLayout &layout, const ControlSettings &controls) {
    if (layout.kind != want) {
        throw ValidationError(std::string("expected a ") + block_kind_name(want) + " layout, got " + block_kind_name(layout.kind));
    }
    return BlockModel(layout).hamiltonian(controls);
}

}  // namespace

HermitianOperator z_block_hamiltonian(const BlockLayout &layout, const ControlSettings &controls) {
    return checked_block(BlockKind::Z, layout, controls);
}

HermitianOperator x_block_hamiltonian(const BlockLayout &layout, const ControlSettings &controls) {
    return checked_block(BlockKind::X, layout, controls);
}

HermitianOperator cz_block_hamiltonian(const BlockLayout &layout, const ControlSettings &controls) {
    return checked_block(BlockKind::CZ, layout, controls);
}

HermitianOperator block_hamiltonian(const BlockLayout &layout, const ControlSettings &controls) {
    return BlockModel(layout).hamiltonian(controls);
}

double computational_energy(BlockKind kind, double h) {
    return kind == BlockKind::CZ ? -h : -0.5 * h;
}

}  // namespace holosim
