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

#ifndef HOLOSIM_NETWORK_HPP
#define HOLOSIM_NETWORK_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "holosim/junction.hpp"
#include "holosim/types.hpp"

namespace holosim {

enum class BlockKind { Prototype, Z, X, CZ };

const char *block_kind_name(BlockKind kind);

struct Junction {
    std::string label;
    int box;       // index into BlockLayout::boxes, the box the pair tunnels to
    int partner;   // the ancilla box 0 (or 0') of the block
    JunctionParams params;
};

/// Boxes and junctions of one gate block. The first box is the most significant basis bit.
struct BlockLayout {
    BlockKind kind = BlockKind::Z;
    std::vector<std::string> boxes;
    std::vector<Junction> junctions;
    std::optional<double> e_c;

    /// Boxes (0,1,2); junctions J1:(1,0), J2:(2,0). J1 must have gamma = 1.
    static BlockLayout z_block(const JunctionParams &j1, const JunctionParams &j2);
    /// Boxes (0,1,2,3); J1, J2 (gamma = 1) and J3 to box 0.
    static BlockLayout x_block(const JunctionParams &j1, const JunctionParams &j2, const JunctionParams &j3);
    /// Boxes (1,1',0,0',2,2'); J1, J1' must have gamma = 1.
    static BlockLayout cz_block(
        const JunctionParams &j1,
        const JunctionParams &j2,
        const JunctionParams &j1p,
        const JunctionParams &j2p,
        double e_c);

    std::size_t dimension() const {
        return std::size_t{1} << boxes.size();
    }
    int box_index(std::string_view label) const;
    int junction_index(std::string_view label) const;
    const Junction &junction(std::string_view label) const;
    void validate() const;
};

/// Occupation bit of `box` in basis state `index`.
int occupation(const BlockLayout &layout, std::size_t index, int box);
/// Bit string such as "010" in declared box order.
std::string basis_label(const BlockLayout &layout, std::size_t index);
std::size_t basis_index(const BlockLayout &layout, std::string_view bits);
CVector basis_vector(const BlockLayout &layout, std::string_view bits);

struct ControlSettings {
    std::map<std::string, double> phis;
    /// h = E_C (2 n_g - 1)
    double h = 0.0;
    std::optional<double> n_g;
    std::optional<double> e_c;

    static ControlSettings from_gate_charge(std::map<std::string, double> phis, double n_g, double e_c);
};

void validate(const BlockLayout &layout, const ControlSettings &controls);

class HermitianOperator {
   public:
    /// Throws ValidationError unless m equals its adjoint within 1e-13 (relative to max(1, |m|)).
    explicit HermitianOperator(CMatrix m, std::vector<std::string> basis = {});

    const CMatrix &matrix() const {
        return m_;
    }
    std::size_t dimension() const {
        return static_cast<std::size_t>(m_.rows());
    }
    const std::vector<std::string> &basis() const {
        return basis_;
    }

   private:
    CMatrix m_;
    std::vector<std::string> basis_;
};

/// Basis {|0^>, |1^>, ..., |N^>}.
HermitianOperator prototype_hamiltonian(double epsilon, const std::vector<cplx> &omegas);

/// (J_a, J_b) = (4 J1 J1'^* / E_C, 4 J2 J2'^* / E_C)
std::pair<cplx, cplx> joint_tunneling_amplitudes(cplx j1, cplx j1p, cplx j2, cplx j2p, double e_c);

/// Precomputed hopping structure of a block; assembles full or sector-restricted matrices.
class BlockModel {
   public:
    explicit BlockModel(BlockLayout layout);

    const BlockLayout &layout() const {
        return layout_;
    }
    std::size_t dimension() const {
        return layout_.dimension();
    }

    /// One value per junction, in layout order.
    std::vector<cplx> junction_couplings(const ControlSettings &controls) const;
    /// Values entering the hopping terms: J_n for Z/X, (J_a, J_b) for CZ.
    std::vector<cplx> term_couplings(const ControlSettings &controls) const;

    /// Matrix restricted to `indices` (sorted, closed under the dynamics). Empty means full space.
    CMatrix assemble(const ControlSettings &controls, const std::vector<int> &indices = {}) const;
    CMatrix assemble_from(const std::vector<cplx> &terms, double h, const std::vector<int> &indices = {}) const;
    HermitianOperator hamiltonian(const ControlSettings &controls) const;

    /// Conserved pair numbers: total for Z/X, per triple (1,0,2) and (1',0',2') for CZ.
    std::vector<int> charges(std::size_t index) const;
    /// All states sharing charges with some state where a column of `vectors` is nonzero.
    std::vector<std::vector<int>> sectors_touching(const CMatrix &vectors, double tol = 1e-12) const;

   private:
    struct Hop {
        int to;
        int from;
        int term;
    };
    BlockLayout layout_;
    std::vector<double> bias_diag_;
    std::vector<Hop> hops_;
};

HermitianOperator z_block_hamiltonian(const BlockLayout &layout, const ControlSettings &controls);
HermitianOperator x_block_hamiltonian(const BlockLayout &layout, const ControlSettings &controls);
HermitianOperator cz_block_hamiltonian(const BlockLayout &layout, const ControlSettings &controls);
HermitianOperator block_hamiltonian(const BlockLayout &layout, const ControlSettings &controls);

/// Energy of the computational band: -h/2 (Z, X) or -h (CZ).
double computational_energy(BlockKind kind, double h);

}  // namespace holosim

#endif
