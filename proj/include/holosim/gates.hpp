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

#ifndef HOLOSIM_GATES_HPP
#define HOLOSIM_GATES_HPP

#include <string>
#include <vector>

#include "holosim/holonomy.hpp"
#include "holosim/network.hpp"
#include "holosim/types.hpp"

namespace holosim {

enum class GateLabel { UZ, UX, UCZ, Composed };

const char *gate_label_name(GateLabel label);

struct LogicalGate {
    CMatrix matrix;
    GateLabel label = GateLabel::Composed;
    std::vector<double> angles;
    cplx det = 1.0;
};

/// U_Z = exp(i phi |1><1|), U_X = exp(i phi sigma_x), U_CZ = exp(i phi |10><10|) on (00, 01, 10, 11).
LogicalGate ideal_gate(GateLabel label, double angle);

/// Logical basis states expressed on a block's charge basis, in order |0>, |1> (or 00, 01, 10, 11).
struct Encoding {
    std::string name;
    BlockKind kind = BlockKind::Z;
    CMatrix states;

    /// Z block, box 1 carries the qubit: |0> = |000>, |1> = |010> (box order 0,1,2).
    static Encoding z_single_box();
    /// X block hardware: |0> = |01>_12, |1> = |10>_12 with boxes 0, 3 empty.
    static Encoding two_box();
    /// CZ block: |x y>_{1 1'} with ancillas |0101>_{0 0' 2 2'}.
    static Encoding cz_single_box();
};

/// Holonomy re-expressed on the encoding, rephased so entry (0,0) is real and non-negative.
LogicalGate extract_logical(const HolonomyResult &holonomy, const Encoding &encoding);
/// Same for any unitary given in the basis `anchor`.
LogicalGate extract_logical(const CMatrix &unitary, const CMatrix &anchor, const Encoding &encoding);

/// First listed acts first: returns g_n ... g_2 g_1.
LogicalGate compose(const std::vector<LogicalGate> &gates);

struct EulerAngles {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double global_phase = 0.0;
};

/// target = e^{i theta} U_Z(a) U_X(b) U_Z(c), b in [0, pi/2]; diagonal targets give b = c = 0.
EulerAngles euler_decompose(const CMatrix &target);
CMatrix euler_reconstruct(const EulerAngles &e);

/// |U e^{i chi} - V|_F at the minimizing chi = arg tr(U^H V).
double phase_stripped_distance(const CMatrix &u, const CMatrix &v);

/// e^{i chi} making m(0,0) real and non-negative (determinant phase if |m(0,0)| < 1e-8).
CMatrix canonical_phase(const CMatrix &m);

}  // namespace holosim

#endif
