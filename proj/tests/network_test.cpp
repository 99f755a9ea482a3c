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

#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

using namespace holosim;

namespace {

// Single-box operators in the (|0>, |1>) basis, |1> = one excess pair.
CMatrix op_id() {
    return CMatrix::Identity(2, 2);
}
CMatrix op_z() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = -1;
    return m;
}
CMatrix op_add() {  // |1><0|
    CMatrix m = CMatrix::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}
CMatrix op_remove() {  // |0><1|
    return op_add().transpose();
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Operator acting as `ops[box]` on the listed boxes, identity elsewhere; box 0 is the leftmost factor.
CMatrix embed(int n, const std::vector<std::pair<int, CMatrix>> &ops) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int b = 0; b < n; ++b) {
        CMatrix f = op_id();
        for (const auto &[box, m] : ops) {
            if (box == b) {
                f = m;
            }
        }
        out = kron(out, f);
    }
    return out;
}

// -1/2 sum_n (J_n a_n^+ a_0 + h.c.) - h/2 sz_0, boxes (0, 1, 2[, 3]).
CMatrix star_oracle(const std::vector<cplx> &js, double h) {
    const int n = static_cast<int>(js.size()) + 1;
    CMatrix m = -0.5 * h * embed(n, {{0, op_z()}});
    for (int k = 0; k < static_cast<int>(js.size()); ++k) {
        CMatrix t = js[static_cast<std::size_t>(k)] * embed(n, {{k + 1, op_add()}, {0, op_remove()}});
        m += -0.5 * (t + CMatrix(t.adjoint()));
    }
    return m;
}

// Boxes (1, 1', 0, 0', 2, 2').
CMatrix cz_oracle(cplx ja, cplx jb, double h) {
    CMatrix m = -0.5 * h * (embed(6, {{2, op_z()}}) - embed(6, {{3, op_z()}}));
    CMatrix ta = ja * embed(6, {{0, op_add()}, {2, op_remove()}, {1, op_remove()}, {3, op_add()}});
    CMatrix tb = jb * embed(6, {{4, op_add()}, {2, op_remove()}, {5, op_remove()}, {3, op_add()}});
    m += -0.5 * (ta + CMatrix(ta.adjoint()));
    m += -0.5 * (tb + CMatrix(tb.adjoint()));
    return m;
}

ControlSettings controls(std::map<std::string, double> phis, double h) {
    ControlSettings c;
    c.phis = std::move(phis);
    c.h = h;
    return c;
}

}  // namespace

TEST(network, basis_labels_are_msb_first) {
    auto z = BlockLayout::z_block({}, {});
    EXPECT_EQ(basis_label(z, 0), "000");
    EXPECT_EQ(basis_label(z, 2), "010");
    EXPECT_EQ(basis_label(z, 4), "100");
    EXPECT_EQ(basis_index(z, "001"), 1u);
    EXPECT_EQ(occupation(z, 4, 0), 1);
    EXPECT_EQ(occupation(z, 4, 2), 0);
    EXPECT_EQ(basis_vector(z, "010")(2), cplx(1, 0));
    EXPECT_THROW(basis_index(z, "01"), ValidationError);
}

TEST(network, prototype_examples) {
    auto zero = prototype_hamiltonian(0, {0, 0});
    EXPECT_EQ(zero.matrix().norm(), 0);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(prototype_hamiltonian(0, {1, 1}).matrix());
    EXPECT_NEAR(es.eigenvalues()(0), -std::sqrt(0.5), 1e-14);
    EXPECT_NEAR(es.eigenvalues()(1), 0, 1e-14);
    EXPECT_NEAR(es.eigenvalues()(2), std::sqrt(0.5), 1e-14);
    Eigen::SelfAdjointEigenSolver<CMatrix> es2(prototype_hamiltonian(2, {2, 0, 0}).matrix());
    EXPECT_NEAR(es2.eigenvalues()(0), 0.5 * (2 - std::sqrt(8.0)), 1e-14);
    EXPECT_NEAR(es2.eigenvalues()(3), 0.5 * (2 + std::sqrt(8.0)), 1e-14);
}

TEST(network, z_block_matches_kronecker_oracle) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> p(-kHalfPi, kHalfPi), g(0.2, 1.8), hh(-2, 2);
    for (int i = 0; i < 50; ++i) {
        JunctionParams j1{1.0, 1.0, 0}, j2{0.7, g(rng), 0};
        auto layout = BlockLayout::z_block(j1, j2);
        auto c = controls({{"J1", p(rng)}, {"J2", p(rng)}}, hh(rng));
        j1.phi = c.phis["J1"];
        j2.phi = c.phis["J2"];
        CMatrix want = star_oracle({effective_coupling(j1), effective_coupling(j2)}, c.h);
        EXPECT_LT((z_block_hamiltonian(layout, c).matrix() - want).norm(), 1e-14);
    }
}

TEST(network, x_block_matches_kronecker_oracle) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> p(-kHalfPi, kHalfPi), g(0.2, 1.8), hh(-2, 2);
    for (int i = 0; i < 50; ++i) {
        JunctionParams j1{1.0, 1.0, 0}, j2{1.3, 1.0, 0}, j3{0.8, g(rng), 0};
        auto layout = BlockLayout::x_block(j1, j2, j3);
        auto c = controls({{"J1", p(rng)}, {"J2", p(rng)}, {"J3", p(rng)}}, hh(rng));
        j1.phi = c.phis["J1"];
        j2.phi = c.phis["J2"];
        j3.phi = c.phis["J3"];
        CMatrix want = star_oracle({effective_coupling(j1), effective_coupling(j2), effective_coupling(j3)}, c.h);
        EXPECT_LT((x_block_hamiltonian(layout, c).matrix() - want).norm(), 1e-14);
    }
}

TEST(network, cz_block_matches_kronecker_oracle) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> p(-kHalfPi, kHalfPi), g(0.2, 1.8), hh(-2, 2);
    for (int i = 0; i < 30; ++i) {
        JunctionParams j1{1.0, 1.0, 0}, j2{1.0, g(rng), 0}, j1p{1.1, 1.0, 0}, j2p{0.9, g(rng), 0};
        const double e_c = 6.0;
        auto layout = BlockLayout::cz_block(j1, j2, j1p, j2p, e_c);
        auto c = controls({{"J1", p(rng)}, {"J2", p(rng)}, {"J1'", p(rng)}, {"J2'", p(rng)}}, hh(rng));
        j1.phi = c.phis["J1"];
        j2.phi = c.phis["J2"];
        j1p.phi = c.phis["J1'"];
        j2p.phi = c.phis["J2'"];
        cplx ja = 4.0 * effective_coupling(j1) * std::conj(effective_coupling(j1p)) / e_c;
        cplx jb = 4.0 * effective_coupling(j2) * std::conj(effective_coupling(j2p)) / e_c;
        EXPECT_LT((cz_block_hamiltonian(layout, c).matrix() - cz_oracle(ja, jb, c.h)).norm(), 1e-14);
    }
}

TEST(network, joint_tunneling_examples) {
    EXPECT_EQ(joint_tunneling_amplitudes(0, 1, 1, 1, 4).first, cplx(0, 0));
    EXPECT_EQ(joint_tunneling_amplitudes(1, 1, 1, 1, 4).first, cplx(1, 0));
    auto [ja, jb] = joint_tunneling_amplitudes(1, cplx(0, 1), 2, 1, 8);
    EXPECT_NEAR(std::abs(ja - cplx(0, -0.5)), 0, 1e-15);
    EXPECT_NEAR(std::abs(jb - cplx(1, 0)), 0, 1e-15);
    EXPECT_THROW(joint_tunneling_amplitudes(1, 1, 1, 1, 0), DomainError);
}

TEST(network, no_tunneling_states_sit_at_computational_energy) {
    auto layout = BlockLayout::z_block({}, {});
    for (double h : {-1.0, 0.0, 0.7}) {
        auto m = z_block_hamiltonian(layout, controls({{"J1", kHalfPi}, {"J2", kHalfPi}}, h)).matrix();
        for (const char *s : {"000", "010", "001"}) {
            CVector v = basis_vector(layout, s);
            EXPECT_LT((m * v - computational_energy(BlockKind::Z, h) * v).norm(), 1e-15) << s;
        }
    }
}

TEST(network, conserved_pair_number_sectors) {
    BlockModel m(BlockLayout::x_block({}, {}, {}));
    CMatrix v = CMatrix::Zero(16, 2);
    v(2, 0) = 1;
    v(4, 1) = 1;
    auto sectors = m.sectors_touching(v);
    ASSERT_EQ(sectors.size(), 1u);
    EXPECT_EQ(sectors[0].size(), 4u);  // one pair over four boxes
    auto c = controls({{"J1", 0.3}, {"J2", -0.2}, {"J3", 0.1}}, 0.4);
    CMatrix full = m.assemble(c);
    CMatrix sub = m.assemble(c, sectors[0]);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            EXPECT_EQ(sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)),
                      full(sectors[0][a], sectors[0][b]));
        }
    }
    EXPECT_THROW(m.assemble(c, {2, 4}), ValidationError);
}

TEST(network, cz_charges_are_per_triple) {
    BlockModel m(BlockLayout::cz_block({}, {}, {}, {}, 4));
    // |10>|0101>: boxes 1=1, 1'=0, 0=0, 0'=1, 2=0, 2'=1
    auto q = m.charges(basis_index(m.layout(), "100101"));
    ASSERT_EQ(q.size(), 2u);
    EXPECT_EQ(q[0], 1);
    EXPECT_EQ(q[1], 2);
}

TEST(network, validation_errors) {
    EXPECT_THROW(BlockLayout::z_block({1, 0.5, 0}, {}).validate(), ValidationError);
    EXPECT_THROW(BlockLayout::cz_block({}, {}, {}, {}, 0).validate(), ValidationError);
    auto layout = BlockLayout::z_block({}, {});
    EXPECT_THROW(validate(layout, controls({{"J1", 0}}, 0)), ValidationError);
    EXPECT_THROW(validate(layout, controls({{"J1", 0}, {"J2", 2.0}}, 0)), DomainError);
    EXPECT_THROW(validate(layout, controls({{"J1", 0}, {"J2", 0}, {"J9", 0}}, 0)), ValidationError);
    CMatrix bad = CMatrix::Zero(2, 2);
    bad(0, 1) = 1;
    EXPECT_THROW(HermitianOperator{bad}, ValidationError);
}

TEST(network, gate_charge_bias) {
    auto c = ControlSettings::from_gate_charge({{"J1", 0}, {"J2", 0}}, 0.5, 4);
    EXPECT_EQ(c.h, 0);
    auto d = ControlSettings::from_gate_charge({{"J1", 0}, {"J2", 0}}, 0.75, 4);
    EXPECT_DOUBLE_EQ(d.h, 2);
}
