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


#include "holosim/holonomy.hpp"

#include <random>

#include <gtest/gtest.h>

#include "holosim/gates.hpp"

using namespace holosim;

namespace {

// |e^{-i phi} + gamma e^{i phi}|^2 / 4
double amp2(double gamma, double phi) {
    return (1 + gamma * gamma + 2 * gamma * std::cos(2 * phi)) / 4;
}

// Composite Simpson on the Z-rectangle phase integrand, Richardson-extrapolated.
double berry_oracle(double gamma, double phi1, double phi2) {
    const double c1 = std::cos(phi1);
    auto f = [&](double p) {
        const double a = amp2(gamma, p);
        return (1 - gamma * gamma) / 4 * (1 / (c1 * c1 + a) - 1 / a);
    };
    auto simpson = [&](int n) {
        const double h = phi2 / n;
        double s = f(0) + f(phi2);
        for (int i = 1; i < n; ++i) {
            s += (i % 2 ? 4 : 2) * f(i * h);
        }
        return s * h / 3;
    };
    const double s1 = simpson(4000), s2 = simpson(8000);
    return s2 + (s2 - s1) / 15;
}

// Antiderivative of c A / ((x^2 + c^2) sqrt(x^2 + c^2 + A^2)) is atan(A x / (c sqrt(x^2 + c^2 + A^2))).
double rotation_oracle(double phi_star, double gamma3, double phi3) {
    const double a = std::sqrt(amp2(gamma3, phi3));
    const double c = std::cos(phi_star);
    return 2 * (std::atan(a / (c * std::sqrt(1 + c * c + a * a))) - std::atan(a / std::sqrt(2 * c * c + a * a)));
}

// Solid angle of the polygon (0,0), (1,c), (c,c), (c,1) seen from height A above the plane.
double solid_angle_oracle(double c, double a, int n = 1500) {
    // lower edge y = c x; upper edge y = x / c on [0, c] and y = c on [c, 1]
    auto inner = [&](double x, bool left) {
        const double lo = c * x;
        const double hi = left ? x / c : c;
        // closed form of int dy A / (x^2 + y^2 + A^2)^{3/2}
        const double r2 = x * x + a * a;
        auto g = [&](double y) { return a * y / (r2 * std::sqrt(r2 + y * y)); };
        return g(hi) - g(lo);
    };
    auto simpson = [&](double x0, double x1) {
        const bool left = x1 <= c;
        const double h = (x1 - x0) / n;
        double s = inner(x0, left) + inner(x1, left);
        for (int i = 1; i < n; ++i) {
            s += (i % 2 ? 4 : 2) * inner(x0 + i * h, left);
        }
        return s * h / 3;
    };
    return simpson(0, c) + simpson(c, 1);
}

BlockLayout z_layout(double gamma2) {
    return BlockLayout::z_block({1, 1, 0}, {1, gamma2, 0});
}

ControlSettings z_base(double h = 0) {
    ControlSettings b;
    b.phis = {{"J1", kHalfPi}, {"J2", 0}};
    b.h = h;
    return b;
}

}  // namespace

TEST(holonomy, berry_phase_examples) {
    EXPECT_EQ(berry_phase_z(1, kPi / 3, kPi / 3), 0);
    EXPECT_NEAR(berry_phase_z(0.6, kHalfPi, kPi / 3), 0, 1e-12);
    EXPECT_NEAR(berry_phase_z(0.6, kPi / 3, 0), 0, 1e-15);
    EXPECT_LT(berry_phase_z(0.6, kPi / 3, kPi / 3), 0);
}

TEST(holonomy, berry_phase_matches_quadrature_oracle) {
    for (double g : {0.2, 0.4, 0.6, 0.8, 1.3}) {
        for (double p1 : {0.3, kPi / 3, 1.2}) {
            for (double p2 : {0.4, kPi / 3, 1.5}) {
                EXPECT_NEAR(berry_phase_z(g, p1, p2), berry_oracle(g, p1, p2), 1e-9) << g << " " << p1 << " " << p2;
            }
        }
    }
}

TEST(holonomy, rotation_angle_matches_closed_form) {
    for (double g : {0.3, 0.5, 0.8}) {
        for (double p3 : {0.0, kPi / 4, 1.2}) {
            for (double ps : {0.2, kPi / 3, 1.4}) {
                SCOPED_TRACE(std::to_string(g) + " " + std::to_string(p3) + " " + std::to_string(ps));
                auto r = rotation_angle_x(ps, {1, g, p3});
                EXPECT_NEAR(r.phi, rotation_oracle(ps, g, p3), 1e-9);
                EXPECT_NEAR(r.phi_prime, phase_shift(g, p3) / 2 - kPi / 4, 1e-15);
            }
        }
    }
}

TEST(holonomy, rotation_angle_examples) {
    EXPECT_NEAR(rotation_angle_x(kHalfPi, {1, 0.5, kPi / 4}).phi, 0, 1e-10);
    EXPECT_NEAR(rotation_angle_x(1e-9, {1, 0.5, kPi / 4}).phi, 0, 1e-6);
    EXPECT_THROW(rotation_angle_x(kPi / 3, {1, 1, 0}), DomainError);
}

TEST(holonomy, z_wilson_loop_matches_berry_phase) {
    for (double g : {0.4, 0.6, 0.8, 1.0}) {
        auto loop = standard_loop(LoopKind::ZRect, {kPi / 3, kPi / 3}, 10000, z_base());
        auto hol = loop_holonomy(z_layout(g), loop, 0.0);
        auto lg = extract_logical(hol, Encoding::z_single_box());
        auto want = ideal_gate(GateLabel::UZ, berry_oracle(g, kPi / 3, kPi / 3));
        EXPECT_LT(phase_stripped_distance(lg.matrix, want.matrix), 1e-5) << g;
        EXPECT_LT(hol.unitarity_defect, 1e-6);
        EXPECT_EQ(hol.subspace_dim, 2u);
        EXPECT_GT(hol.min_gap, 0);
    }
}

TEST(holonomy, x_holonomy_is_the_swept_solid_angle) {
    const double g3 = 0.5, p3 = kPi / 4;
    auto layout = BlockLayout::x_block({1, 1, 0}, {1, 1, 0}, {1, g3, p3});
    ControlSettings base;
    base.phis = {{"J1", kHalfPi}, {"J2", kHalfPi}, {"J3", p3}};
    auto loop = standard_loop(LoopKind::XPath, {kPi / 3, kPi / 3}, 10000, base);
    auto hol = loop_holonomy(layout, loop, 0.0);
    auto lg = extract_logical(hol, Encoding::two_box());
    const double omega = solid_angle_oracle(std::cos(kPi / 3), std::sqrt(amp2(g3, p3)));
    // real rotation of the dark plane by the enclosed solid angle
    EXPECT_NEAR(std::abs(lg.matrix(0, 0)), std::cos(omega), 1e-7);
    EXPECT_NEAR(std::abs(lg.matrix(0, 1)), std::sin(omega), 1e-7);
    EXPECT_LT(std::abs(lg.matrix(0, 0) * lg.matrix(1, 1) - lg.matrix(0, 1) * lg.matrix(1, 0) - 1.0), 1e-5);
}

TEST(holonomy, degenerate_loops_give_identity) {
    auto flat = standard_loop(LoopKind::ZRect, {kHalfPi, kPi / 3}, 2000, z_base());
    auto hol = loop_holonomy(z_layout(0.6), flat, 0.0);
    EXPECT_LT(phase_stripped_distance(hol.unitary, CMatrix::Identity(2, 2)), 1e-8);

    auto symmetric = standard_loop(LoopKind::ZRect, {kPi / 3, kPi / 3}, 2000, z_base());
    auto s = loop_holonomy(z_layout(1.0), symmetric, 0.0);
    EXPECT_LT(phase_stripped_distance(s.unitary, CMatrix::Identity(2, 2)), 1e-8);
}

TEST(holonomy, constant_bands_give_identity) {
    auto a = analytic_z_subspace(cplx(0.3, 0.2), cplx(1.0, -0.4));
    std::vector<CMatrix> bands(20, a.vectors);
    CMatrix w = wilson_loop(bands, a.vectors);
    EXPECT_LT((w - CMatrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(holonomy, gauge_scramble_does_not_change_the_result) {
    auto loop = standard_loop(LoopKind::ZRect, {kPi / 3, kPi / 3}, 4000, z_base(0.5));
    auto plain = loop_holonomy(z_layout(0.6), loop, -0.25);
    HolonomyOptions o;
    for (std::uint64_t seed : {1u, 7u, 99u}) {
        o.scramble_seed = seed;
        auto s = loop_holonomy(z_layout(0.6), loop, -0.25, o);
        EXPECT_LT((s.unitary - plain.unitary).norm(), 1e-10) << seed;
    }
}

TEST(holonomy, reversed_loop_gives_inverse) {
    auto loop = standard_loop(LoopKind::ZRect, {kPi / 3, 1.0}, 4000, z_base());
    auto fwd = loop_holonomy(z_layout(0.5), loop, 0.0);
    auto back = loop_holonomy(z_layout(0.5), loop.reversed(), 0.0);
    EXPECT_LT((fwd.unitary * back.unitary - CMatrix::Identity(2, 2)).norm(), 1e-6);
}

TEST(holonomy, connection_is_anti_hermitian) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> p(-1.4, 1.4), g(0.3, 0.9);
    for (int i = 0; i < 20; ++i) {
        auto layout = z_layout(g(rng));
        ControlSettings c;
        c.phis = {{"J1", p(rng)}, {"J2", p(rng)}};
        c.h = 0.3;
        ControlTangent d;
        d.dphi = {{"J1", p(rng)}, {"J2", p(rng)}};
        auto r = wilczek_zee_connection(layout, c, d, -0.15, 1e-5);
        EXPECT_LT((r.a + r.a.adjoint()).norm(), 1e-6);
    }
}

TEST(holonomy, connection_vanishes_along_a_null_direction) {
    ControlSettings c;
    c.phis = {{"J1", 0.4}, {"J2", 0.9}};
    auto r = wilczek_zee_connection(z_layout(0.6), c, ControlTangent{}, 0.0, 1e-5);
    EXPECT_LT(r.a.norm(), 1e-12);
}

TEST(holonomy, loop_shapes) {
    auto z = standard_loop(LoopKind::ZRect, {kPi / 3, kPi / 3}, 400, z_base());
    EXPECT_TRUE(z.closed());
    EXPECT_EQ(z.total_samples(), 400u);
    auto pts = z.sample_points();
    EXPECT_EQ(pts.size(), 401u);
    EXPECT_DOUBLE_EQ(pts.front().phis.at("J1"), kHalfPi);
    EXPECT_DOUBLE_EQ(pts.front().phis.at("J2"), 0);

    ControlSettings cb;
    cb.phis = {{"J1", kHalfPi}, {"J2", 0}, {"J1'", 0}, {"J2'", 0}};
    auto cz = standard_loop(LoopKind::CZRect, {kPi / 3, kPi / 3}, 400, cb);
    for (const auto &q : cz.sample_points()) {
        EXPECT_EQ(q.phis.at("J1'"), 0);
        EXPECT_EQ(q.phis.at("J2'"), 0);
    }
    EXPECT_TRUE(cz.reversed().closed());
}
