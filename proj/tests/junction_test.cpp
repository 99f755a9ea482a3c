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

#include "holosim/junction.hpp"

#include <random>

#include <gtest/gtest.h>

using namespace holosim;

namespace {

// Two parallel junctions E_J e^{-i phi} + gamma E_J e^{+i phi}, summed directly.
cplx squid_oracle(double e_j, double gamma, double phi) {
    return e_j * (std::polar(1.0, -phi) + gamma * std::polar(1.0, phi));
}

}  // namespace

TEST(junction, amplitude_examples) {
    EXPECT_NEAR(amplitude(1, kHalfPi), 0, 1e-15);
    EXPECT_DOUBLE_EQ(amplitude(1, 0), 1);
    EXPECT_DOUBLE_EQ(amplitude(0.5, 0), 0.75);
}

TEST(junction, phase_shift_examples) {
    EXPECT_EQ(phase_shift(1, 0.7), 0);
    EXPECT_NEAR(phase_shift(0.5, kPi / 4), 0.32175055439664219, 1e-14);
    EXPECT_NEAR(phase_shift(2, kPi / 4), -0.32175055439664219, 1e-14);
}

TEST(junction, coupling_examples) {
    EXPECT_NEAR(std::abs(effective_coupling({1, 1, 0}) - cplx(2, 0)), 0, 1e-15);
    EXPECT_EQ(std::abs(effective_coupling({1, 1, kHalfPi})), 0);
    cplx want = 2 * std::sqrt(0.0625 + 0.25) * std::polar(1.0, -0.32175055439664219);
    EXPECT_NEAR(std::abs(effective_coupling({1, 0.5, kPi / 4}) - want), 0, 1e-14);
}

TEST(junction, coupling_matches_squid_sum) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> g(0.05, 3), p(-kHalfPi, kHalfPi), e(0.1, 4);
    for (int i = 0; i < 500; ++i) {
        JunctionParams jp{e(rng), g(rng), p(rng)};
        cplx got = effective_coupling(jp);
        cplx want = squid_oracle(jp.e_j, jp.gamma, jp.phi);
        EXPECT_LT(std::abs(got - want), 1e-13 * (1 + std::abs(want)));
        EXPECT_NEAR(amplitude(jp.gamma, jp.phi), std::abs(want) / (2 * jp.e_j), 1e-13);
    }
}

TEST(junction, symmetric_squid_switches_off_exactly) {
    for (double e : {0.3, 1.0, 7.0}) {
        EXPECT_EQ(effective_coupling({e, 1, kHalfPi}), cplx(0, 0));
        EXPECT_EQ(effective_coupling({e, 1, -kHalfPi}), cplx(0, 0));
    }
}

TEST(junction, asymmetric_squid_never_switches_off) {
    for (double g : {0.3, 0.6, 1.5}) {
        EXPECT_NEAR(amplitude(g, kHalfPi), std::abs(1 - g) / 2, 1e-15);
    }
}

TEST(junction, phase_shift_is_odd_and_continuous) {
    for (double g : {0.2, 0.6, 2.5}) {
        double prev = phase_shift(g, -kHalfPi);
        for (int i = 1; i <= 1000; ++i) {
            double phi = -kHalfPi + kPi * i / 1000;
            double a = phase_shift(g, phi);
            EXPECT_NEAR(a, -phase_shift(g, -phi), 1e-14);
            EXPECT_LT(std::abs(a - prev), 0.1);
            prev = a;
        }
    }
}

TEST(junction, validation_errors) {
    EXPECT_THROW(validate(JunctionParams{0, 1, 0}), DomainError);
    EXPECT_THROW(validate(JunctionParams{1, 0, 0}), DomainError);
    EXPECT_THROW(validate(JunctionParams{1, -1, 0}), DomainError);
    EXPECT_THROW(validate(JunctionParams{1, 1, 1.6}), DomainError);
    EXPECT_NO_THROW(validate(JunctionParams{1, 0.5, -kHalfPi}));
}
