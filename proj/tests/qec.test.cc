// Copyright 2026 The ionmbqc Authors
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

#include <gtest/gtest.h>

#include <bit>

#include "ionmbqc/qec.h"
#include "ionmbqc/quantum_ops.h"
#include "oracle.h"

using namespace ionmbqc;

namespace {

double binomial(size_t n, size_t k) {
    double r = 1;
    for (size_t i = 0; i < k; i++) {
        r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return r;
}

// Majority-vote success probability computed by brute force over flip sets.
double brute_force_atf(size_t n, double p, size_t m) {
    double total = 0;
    for (uint64_t flips = 0; flips < (uint64_t{1} << m); flips++) {
        size_t k = static_cast<size_t>(std::popcount(flips));
        if (2 * k < n) {
            total += std::pow(p, static_cast<double>(k)) * std::pow(1 - p, static_cast<double>(m - k));
        }
    }
    return total;
}

}  // namespace

TEST(Qec, CodeStateMatchesTheGraphState) {
    for (size_t n : {1, 3, 5}) {
        EcLayout layout(n);
        GraphSpec g = layout.graph();
        oracle::V want = oracle::graph_state(g.num_vertices(), g.edges());
        EXPECT_GE(oracle::fidelity(build_ec_state(n).amplitudes(), want), 1 - 1e-12) << n;
    }
    EXPECT_THROW(EcLayout(2), std::invalid_argument);
    EXPECT_THROW(build_ec_state(4), std::invalid_argument);
}

TEST(Qec, ErrorDiscretization) {
    ErrorSpec e = ErrorSpec::from_probability({1, 2}, 0.3);
    EXPECT_NEAR(e.flip_probability(), 0.3, 1e-14);
    EXPECT_NEAR(ErrorSpec::all(3, kPi).flip_probability(), 1, 1e-15);
    EXPECT_EQ(ErrorSpec::all(3, kPi).targets, (std::vector<size_t>{1, 2, 3}));
}

TEST(Qec, MajorityRule) {
    EXPECT_FALSE(recovery_is_z({0}));
    EXPECT_TRUE(recovery_is_z({1}));
    EXPECT_FALSE(recovery_is_z({1, 0, 0}));
    EXPECT_TRUE(recovery_is_z({1, 1, 0}));
    EXPECT_TRUE(recovery_is_z({1, 1, 0, 1, 0}));
    EXPECT_THROW(recovery_is_z({1, 0}), std::invalid_argument);
}

TEST(Qec, IdealTeleportationIsPerfect) {
    for (size_t n : {1, 3, 5}) {
        EcLayout layout(n);
        DensityMatrix resource(build_ec_state(n));
        for (InputState s : inputs_of(InputSet::Six)) {
            EXPECT_NEAR(teleport_fidelity(resource, layout, s, {}), 1, 1e-10) << n << " " << input_label(s);
        }
    }
}

TEST(Qec, CorrectableRegion) {
    for (size_t n : {1, 3, 5}) {
        EcLayout layout(n);
        DensityMatrix resource(build_ec_state(n));
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
            if (2 * static_cast<size_t>(std::popcount(mask)) >= n) {
                continue;
            }
            ErrorSpec e;
            e.theta = kPi;
            for (size_t i = 0; i < n; i++) {
                if ((mask >> i) & 1) {
                    e.targets.push_back(i + 1);
                }
            }
            for (InputState s : inputs_of(InputSet::Six)) {
                EXPECT_NEAR(teleport_fidelity(resource, layout, s, e), 1, 1e-10) << n << " mask " << mask;
            }
        }
    }
}

TEST(Qec, UncorrectableFlipsTheLogicalState) {
    EcLayout layout(3);
    DensityMatrix resource(build_ec_state(3));
    ErrorSpec e{{1, 2}, kPi};
    EXPECT_NEAR(teleport_fidelity(resource, layout, InputState::Plus, e), 0, 1e-10);
    EXPECT_NEAR(teleport_fidelity(resource, layout, InputState::PlusI, e), 0, 1e-10);
    EXPECT_NEAR(teleport_fidelity(resource, layout, InputState::Zero, e), 1, 1e-10);
    EXPECT_NEAR(teleport_fidelity(resource, layout, InputState::One, e), 1, 1e-10);
}

TEST(Qec, ComputationalInputsAreImmune) {
    for (size_t n : {1, 3}) {
        EcLayout layout(n);
        DensityMatrix resource(build_ec_state(n));
        for (double theta : {0.4, 1.3, kPi}) {
            ErrorSpec e = ErrorSpec::all(n, theta);
            EXPECT_NEAR(teleport_fidelity(resource, layout, InputState::Zero, e), 1, 1e-10);
            EXPECT_NEAR(teleport_fidelity(resource, layout, InputState::One, e), 1, 1e-10);
        }
    }
}

TEST(Qec, SimulatedCurvesMatchTheClosedForm) {
    std::vector<double> grid = linear_grid(0, 1, 21);
    ASSERT_EQ(grid.size(), 21u);
    for (size_t n : {1, 3, 5}) {
        AtfReport r = atf(n, grid, {}, InputSet::Four);
        ASSERT_EQ(r.points.size(), 21u);
        for (const AtfPoint &pt : r.points) {
            double closed = 0;
            for (size_t k = 0; 2 * k < n; k++) {
                closed += binomial(n, k) * std::pow(pt.p, static_cast<double>(k)) *
                          std::pow(1 - pt.p, static_cast<double>(n - k));
            }
            EXPECT_NEAR(pt.atf, closed, 1e-9) << n << " " << pt.p;
            EXPECT_NEAR(ideal_atf_curve(n, pt.p, InputSet::Four), closed, 1e-12);
            EXPECT_NEAR(closed, brute_force_atf(n, pt.p, n), 1e-12);
        }
        EXPECT_NEAR(r.points[10].p, 0.5, 1e-15);
        EXPECT_NEAR(r.points[10].atf, 0.5, 1e-9);
    }
    auto at = [](size_t n, double p) { return atf(n, {p}, {}, InputSet::Four).points[0].atf; };
    EXPECT_GT(at(5, 0.4), at(3, 0.4));
    EXPECT_GT(at(3, 0.4), at(1, 0.4));
    EXPECT_NEAR(at(1, 0.3), 0.7, 1e-12);
}

TEST(Qec, PartialTargetsFollowTheSmallerBinomial) {
    std::vector<double> grid = linear_grid(0, 1, 11);
    AtfReport r = atf(5, grid, {1, 3, 4}, InputSet::Four);
    for (const AtfPoint &pt : r.points) {
        EXPECT_NEAR(pt.atf, brute_force_atf(5, pt.p, 3), 1e-9);
        EXPECT_NEAR(ideal_atf_curve(5, pt.p, InputSet::Four, 3), pt.atf, 1e-9);
    }
}

TEST(Qec, SixStateAverage) {
    std::vector<double> grid = linear_grid(0, 1, 21);
    for (size_t n : {1, 3, 5}) {
        AtfReport four = atf(n, grid, {}, InputSet::Four);
        AtfReport six = atf(n, grid, {}, InputSet::Six);
        for (size_t i = 0; i < grid.size(); i++) {
            EXPECT_NEAR(six.points[i].atf, (4 * four.points[i].atf + 2) / 6, 1e-9);
            EXPECT_NEAR(ideal_atf_curve(n, grid[i], InputSet::Six), (4 * four.points[i].atf + 2) / 6, 1e-9);
        }
    }
}

TEST(Qec, ErrorTimingDoesNotMatter) {
    std::vector<double> grid = {0.1, 0.35, 0.8};
    for (size_t n : {1, 3}) {
        AtfReport before = atf(n, grid, {}, InputSet::Six, ErrorTiming::BeforeEncode);
        AtfReport after = atf(n, grid, {}, InputSet::Six, ErrorTiming::AfterEncode);
        for (size_t i = 0; i < grid.size(); i++) {
            EXPECT_NEAR(before.points[i].atf, after.points[i].atf, 1e-12);
        }
    }
}

TEST(Qec, SyndromeDistributionIsBinomial) {
    size_t n = 3;
    double p = 0.2;
    EcLayout layout(n);
    auto branches = encode_input(build_ec_state(n), InputState::Plus);
    ASSERT_EQ(branches.size(), 2u);
    ASSERT_TRUE(branches[0].residual.has_value());
    DensityMatrix post = inject_errors(*branches[0].residual, layout, ErrorSpec::from_probability({1, 2, 3}, p));
    std::vector<double> dist = syndrome_distribution(post);
    ASSERT_EQ(dist.size(), 8u);
    double total = 0;
    for (double d : dist) {
        total += d;
    }
    EXPECT_NEAR(total, 1, 1e-12);
    // |+> is an equal superposition of both logical words, so the flip set is
    // read against either all-plus or all-minus outcomes.
    for (size_t s = 0; s < 8; s++) {
        size_t k = static_cast<size_t>(std::popcount(s));
        double want = (std::pow(p, k) * std::pow(1 - p, 3 - k) + std::pow(p, 3 - k) * std::pow(1 - p, k)) / 2;
        EXPECT_NEAR(dist[s], want, 1e-12) << s;
    }
}

TEST(Qec, CodewordDephasingFavoursLargerCodes) {
    for (double strength : {0.05, 0.1, 0.2, 0.3, 0.5}) {
        double one = noise_robustness_study(1, Channel::Kind::Dephase, strength, NoiseScope::Codeword);
        double three = noise_robustness_study(3, Channel::Kind::Dephase, strength, NoiseScope::Codeword);
        EXPECT_GE(three, one) << strength;
        EXPECT_LT(one, 1);
    }
    EXPECT_NEAR(noise_robustness_study(3, Channel::Kind::Dephase, 0, NoiseScope::Codeword), 1, 1e-12);
}

TEST(Qec, Labels) {
    for (InputState s : inputs_of(InputSet::Six)) {
        EXPECT_EQ(parse_input_label(input_label(s)), s);
    }
    EXPECT_THROW(parse_input_label("2"), std::invalid_argument);
    EXPECT_EQ(inputs_of(InputSet::Four).size(), 4u);
    EXPECT_THROW(linear_grid(0, 1, 0), std::invalid_argument);
    EXPECT_EQ(linear_grid(0.2, 0.2, 1), std::vector<double>{0.2});
}
