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

#include "ionmbqc/state.h"
#include "oracle.h"

using namespace ionmbqc;

TEST(StateVector, DefaultIsAllZeros) {
    StateVector s(3);
    EXPECT_EQ(s.dim(), 8u);
    EXPECT_NEAR(std::abs(s[0] - Complex(1, 0)), 0, 1e-15);
}

TEST(StateVector, FromBitsPutsQubitZeroMostSignificant) {
    StateVector s = StateVector::from_bits("100");
    EXPECT_NEAR(std::abs(s[4]), 1, 1e-15);
    EXPECT_THROW(StateVector::from_bits("10a"), std::invalid_argument);
}

TEST(StateVector, NormalizesAndRejectsBadInput) {
    CVector v(2);
    v << 3, 4;
    StateVector s(1, v);
    EXPECT_NEAR(s.amplitudes().norm(), 1, 1e-15);
    EXPECT_THROW(StateVector(1, CVector::Zero(2)), std::invalid_argument);
    EXPECT_THROW(StateVector(2, v), std::invalid_argument);
}

TEST(StateVector, PlusAndTensorMatchKron) {
    StateVector a = StateVector::plus(1);
    StateVector b = StateVector::from_bits("1");
    StateVector t = a.tensor(b);
    oracle::V want = oracle::kron(a.amplitudes(), b.amplitudes());
    EXPECT_NEAR(oracle::fidelity(t.amplitudes(), want), 1, 1e-14);
    EXPECT_NEAR(StateVector::plus(3)[5].real(), 1 / std::sqrt(8.0), 1e-15);
}

TEST(StateVector, ProductOfSingleQubitStates) {
    Eigen::Vector2cd zero(1, 0), one(0, 1);
    StateVector s = StateVector::product({one, zero, one});
    EXPECT_NEAR(std::abs(s[5]), 1, 1e-15);
}

TEST(DensityMatrix, PureStateHasUnitTraceAndPurity) {
    DensityMatrix rho(StateVector::plus(2));
    EXPECT_NEAR(rho.trace(), 1, 1e-12);
    EXPECT_NEAR((rho.matrix() * rho.matrix()).trace().real(), 1, 1e-12);
    EXPECT_NO_THROW(rho.check_physical());
}

TEST(DensityMatrix, ConstructorValidates) {
    CMatrix bad = CMatrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix(1, bad), std::invalid_argument);
    CMatrix nonherm(2, 2);
    nonherm << 0.5, 0.3, 0.1, 0.5;
    EXPECT_THROW(DensityMatrix(1, nonherm), std::invalid_argument);
    CMatrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    DensityMatrix d(1, neg);
    EXPECT_THROW(d.check_physical(), std::domain_error);
}

TEST(DensityMatrix, MaximallyMixedAndTensor) {
    DensityMatrix m = DensityMatrix::maximally_mixed(2);
    EXPECT_NEAR(m.min_eigenvalue(), 0.25, 1e-14);
    DensityMatrix t = DensityMatrix(StateVector(1)).tensor(DensityMatrix::maximally_mixed(1));
    EXPECT_EQ(t.num_qubits(), 2u);
    EXPECT_NEAR(t(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(t(1, 1).real(), 0.5, 1e-15);
    EXPECT_NEAR(t(2, 2).real(), 0, 1e-15);
}
