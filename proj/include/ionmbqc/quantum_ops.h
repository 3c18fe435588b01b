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

#ifndef IONMBQC_QUANTUM_OPS_H
#define IONMBQC_QUANTUM_OPS_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ionmbqc/linalg.h"
#include "ionmbqc/pauli.h"
#include "ionmbqc/state.h"

namespace ionmbqc {

/// Single-qubit projective measurement basis. Outcome 0 is the +1 eigenvector:
/// |+alpha> for B(alpha), |0> for Z, |+> for X, |+i> for Y.
class MeasurementBasis {
   public:
    enum class Kind { Equatorial, X, Y, Z };

    static MeasurementBasis equatorial(double alpha);
    static MeasurementBasis x();
    static MeasurementBasis y();
    static MeasurementBasis z();
    static MeasurementBasis pauli(Pauli p);

    Kind kind() const {
        return kind_;
    }
    double alpha() const {
        return alpha_;
    }

    /// Basis vector for outcome s (0 or 1).
    Eigen::Vector2cd vector(int s) const;

    /// Unitary whose rows are the conjugated basis vectors; applying it and
    /// measuring in Z is equivalent to measuring in this basis.
    Mat2 to_z_basis() const;

    std::string str() const;

   private:
    MeasurementBasis(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {
    }
    Kind kind_;
    double alpha_;
};

using Residual = std::variant<StateVector, DensityMatrix>;

/// One outcome branch of a (possibly multi-step) measurement.
struct BranchRecord {
    /// Outcome bits in measurement order; 0 is the +1 outcome.
    std::vector<uint8_t> outcomes;
    double probability = 0;
    /// State of the unmeasured qubits. Empty when probability is 0.
    std::optional<Residual> residual;
    /// Pauli that the branch applied to the output relative to the ideal
    /// result; the correction is its adjoint.
    PauliString byproduct;
};

struct BranchMode {};
struct SampleMode {
    uint64_t seed;
};
using MeasureMode = std::variant<BranchMode, SampleMode>;

StateVector apply_unitary(const StateVector &state, const CMatrix &u, const std::vector<size_t> &targets);
DensityMatrix apply_unitary(const DensityMatrix &rho, const CMatrix &u, const std::vector<size_t> &targets);

/// Single-qubit shortcuts; the unitarity check is still performed.
StateVector apply_gate(const StateVector &state, const Mat2 &u, size_t qubit);
DensityMatrix apply_gate(const DensityMatrix &rho, const Mat2 &u, size_t qubit);

/// Measures `qubit` and removes it from the register. Branch mode returns
/// both outcomes (in order 0, 1); sample mode returns one drawn outcome.
/// Measuring the only qubit of a register leaves no residual.
std::vector<BranchRecord> measure(
    const StateVector &state, size_t qubit, const MeasurementBasis &basis, const MeasureMode &mode);
std::vector<BranchRecord> measure(
    const DensityMatrix &rho, size_t qubit, const MeasurementBasis &basis, const MeasureMode &mode);

/// Outcome probabilities (p0, p1) without building residuals.
std::array<double, 2> outcome_probabilities(const StateVector &state, size_t qubit, const MeasurementBasis &basis);

/// <psi|rho|psi>.
double fidelity(const DensityMatrix &rho, const StateVector &psi);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);

double purity(const DensityMatrix &rho);

/// Squared Wootters concurrence of a two-qubit state.
double tangle(const DensityMatrix &rho);
double concurrence(const DensityMatrix &rho);

/// Reduced state on `keep`; the result's qubit k is keep[k].
DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<size_t> &keep);
DensityMatrix partial_trace(const StateVector &state, const std::vector<size_t> &keep);

/// Single-qubit noise channel.
///   dephase(p):    rho -> (1 - p/2) rho + (p/2) Z rho Z  (coherences scale by 1-p)
///   depolarize(p): rho -> (1 - p) rho + p Tr_q(rho) (x) I/2
struct Channel {
    enum class Kind { Dephase, Depolarize };
    Kind kind;
    double p;
    size_t qubit;

    static Channel dephase(double p, size_t qubit) {
        return {Kind::Dephase, p, qubit};
    }
    static Channel depolarize(double p, size_t qubit) {
        return {Kind::Depolarize, p, qubit};
    }

    /// Kraus operators of the channel.
    std::vector<Mat2> kraus() const;
};

DensityMatrix apply_channel(const DensityMatrix &rho, const Channel &channel);

/// Bloch vector (x, y, z) of a single-qubit state.
Eigen::Vector3d bloch_vector(const DensityMatrix &rho);

}  // namespace ionmbqc

#endif
