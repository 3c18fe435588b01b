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

#ifndef IONMBQC_STATE_H
#define IONMBQC_STATE_H

#include <string_view>
#include <vector>

#include "ionmbqc/linalg.h"

namespace ionmbqc {

/// Pure n-qubit state. Qubit 0 is the most significant bit of the amplitude
/// index. Always normalized.
class StateVector {
   public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(size_t num_qubits = 1);

    /// Normalizes the given amplitudes. Throws on wrong length or zero norm.
    StateVector(size_t num_qubits, CVector amplitudes);

    /// Computational basis state from a bit string such as "1001".
    static StateVector from_bits(std::string_view bits);

    /// |+>^n.
    static StateVector plus(size_t num_qubits);

    /// Tensor product of single-qubit states (first entry is qubit 0).
    static StateVector product(const std::vector<Eigen::Vector2cd> &qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dim() const {
        return size_t{1} << num_qubits_;
    }
    const CVector &amplitudes() const {
        return amps_;
    }
    Complex operator[](size_t index) const {
        return amps_[static_cast<Eigen::Index>(index)];
    }

    /// this (x) other; `other` occupies the least significant qubits.
    StateVector tensor(const StateVector &other) const;

   private:
    size_t num_qubits_;
    CVector amps_;
};

/// Mixed n-qubit state. Hermitian with unit trace; positivity is checked on
/// demand by check_physical().
class DensityMatrix {
   public:
    explicit DensityMatrix(const StateVector &pure);

    /// Validates shape, hermiticity and trace (within 1e-8), then symmetrizes
    /// and renormalizes so the stored matrix meets the 1e-10 invariants.
    DensityMatrix(size_t num_qubits, CMatrix matrix);

    static DensityMatrix maximally_mixed(size_t num_qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dim() const {
        return size_t{1} << num_qubits_;
    }
    const CMatrix &matrix() const {
        return rho_;
    }
    Complex operator()(size_t r, size_t c) const {
        return rho_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    double trace() const;
    Eigen::VectorXd eigenvalues() const;
    double min_eigenvalue() const;

    /// Throws std::domain_error when an eigenvalue is below -tol.
    void check_physical(double tol = 1e-9) const;

    DensityMatrix tensor(const DensityMatrix &other) const;

   private:
    size_t num_qubits_;
    CMatrix rho_;
};

}  // namespace ionmbqc

#endif
