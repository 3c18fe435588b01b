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

#ifndef IONMBQC_LINALG_H
#define IONMBQC_LINALG_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace ionmbqc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Default tolerances. Functions taking a `tol` argument default to these.
inline constexpr double kAlgebraicTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Largest register the dense backend accepts.
inline constexpr size_t kMaxQubits = 12;

namespace gates {
Mat2 identity();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();
/// diag(1, e^{i phi}).
Mat2 phase(double phi);
/// exp(-i theta/2 Z).
Mat2 rz(double theta);
/// exp(-i theta/2 X).
Mat2 rx(double theta);
/// diag(1, 1, 1, -1).
CMatrix cz();
}  // namespace gates

CMatrix kron(const CMatrix &a, const CMatrix &b);
bool is_unitary(const CMatrix &u, double tol = kAlgebraicTol);
bool is_hermitian(const CMatrix &m, double tol = kAlgebraicTol);

/// Bit position (from the least significant end) of `qubit` in an n-qubit
/// basis index. Qubit 0 is the most significant bit.
inline size_t qubit_bit(size_t qubit, size_t num_qubits) {
    return num_qubits - 1 - qubit;
}

/// Throws std::out_of_range / std::invalid_argument for bad target lists.
void check_targets(const std::vector<size_t> &targets, size_t num_qubits);

namespace detail {

/// Applies a 2x2 matrix to one bit of a 2^total_bits buffer.
void apply_2x2_to_bit(Complex *data, size_t total_bits, size_t bit, const Mat2 &m);

/// Applies a 2^k x 2^k matrix to the listed bits of a 2^total_bits buffer.
/// bits[0] is the most significant bit of the matrix index.
void apply_matrix_to_bits(Complex *data, size_t total_bits, const std::vector<size_t> &bits, const CMatrix &u);

}  // namespace detail

}  // namespace ionmbqc

#endif
