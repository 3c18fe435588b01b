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

#include "ionmbqc/linalg.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ionmbqc/simd_kernels.h"

namespace ionmbqc {

namespace gates {

Mat2 identity() {
    return Mat2::Identity();
}

Mat2 pauli_x() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m << 0, -kI, kI, 0;
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}

Mat2 hadamard() {
    Mat2 m;
    double r = 1 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
}

Mat2 phase(double phi) {
    Mat2 m;
    m << 1, 0, 0, std::exp(kI * phi);
    return m;
}

Mat2 rz(double theta) {
    Mat2 m;
    m << std::exp(-kI * (theta / 2)), 0, 0, std::exp(kI * (theta / 2));
    return m;
}

Mat2 rx(double theta) {
    Mat2 m;
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    m << c, -kI * s, -kI * s, c;
    return m;
}

CMatrix cz() {
    CMatrix m = CMatrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

}  // namespace gates

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}

bool is_unitary(const CMatrix &u, double tol) {
    if (u.rows() != u.cols()) {
        return false;
    }
    CMatrix d = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void check_targets(const std::vector<size_t> &targets, size_t num_qubits) {
    for (size_t k = 0; k < targets.size(); k++) {
        if (targets[k] >= num_qubits) {
            throw std::out_of_range(
                "qubit index " + std::to_string(targets[k]) + " out of range for " + std::to_string(num_qubits) +
                " qubits");
        }
        for (size_t j = 0; j < k; j++) {
            if (targets[j] == targets[k]) {
                throw std::invalid_argument("duplicate target qubit " + std::to_string(targets[k]));
            }
        }
    }
}

namespace detail {

void apply_2x2_to_bit(Complex *data, size_t total_bits, size_t bit, const Mat2 &m) {
    Complex row_major[4] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    simd::active_kernels().apply_2x2(data, size_t{1} << total_bits, bit, row_major);
}

void apply_matrix_to_bits(Complex *data, size_t total_bits, const std::vector<size_t> &bits, const CMatrix &u) {
    size_t k = bits.size();
    if (k == 1) {
        apply_2x2_to_bit(data, total_bits, bits[0], u);
        return;
    }
    size_t sub = size_t{1} << k;
    size_t mask = 0;
    std::vector<size_t> offsets(sub, 0);
    for (size_t j = 0; j < k; j++) {
        mask |= size_t{1} << bits[j];
    }
    for (size_t s = 0; s < sub; s++) {
        for (size_t j = 0; j < k; j++) {
            if ((s >> (k - 1 - j)) & 1) {
                offsets[s] |= size_t{1} << bits[j];
            }
        }
    }
    std::vector<Complex> in(sub), out(sub);
    size_t len = size_t{1} << total_bits;
    for (size_t base = 0; base < len; base++) {
        if (base & mask) {
            continue;
        }
        for (size_t s = 0; s < sub; s++) {
            in[s] = data[base | offsets[s]];
        }
        for (size_t r = 0; r < sub; r++) {
            Complex acc = 0;
            for (size_t c = 0; c < sub; c++) {
                acc += u(r, c) * in[c];
            }
            out[r] = acc;
        }
        for (size_t s = 0; s < sub; s++) {
            data[base | offsets[s]] = out[s];
        }
    }
}

}  // namespace detail

}  // namespace ionmbqc
