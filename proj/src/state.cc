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

#include "ionmbqc/state.h"

#include <stdexcept>
#include <string>

#include "ionmbqc/simd_kernels.h"

namespace ionmbqc {

namespace {

void check_register_size(size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument(
            "register size " + std::to_string(num_qubits) + " outside supported range 1.." +
            std::to_string(kMaxQubits));
    }
}

}  // namespace

StateVector::StateVector(size_t num_qubits) : num_qubits_(num_qubits) {
    check_register_size(num_qubits);
    amps_ = CVector::Zero(static_cast<Eigen::Index>(dim()));
    amps_[0] = 1;
}

StateVector::StateVector(size_t num_qubits, CVector amplitudes) : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    check_register_size(num_qubits);
    if (static_cast<size_t>(amps_.size()) != dim()) {
        throw std::invalid_argument(
            "amplitude vector has length " + std::to_string(amps_.size()) + ", expected " + std::to_string(dim()));
    }
    const auto &k = simd::active_kernels();
    double n2 = k.norm_sq(amps_.data(), dim());
    if (!(n2 > 1e-300)) {
        throw std::invalid_argument("state vector has zero norm");
    }
    k.scale(amps_.data(), 1 / std::sqrt(n2), dim());
}

StateVector StateVector::from_bits(std::string_view bits) {
    size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("basis label must contain only 0 and 1: " + std::string(bits));
        }
        index = (index << 1) | static_cast<size_t>(c - '0');
    }
    StateVector s(bits.size());
    s.amps_[0] = 0;
    s.amps_[static_cast<Eigen::Index>(index)] = 1;
    return s;
}

StateVector StateVector::plus(size_t num_qubits) {
    check_register_size(num_qubits);
    size_t d = size_t{1} << num_qubits;
    return StateVector(num_qubits, CVector::Constant(static_cast<Eigen::Index>(d), 1.0));
}

StateVector StateVector::product(const std::vector<Eigen::Vector2cd> &qubits) {
    check_register_size(qubits.size());
    CVector v = qubits[0];
    for (size_t q = 1; q < qubits.size(); q++) {
        v = kron(v, qubits[q]);
    }
    return StateVector(qubits.size(), v);
}

StateVector StateVector::tensor(const StateVector &other) const {
    return StateVector(num_qubits_ + other.num_qubits_, kron(amps_, other.amps_));
}

DensityMatrix::DensityMatrix(const StateVector &pure)
    : num_qubits_(pure.num_qubits()), rho_(pure.amplitudes() * pure.amplitudes().adjoint()) {
}

DensityMatrix::DensityMatrix(size_t num_qubits, CMatrix matrix) : num_qubits_(num_qubits), rho_(std::move(matrix)) {
    check_register_size(num_qubits);
    auto d = static_cast<Eigen::Index>(dim());
    if (rho_.rows() != d || rho_.cols() != d) {
        throw std::invalid_argument("density matrix shape does not match " + std::to_string(num_qubits) + " qubits");
    }
    if (!is_hermitian(rho_, 1e-8)) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    Complex tr = rho_.trace();
    if (std::abs(tr - 1.0) > 1e-8) {
        throw std::invalid_argument("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    CMatrix h = (rho_ + rho_.adjoint()) / 2.0;
    rho_ = h / h.trace().real();
}

DensityMatrix DensityMatrix::maximally_mixed(size_t num_qubits) {
    check_register_size(num_qubits);
    auto d = static_cast<Eigen::Index>(size_t{1} << num_qubits);
    return DensityMatrix(num_qubits, CMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::trace() const {
    return rho_.trace().real();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const {
    return eigenvalues().minCoeff();
}

void DensityMatrix::check_physical(double tol) const {
    double lo = min_eigenvalue();
    if (lo < -tol) {
        throw std::domain_error("density matrix has negative eigenvalue " + std::to_string(lo));
    }
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix &other) const {
    return DensityMatrix(num_qubits_ + other.num_qubits_, kron(rho_, other.rho_));
}

}  // namespace ionmbqc
