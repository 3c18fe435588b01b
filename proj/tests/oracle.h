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

#ifndef IONMBQC_TESTS_ORACLE_H
#define IONMBQC_TESTS_ORACLE_H

// Dense reference constructions used as independent oracles. Nothing here
// calls into the library's gate, measurement or graph code.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline const double kPi = 3.14159265358979323846;

inline M kron(const M &a, const M &b) {
    M r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}

inline M pauli(char c) {
    M m(2, 2);
    switch (c) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m = M::Identity(2, 2);
    }
    return m;
}

inline M hadamard() {
    M h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

// Letters only ("XZII"); qubit 0 is the leftmost factor.
inline M pauli_string(const std::string &letters) {
    M r = M::Identity(1, 1);
    for (char c : letters) {
        r = kron(r, pauli(c));
    }
    return r;
}

// Single-qubit matrix on qubit q of n.
inline M on_qubit(const M &u, size_t q, size_t n) {
    M r = M::Identity(1, 1);
    for (size_t k = 0; k < n; k++) {
        r = kron(r, k == q ? u : M::Identity(2, 2));
    }
    return r;
}

// exp(-i t H) for Hermitian H by eigendecomposition.
inline M expm_i(const M &h, double t) {
    Eigen::SelfAdjointEigenSolver<M> es(h);
    V phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); i++) {
        phases[i] = std::exp(C(0, -t * es.eigenvalues()[i]));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// exp(-i theta sum_{a<b in active} X_a X_b).
inline M ms(double theta, const std::vector<size_t> &active, size_t n) {
    M h = M::Zero(1 << n, 1 << n);
    for (size_t i = 0; i < active.size(); i++) {
        for (size_t j = i + 1; j < active.size(); j++) {
            h += on_qubit(pauli('X'), active[i], n) * on_qubit(pauli('X'), active[j], n);
        }
    }
    return expm_i(h, theta);
}

// exp(-i theta/2 Z) on qubit q.
inline M rz(double theta, size_t q, size_t n) {
    return expm_i(on_qubit(pauli('Z'), q, n), theta / 2);
}

// Graph state amplitudes (-1)^{sum_edges x_a x_b} / sqrt(2^n).
inline V graph_state(size_t n, const std::vector<std::pair<size_t, size_t>> &edges) {
    size_t d = size_t{1} << n;
    V v(d);
    for (size_t x = 0; x < d; x++) {
        int sign = 1;
        for (auto [a, b] : edges) {
            bool xa = (x >> (n - 1 - a)) & 1;
            bool xb = (x >> (n - 1 - b)) & 1;
            if (xa && xb) {
                sign = -sign;
            }
        }
        v[x] = static_cast<double>(sign) / std::sqrt(static_cast<double>(d));
    }
    return v;
}

inline V basis_state(const std::string &bits) {
    size_t n = bits.size();
    V v = V::Zero(1 << n);
    size_t idx = 0;
    for (char c : bits) {
        idx = (idx << 1) | static_cast<size_t>(c == '1');
    }
    v[idx] = 1;
    return v;
}

inline double fidelity(const V &a, const V &b) {
    return std::norm(a.normalized().dot(b.normalized()));
}

inline double fidelity(const M &rho, const V &psi) {
    V p = psi.normalized();
    return (p.adjoint() * rho * p)(0, 0).real();
}

inline M projector(const V &psi) {
    V p = psi.normalized();
    return p * p.adjoint();
}

}  // namespace oracle

#endif
