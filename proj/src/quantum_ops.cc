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

#include "ionmbqc/quantum_ops.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "ionmbqc/simd_kernels.h"

namespace ionmbqc {

namespace {

// Bits of row / column qubit q in the column-major storage of an n-qubit
// density matrix, viewed as a 2n-bit vector (index = col * d + row).
size_t row_bit(size_t q, size_t n) {
    return qubit_bit(q, n);
}

size_t col_bit(size_t q, size_t n) {
    return n + qubit_bit(q, n);
}

// m <- K m K^dag on qubit q; K need not be unitary.
void conjugate_on_qubit(CMatrix &m, size_t n, size_t q, const Mat2 &k) {
    detail::apply_2x2_to_bit(m.data(), 2 * n, row_bit(q, n), k);
    detail::apply_2x2_to_bit(m.data(), 2 * n, col_bit(q, n), k.conjugate());
}

// Index in the full register for sub-index i with bit `b` forced to s.
inline size_t insert_bit(size_t i, size_t b, size_t s) {
    size_t lo = i & ((size_t{1} << b) - 1);
    size_t hi = i >> b;
    return (hi << (b + 1)) | (s << b) | lo;
}

void check_qubit(size_t qubit, size_t n) {
    if (qubit >= n) {
        throw std::out_of_range(
            "qubit index " + std::to_string(qubit) + " out of range for " + std::to_string(n) + " qubits");
    }
}

int draw_outcome(double p0, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng) < p0 ? 0 : 1;
}

std::vector<int> selected_outcomes(const std::array<double, 2> &probs, const MeasureMode &mode) {
    if (std::holds_alternative<BranchMode>(mode)) {
        return {0, 1};
    }
    return {draw_outcome(probs[0], std::get<SampleMode>(mode).seed)};
}

void check_mapping_list(const std::vector<size_t> &keep, size_t n) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace needs at least one kept qubit");
    }
    check_targets(keep, n);
}

// Basis-index offsets of the kept and traced subsystems.
void subsystem_maps(
    const std::vector<size_t> &keep, size_t n, std::vector<size_t> &keep_map, std::vector<size_t> &trace_map) {
    std::vector<bool> kept(n, false);
    for (size_t q : keep) {
        kept[q] = true;
    }
    std::vector<size_t> traced;
    for (size_t q = 0; q < n; q++) {
        if (!kept[q]) {
            traced.push_back(q);
        }
    }
    auto build = [n](const std::vector<size_t> &qubits) {
        size_t k = qubits.size();
        std::vector<size_t> map(size_t{1} << k, 0);
        for (size_t s = 0; s < map.size(); s++) {
            for (size_t j = 0; j < k; j++) {
                if ((s >> (k - 1 - j)) & 1) {
                    map[s] |= size_t{1} << qubit_bit(qubits[j], n);
                }
            }
        }
        return map;
    };
    keep_map = build(keep);
    trace_map = build(traced);
}

}  // namespace

MeasurementBasis MeasurementBasis::equatorial(double alpha) {
    return MeasurementBasis(Kind::Equatorial, alpha);
}

MeasurementBasis MeasurementBasis::x() {
    return MeasurementBasis(Kind::X, 0);
}

MeasurementBasis MeasurementBasis::y() {
    return MeasurementBasis(Kind::Y, kPi / 2);
}

MeasurementBasis MeasurementBasis::z() {
    return MeasurementBasis(Kind::Z, 0);
}

MeasurementBasis MeasurementBasis::pauli(Pauli p) {
    switch (p) {
        case Pauli::X:
            return x();
        case Pauli::Y:
            return y();
        case Pauli::Z:
            return z();
        default:
            throw std::invalid_argument("identity is not a measurement basis");
    }
}

Eigen::Vector2cd MeasurementBasis::vector(int s) const {
    if (s != 0 && s != 1) {
        throw std::invalid_argument("measurement outcome must be 0 or 1");
    }
    Eigen::Vector2cd v;
    if (kind_ == Kind::Z) {
        v << (s == 0 ? 1 : 0), (s == 0 ? 0 : 1);
        return v;
    }
    double r = 1 / std::sqrt(2.0);
    double sign = s == 0 ? 1 : -1;
    v << r, sign * r * std::exp(kI * alpha_);
    return v;
}

Mat2 MeasurementBasis::to_z_basis() const {
    Mat2 w;
    w.row(0) = vector(0).adjoint();
    w.row(1) = vector(1).adjoint();
    return w;
}

std::string MeasurementBasis::str() const {
    switch (kind_) {
        case Kind::X:
            return "X";
        case Kind::Y:
            return "Y";
        case Kind::Z:
            return "Z";
        case Kind::Equatorial:
            return "B(" + std::to_string(alpha_) + ")";
    }
    return "?";
}

StateVector apply_unitary(const StateVector &state, const CMatrix &u, const std::vector<size_t> &targets) {
    size_t n = state.num_qubits();
    check_targets(targets, n);
    size_t dim = size_t{1} << targets.size();
    if (targets.empty() || static_cast<size_t>(u.rows()) != dim || !is_unitary(u)) {
        throw std::invalid_argument("apply_unitary needs a unitary of size 2^k for k targets");
    }
    std::vector<size_t> bits;
    for (size_t t : targets) {
        bits.push_back(qubit_bit(t, n));
    }
    CVector amps = state.amplitudes();
    detail::apply_matrix_to_bits(amps.data(), n, bits, u);
    return StateVector(n, std::move(amps));
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const CMatrix &u, const std::vector<size_t> &targets) {
    size_t n = rho.num_qubits();
    check_targets(targets, n);
    size_t dim = size_t{1} << targets.size();
    if (targets.empty() || static_cast<size_t>(u.rows()) != dim || !is_unitary(u)) {
        throw std::invalid_argument("apply_unitary needs a unitary of size 2^k for k targets");
    }
    std::vector<size_t> rbits, cbits;
    for (size_t t : targets) {
        rbits.push_back(row_bit(t, n));
        cbits.push_back(col_bit(t, n));
    }
    CMatrix m = rho.matrix();
    detail::apply_matrix_to_bits(m.data(), 2 * n, rbits, u);
    detail::apply_matrix_to_bits(m.data(), 2 * n, cbits, u.conjugate());
    return DensityMatrix(n, std::move(m));
}

StateVector apply_gate(const StateVector &state, const Mat2 &u, size_t qubit) {
    return apply_unitary(state, u, {qubit});
}

DensityMatrix apply_gate(const DensityMatrix &rho, const Mat2 &u, size_t qubit) {
    return apply_unitary(rho, u, {qubit});
}

std::array<double, 2> outcome_probabilities(const StateVector &state, size_t qubit, const MeasurementBasis &basis) {
    size_t n = state.num_qubits();
    check_qubit(qubit, n);
    CVector amps = state.amplitudes();
    size_t b = qubit_bit(qubit, n);
    detail::apply_2x2_to_bit(amps.data(), n, b, basis.to_z_basis());
    std::array<double, 2> p{0, 0};
    for (size_t i = 0; i < state.dim(); i++) {
        p[(i >> b) & 1] += std::norm(amps[static_cast<Eigen::Index>(i)]);
    }
    return p;
}

std::vector<BranchRecord> measure(
    const StateVector &state, size_t qubit, const MeasurementBasis &basis, const MeasureMode &mode) {
    size_t n = state.num_qubits();
    check_qubit(qubit, n);
    CVector amps = state.amplitudes();
    size_t b = qubit_bit(qubit, n);
    detail::apply_2x2_to_bit(amps.data(), n, b, basis.to_z_basis());

    const auto &k = simd::active_kernels();
    size_t half = state.dim() / 2;
    std::array<CVector, 2> parts;
    std::array<double, 2> probs{};
    for (size_t s = 0; s < 2; s++) {
        parts[s].resize(static_cast<Eigen::Index>(half));
        for (size_t i = 0; i < half; i++) {
            parts[s][static_cast<Eigen::Index>(i)] = amps[static_cast<Eigen::Index>(insert_bit(i, b, s))];
        }
        probs[s] = k.norm_sq(parts[s].data(), half);
    }
    double total = probs[0] + probs[1];
    probs[0] /= total;
    probs[1] /= total;

    std::vector<BranchRecord> out;
    for (int s : selected_outcomes(probs, mode)) {
        BranchRecord r;
        r.outcomes = {static_cast<uint8_t>(s)};
        r.probability = probs[s];
        if (n > 1) {
            r.byproduct = PauliString(n - 1);
            if (probs[s] > 0) {
                r.residual = StateVector(n - 1, std::move(parts[s]));
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<BranchRecord> measure(
    const DensityMatrix &rho, size_t qubit, const MeasurementBasis &basis, const MeasureMode &mode) {
    size_t n = rho.num_qubits();
    check_qubit(qubit, n);
    CMatrix m = rho.matrix();
    Mat2 w = basis.to_z_basis();
    detail::apply_2x2_to_bit(m.data(), 2 * n, row_bit(qubit, n), w);
    detail::apply_2x2_to_bit(m.data(), 2 * n, col_bit(qubit, n), w.conjugate());

    size_t b = qubit_bit(qubit, n);
    size_t half = rho.dim() / 2;
    auto h = static_cast<Eigen::Index>(half);
    std::array<CMatrix, 2> blocks;
    std::array<double, 2> probs{};
    for (size_t s = 0; s < 2; s++) {
        blocks[s].resize(h, h);
        for (size_t c = 0; c < half; c++) {
            auto fc = static_cast<Eigen::Index>(insert_bit(c, b, s));
            for (size_t r = 0; r < half; r++) {
                blocks[s](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    m(static_cast<Eigen::Index>(insert_bit(r, b, s)), fc);
            }
        }
        probs[s] = std::max(0.0, blocks[s].trace().real());
    }
    double total = probs[0] + probs[1];
    probs[0] /= total;
    probs[1] /= total;

    std::vector<BranchRecord> out;
    for (int s : selected_outcomes(probs, mode)) {
        BranchRecord r;
        r.outcomes = {static_cast<uint8_t>(s)};
        r.probability = probs[s];
        if (n > 1) {
            r.byproduct = PauliString(n - 1);
            if (probs[s] > 1e-300) {
                CMatrix blk = blocks[s] / blocks[s].trace().real();
                r.residual = DensityMatrix(n - 1, std::move(blk));
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

double fidelity(const DensityMatrix &rho, const StateVector &psi) {
    if (rho.num_qubits() != psi.num_qubits()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const CVector &v = psi.amplitudes();
    Complex f = v.dot(rho.matrix() * v);
    return std::clamp(f.real(), 0.0, 1.0);
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    Complex ov = simd::active_kernels().inner(a.amplitudes().data(), b.amplitudes().data(), a.dim());
    return std::clamp(std::norm(ov), 0.0, 1.0);
}

double purity(const DensityMatrix &rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return simd::active_kernels().norm_sq(rho.matrix().data(), rho.dim() * rho.dim());
}

double concurrence(const DensityMatrix &rho) {
    if (rho.num_qubits() != 2) {
        throw std::invalid_argument("tangle is defined for exactly two qubits");
    }
    rho.check_physical();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
    CMatrix yy = kron(gates::pauli_y(), gates::pauli_y());
    if (es.eigenvalues()[3] > 1 - 1e-12) {
        // Pure: |<psi*| YY |psi>| avoids square roots of round-off eigenvalues.
        CVector psi = es.eigenvectors().col(3);
        return std::abs((psi.transpose() * yy * psi)(0, 0));
    }
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    CMatrix sqrt_rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    CMatrix flipped = yy * rho.matrix().conjugate() * yy;
    CMatrix r = sqrt_rho * flipped * sqrt_rho;
    r = (r + r.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> rs(r, Eigen::EigenvaluesOnly);
    Eigen::VectorXd lam = rs.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(lam.data(), lam.data() + lam.size(), std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double tangle(const DensityMatrix &rho) {
    double c = concurrence(rho);
    return std::min(1.0, c * c);
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<size_t> &keep) {
    size_t n = rho.num_qubits();
    check_mapping_list(keep, n);
    std::vector<size_t> km, tm;
    subsystem_maps(keep, n, km, tm);
    auto dk = static_cast<Eigen::Index>(km.size());
    CMatrix out = CMatrix::Zero(dk, dk);
    const CMatrix &m = rho.matrix();
    for (Eigen::Index c = 0; c < dk; c++) {
        for (Eigen::Index r = 0; r < dk; r++) {
            Complex acc = 0;
            for (size_t t : tm) {
                acc += m(static_cast<Eigen::Index>(km[r] | t), static_cast<Eigen::Index>(km[c] | t));
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(keep.size(), std::move(out));
}

DensityMatrix partial_trace(const StateVector &state, const std::vector<size_t> &keep) {
    size_t n = state.num_qubits();
    check_mapping_list(keep, n);
    std::vector<size_t> km, tm;
    subsystem_maps(keep, n, km, tm);
    CMatrix psi(static_cast<Eigen::Index>(km.size()), static_cast<Eigen::Index>(tm.size()));
    for (size_t r = 0; r < km.size(); r++) {
        for (size_t t = 0; t < tm.size(); t++) {
            psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) =
                state[km[r] | tm[t]];
        }
    }
    return DensityMatrix(keep.size(), psi * psi.adjoint());
}

std::vector<Mat2> Channel::kraus() const {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("channel strength must lie in [0, 1], got " + std::to_string(p));
    }
    if (kind == Kind::Dephase) {
        return {std::sqrt(1 - p / 2) * gates::identity(), std::sqrt(p / 2) * gates::pauli_z()};
    }
    double w = std::sqrt(p / 4);
    return {
        std::sqrt(1 - 3 * p / 4) * gates::identity(),
        w * gates::pauli_x(),
        w * gates::pauli_y(),
        w * gates::pauli_z(),
    };
}

DensityMatrix apply_channel(const DensityMatrix &rho, const Channel &channel) {
    size_t n = rho.num_qubits();
    check_qubit(channel.qubit, n);
    std::vector<Mat2> ks = channel.kraus();
    CMatrix acc = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const Mat2 &k : ks) {
        CMatrix m = rho.matrix();
        conjugate_on_qubit(m, n, channel.qubit, k);
        acc += m;
    }
    return DensityMatrix(n, std::move(acc));
}

Eigen::Vector3d bloch_vector(const DensityMatrix &rho) {
    if (rho.num_qubits() != 1) {
        throw std::invalid_argument("Bloch vector needs a single-qubit state");
    }
    return {
        expectation(rho, PauliString::parse("X")).real(),
        expectation(rho, PauliString::parse("Y")).real(),
        expectation(rho, PauliString::parse("Z")).real(),
    };
}

}  // namespace ionmbqc
