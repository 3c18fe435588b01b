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

#include "ionmbqc/pauli.h"

#include <bit>
#include <stdexcept>

namespace ionmbqc {

namespace {

// Product of single letters a*b = i^phase * letter.
struct LetterProduct {
    Pauli letter;
    unsigned phase;
};

LetterProduct multiply_letters(Pauli a, Pauli b) {
    static const LetterProduct table[4][4] = {
        {{Pauli::I, 0}, {Pauli::X, 0}, {Pauli::Y, 0}, {Pauli::Z, 0}},
        {{Pauli::X, 0}, {Pauli::I, 0}, {Pauli::Z, 1}, {Pauli::Y, 3}},
        {{Pauli::Y, 0}, {Pauli::Z, 3}, {Pauli::I, 0}, {Pauli::X, 1}},
        {{Pauli::Z, 0}, {Pauli::Y, 1}, {Pauli::X, 3}, {Pauli::I, 0}},
    };
    return table[static_cast<int>(a)][static_cast<int>(b)];
}

Complex i_pow(unsigned k) {
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[k & 3];
}

bool has_x(Pauli p) {
    return p == Pauli::X || p == Pauli::Y;
}

bool has_z(Pauli p) {
    return p == Pauli::Z || p == Pauli::Y;
}

// P|i> = coefficient(i) |i ^ x_mask>.
struct PauliAction {
    uint64_t xm;
    uint64_t zm;
    Complex global;
};

PauliAction action_of(const PauliString &p) {
    unsigned num_y = 0;
    for (Pauli l : p.letters()) {
        num_y += l == Pauli::Y;
    }
    return {p.x_mask(), p.z_mask(), i_pow(p.phase_exponent() + num_y)};
}

inline Complex coefficient(const PauliAction &a, uint64_t i) {
    return (std::popcount(i & a.zm) & 1) ? -a.global : a.global;
}

}  // namespace

char pauli_char(Pauli p) {
    return "IXYZ"[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

Mat2 pauli_matrix(Pauli p) {
    switch (p) {
        case Pauli::I:
            return gates::identity();
        case Pauli::X:
            return gates::pauli_x();
        case Pauli::Y:
            return gates::pauli_y();
        case Pauli::Z:
            return gates::pauli_z();
    }
    throw std::logic_error("bad Pauli");
}

PauliString::PauliString(size_t n) : letters_(n, Pauli::I) {
}

PauliString::PauliString(std::vector<Pauli> letters, unsigned phase) : letters_(std::move(letters)), phase_(phase & 3) {
}

PauliString PauliString::parse(std::string_view text) {
    unsigned phase = 0;
    size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        phase = text[pos] == '-' ? 2 : 0;
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase += 1;
        pos++;
    }
    if (pos == text.size()) {
        throw std::invalid_argument("empty Pauli string: '" + std::string(text) + "'");
    }
    std::vector<Pauli> letters;
    for (; pos < text.size(); pos++) {
        letters.push_back(pauli_from_char(text[pos]));
    }
    return PauliString(std::move(letters), phase);
}

PauliString PauliString::single(size_t n, size_t qubit, Pauli p) {
    if (qubit >= n) {
        throw std::out_of_range("qubit index out of range");
    }
    PauliString r(n);
    r.letters_[qubit] = p;
    return r;
}

Complex PauliString::phase() const {
    return i_pow(phase_);
}

int PauliString::sign() const {
    if (phase_ & 1) {
        throw std::domain_error("Pauli string " + str() + " has an imaginary phase");
    }
    return phase_ == 0 ? 1 : -1;
}

PauliString PauliString::with_letter(size_t q, Pauli p) const {
    PauliString r = *this;
    r.letters_.at(q) = p;
    return r;
}

PauliString PauliString::with_phase(unsigned phase) const {
    PauliString r = *this;
    r.phase_ = phase & 3;
    return r;
}

PauliString PauliString::operator*(const PauliString &other) const {
    if (size() != other.size()) {
        throw std::invalid_argument("Pauli string length mismatch");
    }
    PauliString r(size());
    unsigned phase = phase_ + other.phase_;
    for (size_t q = 0; q < size(); q++) {
        LetterProduct lp = multiply_letters(letters_[q], other.letters_[q]);
        r.letters_[q] = lp.letter;
        phase += lp.phase;
    }
    r.phase_ = phase & 3;
    return r;
}

PauliString PauliString::operator-() const {
    return with_phase(phase_ + 2);
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (size() != other.size()) {
        throw std::invalid_argument("Pauli string length mismatch");
    }
    size_t anti = 0;
    for (size_t q = 0; q < size(); q++) {
        Pauli a = letters_[q];
        Pauli b = other.letters_[q];
        anti += a != Pauli::I && b != Pauli::I && a != b;
    }
    return anti % 2 == 0;
}

bool PauliString::is_identity() const {
    return weight() == 0;
}

size_t PauliString::weight() const {
    size_t w = 0;
    for (Pauli l : letters_) {
        w += l != Pauli::I;
    }
    return w;
}

CMatrix PauliString::matrix() const {
    CMatrix m = CMatrix::Identity(1, 1) * phase();
    for (Pauli l : letters_) {
        m = kron(m, pauli_matrix(l));
    }
    return m;
}

std::string PauliString::str() const {
    static const char *prefix[4] = {"+", "+i", "-", "-i"};
    return prefix[phase_] + letters_str();
}

std::string PauliString::letters_str() const {
    std::string s;
    for (Pauli l : letters_) {
        s.push_back(pauli_char(l));
    }
    return s;
}

uint64_t PauliString::x_mask() const {
    uint64_t m = 0;
    size_t n = size();
    for (size_t q = 0; q < n; q++) {
        if (has_x(letters_[q])) {
            m |= uint64_t{1} << qubit_bit(q, n);
        }
    }
    return m;
}

uint64_t PauliString::z_mask() const {
    uint64_t m = 0;
    size_t n = size();
    for (size_t q = 0; q < n; q++) {
        if (has_z(letters_[q])) {
            m |= uint64_t{1} << qubit_bit(q, n);
        }
    }
    return m;
}

StateVector apply_pauli(const StateVector &state, const PauliString &p) {
    if (p.size() != state.num_qubits()) {
        throw std::invalid_argument("Pauli string length does not match state");
    }
    PauliAction a = action_of(p);
    const CVector &in = state.amplitudes();
    CVector out(in.size());
    for (uint64_t i = 0; i < static_cast<uint64_t>(in.size()); i++) {
        out[static_cast<Eigen::Index>(i ^ a.xm)] = coefficient(a, i) * in[static_cast<Eigen::Index>(i)];
    }
    return StateVector(state.num_qubits(), std::move(out));
}

DensityMatrix apply_pauli(const DensityMatrix &rho, const PauliString &p) {
    if (p.size() != rho.num_qubits()) {
        throw std::invalid_argument("Pauli string length does not match state");
    }
    PauliAction a = action_of(p);
    const CMatrix &in = rho.matrix();
    auto d = in.rows();
    CMatrix out(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        Complex cc = std::conj(coefficient(a, static_cast<uint64_t>(c)));
        Eigen::Index c2 = static_cast<Eigen::Index>(static_cast<uint64_t>(c) ^ a.xm);
        for (Eigen::Index r = 0; r < d; r++) {
            Eigen::Index r2 = static_cast<Eigen::Index>(static_cast<uint64_t>(r) ^ a.xm);
            out(r2, c2) = coefficient(a, static_cast<uint64_t>(r)) * in(r, c) * cc;
        }
    }
    return DensityMatrix(rho.num_qubits(), std::move(out));
}

Complex expectation(const StateVector &state, const PauliString &p) {
    if (p.size() != state.num_qubits()) {
        throw std::invalid_argument("Pauli string length does not match state");
    }
    PauliAction a = action_of(p);
    const CVector &v = state.amplitudes();
    Complex t = 0;
    for (uint64_t i = 0; i < static_cast<uint64_t>(v.size()); i++) {
        t += std::conj(v[static_cast<Eigen::Index>(i ^ a.xm)]) * coefficient(a, i) * v[static_cast<Eigen::Index>(i)];
    }
    return t;
}

Complex expectation(const DensityMatrix &rho, const PauliString &p) {
    if (p.size() != rho.num_qubits()) {
        throw std::invalid_argument("Pauli string length does not match state");
    }
    PauliAction a = action_of(p);
    const CMatrix &m = rho.matrix();
    Complex t = 0;
    for (uint64_t j = 0; j < static_cast<uint64_t>(m.rows()); j++) {
        t += coefficient(a, j) * m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j ^ a.xm));
    }
    return t;
}

}  // namespace ionmbqc
