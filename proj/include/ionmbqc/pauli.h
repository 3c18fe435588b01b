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

#ifndef IONMBQC_PAULI_H
#define IONMBQC_PAULI_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ionmbqc/linalg.h"
#include "ionmbqc/state.h"

namespace ionmbqc {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);
Mat2 pauli_matrix(Pauli p);

/// Signed tensor product i^phase * P_0 (x) P_1 (x) ... (x) P_{n-1}.
class PauliString {
   public:
    PauliString() = default;

    /// Identity on n qubits.
    explicit PauliString(size_t n);

    /// `phase` is the exponent k of i^k, taken mod 4.
    explicit PauliString(std::vector<Pauli> letters, unsigned phase = 0);

    /// Parses strings like "XZII", "+XZII", "-ZYXY", "iXX", "-iZ". '_' is an
    /// alias for I.
    static PauliString parse(std::string_view text);

    /// Letter `p` on `qubit`, identity elsewhere.
    static PauliString single(size_t n, size_t qubit, Pauli p);

    size_t size() const {
        return letters_.size();
    }
    Pauli operator[](size_t q) const {
        return letters_[q];
    }
    const std::vector<Pauli> &letters() const {
        return letters_;
    }
    unsigned phase_exponent() const {
        return phase_;
    }
    Complex phase() const;

    /// Real sign; throws if the phase is imaginary.
    int sign() const;

    PauliString with_letter(size_t q, Pauli p) const;
    PauliString with_phase(unsigned phase) const;
    PauliString operator*(const PauliString &other) const;
    PauliString operator-() const;
    bool commutes_with(const PauliString &other) const;
    bool is_identity() const;
    size_t weight() const;

    /// Dense 2^n x 2^n matrix.
    CMatrix matrix() const;

    /// Letters with leading sign: "+XZII", "-ZYXY", "+iXX".
    std::string str() const;

    /// Letters only: "XZII".
    std::string letters_str() const;

    bool operator==(const PauliString &other) const = default;

    /// Masks over basis-index bits (qubit q -> bit n-1-q).
    uint64_t x_mask() const;
    uint64_t z_mask() const;

   private:
    std::vector<Pauli> letters_;
    unsigned phase_ = 0;
};

StateVector apply_pauli(const StateVector &state, const PauliString &p);
DensityMatrix apply_pauli(const DensityMatrix &rho, const PauliString &p);

/// <psi|P|psi>.
Complex expectation(const StateVector &state, const PauliString &p);

/// Tr(P rho).
Complex expectation(const DensityMatrix &rho, const PauliString &p);

}  // namespace ionmbqc

#endif
