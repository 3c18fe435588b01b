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

#ifndef IONMBQC_CLIFFORD_H
#define IONMBQC_CLIFFORD_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ionmbqc/graph.h"
#include "ionmbqc/linalg.h"
#include "ionmbqc/pauli.h"
#include "ionmbqc/state.h"

namespace ionmbqc {

/// Factors available in correction words.
enum class CliffordFactor {
    H,
    X,
    Z,
    XQuarterPlus,   // exp(+i pi/4 X), token "E+"
    XQuarterMinus,  // exp(-i pi/4 X), token "E-"
};

/// Single-qubit unitary written as a product of factors. The product is read
/// as written: the leftmost factor acts last.
class LocalUnitary {
   public:
    LocalUnitary() = default;
    explicit LocalUnitary(std::vector<CliffordFactor> factors) : factors_(std::move(factors)) {
    }

    /// Space separated tokens H, X, Z, E+, E-; "I" or "" is the identity.
    static LocalUnitary parse(std::string_view text);

    const std::vector<CliffordFactor> &factors() const {
        return factors_;
    }
    Mat2 matrix() const;
    std::string str() const;

    bool operator==(const LocalUnitary &) const = default;

   private:
    std::vector<CliffordFactor> factors_;
};

/// Signed Pauli letter produced by conjugating a Pauli with a Clifford.
struct SignedPauli {
    Pauli letter;
    int sign;
};

/// u p u^dag as a signed Pauli, or nullopt if u is not Clifford on p.
std::optional<SignedPauli> conjugate_pauli(const Mat2 &u, Pauli p);

/// True when u maps X, Y, Z to signed Paulis under conjugation.
bool is_clifford(const Mat2 &u, double tol = 1e-9);

/// The 24 single-qubit Cliffords modulo phase, each as a shortest word over
/// {H, X, Z, E+, E-}. Entry 0 is the identity.
const std::vector<LocalUnitary> &single_qubit_cliffords();

/// Per-qubit local unitaries mapping an experimentally generated state to its
/// canonical graph state: corrected = (U_0 (x) U_1 (x) ...) |E>.
class CorrectionTable {
   public:
    CorrectionTable() = default;
    explicit CorrectionTable(std::vector<LocalUnitary> ops);
    static CorrectionTable identity(size_t n);

    size_t size() const {
        return ops_.size();
    }
    const LocalUnitary &operator[](size_t q) const {
        return ops_[q];
    }
    const std::vector<LocalUnitary> &ops() const {
        return ops_;
    }
    bool is_clifford() const;

   private:
    std::vector<LocalUnitary> ops_;
};

/// Correction tables for the linear, ring and EC families (LC4, RC4, EC_n).
/// EC_2 uses the ring table with the ring order A, C1, B, C2.
CorrectionTable standard_correction_table(const Family &family);

StateVector apply_correction_table(const StateVector &state, const CorrectionTable &t);
DensityMatrix apply_correction_table(const DensityMatrix &rho, const CorrectionTable &t);

/// Setting Q with <E|Q|E> = <E|T^dag P T|E>: measuring Q on the uncorrected
/// state is equivalent to measuring `setting` P on the corrected state. The
/// returned string carries the sign.
PauliString reinterpret_pauli_setting(const PauliString &setting, const CorrectionTable &t);

/// The opposite conjugation T P T^dag.
PauliString conjugate_setting_forward(const PauliString &setting, const CorrectionTable &t);

/// Searches all 24^n single-qubit Clifford tuples for U with
/// (U_0 (x) ... ) |from> = |to> up to phase, using stabilizer images.
std::optional<CorrectionTable> find_lc_equivalence(const GraphSpec &from, const GraphSpec &to);

/// Searches Clifford pairs (c, l) for the table [c, l, l, ...] (qubit
/// `center` gets c, every other qubit l) that maps `from` to `to`.
std::optional<CorrectionTable> find_star_correction(
    const StateVector &from, const StateVector &to, size_t center, double tol = 1e-9);

/// Local complementation at vertex v.
GraphSpec local_complement(const GraphSpec &g, size_t v);

}  // namespace ionmbqc

#endif
