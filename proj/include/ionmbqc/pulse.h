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

#ifndef IONMBQC_PULSE_H
#define IONMBQC_PULSE_H

#include <string>
#include <string_view>
#include <vector>

#include "ionmbqc/clifford.h"
#include "ionmbqc/graph.h"
#include "ionmbqc/state.h"

namespace ionmbqc {

/// One laser-pulse primitive.
///   MS(theta, active):   exp(-i theta sum_{a<b in active} X_a X_b)
///   Z(q, theta):         exp(-i theta/2 Z_q)
///   HIDE(q) / UNHIDE(q): take q out of / back into the collective pulses
///   XALL(theta, active): exp(-i theta/2 sum_{k in active} X_k)
/// For MS and XALL, `all` selects every qubit not hidden at that point.
struct PulsePrimitive {
    enum class Kind { MS, Z, Hide, Unhide, XAll };

    Kind kind = Kind::MS;
    double theta = 0;
    size_t qubit = 0;
    std::vector<size_t> active;
    bool all = false;

    static PulsePrimitive ms(double theta, std::vector<size_t> active);
    static PulsePrimitive ms_all(double theta);
    static PulsePrimitive z(size_t qubit, double theta);
    static PulsePrimitive hide(size_t qubit);
    static PulsePrimitive unhide(size_t qubit);
    static PulsePrimitive xall(double theta, std::vector<size_t> active);
    static PulsePrimitive xall_all(double theta);

    bool operator==(const PulsePrimitive &) const = default;
};

class PulseSequence {
   public:
    explicit PulseSequence(size_t num_qubits, std::vector<PulsePrimitive> primitives = {});

    size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<PulsePrimitive> &primitives() const {
        return primitives_;
    }
    void append(const PulsePrimitive &p);
    void append(const PulseSequence &other);

    /// Throws on out-of-range qubits, MS/XALL/Z touching a hidden qubit,
    /// MS with fewer than two active qubits, HIDE of a hidden qubit, UNHIDE of
    /// a visible one, or qubits still hidden at the end.
    void validate() const;

    /// Line format: "QUBITS n", then "MS theta q1,q2,..." / "MS theta *",
    /// "Z q theta", "HIDE q", "UNHIDE q", "XALL theta q1,..." / "XALL theta *".
    /// Angles use the shortest round-trip decimal form.
    std::string to_text() const;
    static PulseSequence parse(std::string_view text);

    bool operator==(const PulseSequence &) const = default;

   private:
    size_t num_qubits_;
    std::vector<PulsePrimitive> primitives_;
};

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);
double parse_double(std::string_view text);

/// Dense MS unitary on n qubits, identity outside `active`.
CMatrix ms_unitary(double theta, const std::vector<size_t> &active, size_t n);

struct PhysicalParams {
    double eta1;
    double omega;
    double delta;
    size_t n_ions;
};

/// theta = pi (eta1^2 / n) omega^2 / delta^2.
double theta_from_physics(const PhysicalParams &p);

StateVector simulate_sequence(const PulseSequence &seq, const StateVector &initial);

/// Pulse program for a family: LC4, RC4, EC_n (n odd or 2), GHZ(n).
PulseSequence compile_graph(const Family &family);

/// simulate(compile(family)) from |1...1>.
StateVector generated_state(const Family &family);

/// Correction table taking generated_state(family) to the canonical graph
/// state. GHZ tables are found by Clifford search and cached.
CorrectionTable correction_table(const Family &family);

/// Checks numerically that Z_k MS(theta) Z_k MS(theta) equals MS(2 theta) on
/// the qubits other than k, up to global phase.
bool refocus_check(size_t k, double theta, size_t n, double tol = 1e-10);

/// Pulses G_t, XALL(theta/2), G_t, XALL(-theta/2) with G_t = Z(pi) on every
/// target. The net effect is exp(+i theta/2 X) on each target and identity
/// elsewhere, so a target flips with probability sin^2(theta/2).
PulseSequence error_implementation_block(const std::vector<size_t> &targets, double theta, size_t num_qubits);

}  // namespace ionmbqc

#endif
