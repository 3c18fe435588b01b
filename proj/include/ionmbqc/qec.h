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

#ifndef IONMBQC_QEC_H
#define IONMBQC_QEC_H

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ionmbqc/graph.h"
#include "ionmbqc/quantum_ops.h"

namespace ionmbqc {

/// Qubit roles of the (n+2)-qubit code state: A = 0, C_i = i, B = n + 1.
class EcLayout {
   public:
    /// n must be odd.
    explicit EcLayout(size_t n);

    size_t n() const {
        return n_;
    }
    size_t num_qubits() const {
        return n_ + 2;
    }
    size_t a() const {
        return 0;
    }
    /// Codeword qubit C_i, 1 <= i <= n.
    size_t c(size_t i) const;
    size_t b() const {
        return n_ + 1;
    }
    GraphSpec graph() const;

   private:
    size_t n_;
};

enum class InputState { Plus, Minus, PlusI, MinusI, Zero, One };

/// "+", "-", "+i", "-i", "0", "1".
std::string input_label(InputState s);
InputState parse_input_label(const std::string &label);
StateVector input_vector(InputState s);

/// {+, -, +i, -i} (four) or those plus {0, 1} (six).
enum class InputSet { Four, Six };
std::vector<InputState> inputs_of(InputSet set);

/// R_z(theta) = exp(-i theta/2 Z) on each target codeword qubit.
struct ErrorSpec {
    /// 1-based codeword indices.
    std::vector<size_t> targets;
    double theta = 0;

    /// sin^2(theta/2).
    double flip_probability() const;
    /// theta = 2 asin(sqrt(p)).
    static ErrorSpec from_probability(std::vector<size_t> targets, double p);
    static ErrorSpec all(size_t n, double theta);
};

/// 2|EC_n> = (|0>|0_L> + |1>|1_L>)|0> + (|0>|1_L> + |1>|0_L>)|1>
/// with |0_L> = |+>^n and |1_L> = |->^n. Built from that formula, not from
/// CZ gates.
StateVector build_ec_state(size_t n);

/// One branch of reading the input into the code.
struct EncodeBranch {
    /// 0: A projected onto the input's frame vector; 1: onto its orthogonal.
    uint8_t outcome;
    double probability;
    /// State of C_1..C_n, B. Empty when probability is 0.
    std::optional<DensityMatrix> residual;
    /// Pauli applied in the output frame to map the orthogonal branch back.
    Pauli correction;
};

/// Basis in which A is measured for a given input. The output is read out in
/// the Hadamard frame (H rho_B H), so A is projected onto H conj(psi): inputs
/// |+->, |+-i>, |0/1> are read in with Z, Y and X measurements on A.
MeasurementBasis encode_basis(InputState input);

/// Measures A (qubit 0) of an (n+2)-qubit code state.
std::vector<EncodeBranch> encode_input(const DensityMatrix &state, InputState input);
std::vector<EncodeBranch> encode_input(const StateVector &state, InputState input);

/// Applies R_z(theta) to the targets. Accepts the full (n+2)-qubit state or
/// the (n+1)-qubit state left after A was measured.
StateVector inject_errors(const StateVector &state, const EcLayout &layout, const ErrorSpec &spec);
DensityMatrix inject_errors(const DensityMatrix &state, const EcLayout &layout, const ErrorSpec &spec);

/// Majority rule: Z when more than half of the outcomes are 1 (minus).
/// Throws for an even number of outcomes.
bool recovery_is_z(const std::vector<uint8_t> &syndrome);

struct SyndromeBranch {
    std::vector<uint8_t> syndrome;
    double probability;
    bool recovery_z;
};

struct DecodeResult {
    std::vector<SyndromeBranch> branches;
    /// Output qubit in the logical frame after recovery, aggregated.
    DensityMatrix output;
};

/// Measures C_1..C_n in X, applies the majority recovery and returns the
/// logical output H rho_B H.
DecodeResult decode_and_recover(const DensityMatrix &state);

/// Probability of every X-basis syndrome (index: C_1 is the most significant
/// bit) on an (n+1)-qubit post-encoding state.
std::vector<double> syndrome_distribution(const DensityMatrix &state);

/// Where errors are applied relative to the A measurement.
enum class ErrorTiming { BeforeEncode, AfterEncode };

/// Full protocol for one input: returns the aggregated logical output.
DensityMatrix teleport(
    const DensityMatrix &resource, const EcLayout &layout, InputState input, const ErrorSpec &errors,
    ErrorTiming timing = ErrorTiming::BeforeEncode);

double teleport_fidelity(
    const DensityMatrix &resource, const EcLayout &layout, InputState input, const ErrorSpec &errors,
    ErrorTiming timing = ErrorTiming::BeforeEncode);

struct AtfPoint {
    double p;
    std::vector<double> fidelities;  // per input, in inputs_of(set) order
    double atf;
};

struct AtfReport {
    size_t n;
    InputSet set;
    std::vector<size_t> targets;
    std::vector<AtfPoint> points;
};

/// Simulated ATF on the given p grid, errors on `targets` (1-based; empty
/// means all codeword qubits).
AtfReport atf(size_t n, const std::vector<double> &p_grid, const std::vector<size_t> &targets, InputSet set,
              ErrorTiming timing = ErrorTiming::BeforeEncode);

/// sum_{k <= (n-1)/2} C(n,k) p^k (1-p)^(n-k) for the four-state set;
/// (4 F + 2) / 6 for the six-state set.
double ideal_atf_curve(size_t n, double p, InputSet set);

/// Same with errors on only `num_targets` codeword qubits:
/// sum_{k <= (n-1)/2} C(m,k) p^k (1-p)^(m-k) for m = num_targets.
double ideal_atf_curve(size_t n, double p, InputSet set, size_t num_targets);

enum class NoiseScope { AllQubits, Codeword };

/// ATF at p = 0 with a single-qubit channel of the given strength applied to
/// every qubit in `scope` of the resource state before the protocol.
double noise_robustness_study(size_t n, Channel::Kind channel, double strength, NoiseScope scope = NoiseScope::AllQubits,
                              InputSet set = InputSet::Four);

/// `points` uniformly spaced values from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, size_t points);

}  // namespace ionmbqc

#endif
