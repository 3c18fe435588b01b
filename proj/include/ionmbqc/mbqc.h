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

#ifndef IONMBQC_MBQC_H
#define IONMBQC_MBQC_H

#include <cstdint>
#include <variant>
#include <vector>

#include "ionmbqc/graph.h"
#include "ionmbqc/quantum_ops.h"

namespace ionmbqc {

struct PatternBranchMode {};
struct PatternSampleMode {
    uint64_t seed;
    size_t shots;
};
using PatternMode = std::variant<PatternBranchMode, PatternSampleMode>;

struct PatternResult {
    /// Aggregated output after byproduct correction.
    DensityMatrix output;
    /// Branch mode: every outcome branch with its exact probability.
    /// Sample mode: every observed branch with its empirical frequency.
    std::vector<BranchRecord> per_branch;
};

/// Single-qubit gate on a four-qubit linear cluster: qubit 0 measured in
/// B(alpha), qubit 1 in B((-1)^s1 beta), qubit 2 in B((-1)^s2 gamma); the
/// output qubit 3 carries the byproduct X^(s1+s3) Z^s2.
PatternResult run_single_qubit_pattern(double alpha, double beta, double gamma, const PatternMode &mode = {});

/// Same pattern on a caller-supplied four-qubit resource.
PatternResult run_single_qubit_pattern(
    const StateVector &resource, double alpha, double beta, double gamma, const PatternMode &mode = {});

/// Two-qubit gate on a four-qubit linear cluster: qubits 0 and 3 measured in
/// B(alpha) and B(beta); outputs are qubits 1 and 2 with byproducts
/// X^s1 Z^s4 and X^s4 Z^s1.
PatternResult run_two_qubit_pattern(double alpha, double beta, const PatternMode &mode = {});

/// Circuit the single-qubit pattern implements on |+>:
/// H P(-gamma) H P(-beta) H P(-alpha), with P(phi) = diag(1, e^{i phi}).
Mat2 equivalent_circuit_single(double alpha, double beta, double gamma);

/// Circuit the two-qubit pattern implements on |++>:
/// CZ (H P(-alpha) (x) H P(-beta)).
CMatrix equivalent_circuit_two(double alpha, double beta);

StateVector oracle_output_single(double alpha, double beta, double gamma);
StateVector oracle_output_two(double alpha, double beta);

/// sum_b p_b B_b^dag rho_b B_b. Throws if probabilities do not sum to 1
/// within 1e-8.
DensityMatrix aggregate_branches(const std::vector<BranchRecord> &branches);

/// Measures `vertex` of the graph state in Z. Outcome 1 leaves Z byproducts
/// on the former neighbors; the aggregated output is |G - vertex>.
PatternResult run_z_deletion(const GraphSpec &g, size_t vertex);

}  // namespace ionmbqc

#endif
