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

#ifndef IONMBQC_TOMOGRAPHY_H
#define IONMBQC_TOMOGRAPHY_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ionmbqc/graph.h"
#include "ionmbqc/quantum_ops.h"

namespace ionmbqc {

/// Product Pauli measurement settings, one letter in {X, Y, Z} per qubit.
struct MeasurementSettings {
    size_t num_qubits = 0;
    std::vector<std::string> settings;
    size_t shots = 1;

    /// All 3^n settings in lexicographic X < Y < Z order.
    static MeasurementSettings full(size_t n, size_t shots);

    /// Throws on bad letters, wrong lengths, duplicates or zero shots.
    void validate() const;
};

/// Outcome counts per setting. Outcome index bit (n-1-q) is qubit q's result,
/// 0 for the +1 eigenvalue. Counts are real so that exact probabilities
/// scaled by a shot number can be fed through the same path.
struct CountsTable {
    size_t num_qubits = 0;
    std::vector<std::string> settings;
    std::vector<std::vector<double>> counts;

    double shots(size_t setting) const;
    /// Index of `setting`, or settings.size() when absent.
    size_t find(const std::string &setting) const;
    void validate() const;
};

/// Exact outcome distribution of one setting.
std::vector<double> setting_probabilities(const DensityMatrix &rho, const std::string &setting);

/// Multinomial draws per setting, from an mt19937_64 seeded with `seed`.
CountsTable sample_counts(const DensityMatrix &rho, const MeasurementSettings &settings, uint64_t seed);
CountsTable sample_counts(const StateVector &state, const MeasurementSettings &settings, uint64_t seed);

/// Exact probabilities times the shot number (the infinite-statistics limit).
CountsTable exact_counts(const DensityMatrix &rho, const MeasurementSettings &settings);
CountsTable exact_counts(const StateVector &state, const MeasurementSettings &settings);

/// True when the settings span every n-qubit Pauli operator, i.e. the
/// measurement map has full rank 4^n.
bool is_informationally_complete(size_t num_qubits, const std::vector<std::string> &settings);

struct MleOptions {
    size_t max_iterations = 10000;
    /// Stop when |L_k - L_{k-1}| <= tolerance * |L_k|.
    double tolerance = 1e-10;
};

struct ReconstructionResult {
    DensityMatrix rho;
    double log_likelihood;
    size_t iterations;
    bool converged;
    /// Log-likelihood after every accepted iteration, starting with I/d.
    std::vector<double> likelihood_trace;
};

/// Maximum-likelihood estimate by the R rho R fixed point, started from the
/// maximally mixed state. Each iteration also tries R^k rho R^k for
/// k = 2, 4, ... and keeps the longest step that still raises the
/// likelihood. A step that would lower the likelihood is replaced by the
/// diluted update (I + eps R) rho (I + eps R) with eps halved until the
/// likelihood does not decrease. Throws std::invalid_argument for
/// informationally incomplete data.
ReconstructionResult mle_reconstruct(const CountsTable &counts, const MleOptions &options = {});

/// Settings whose letters cover every stabilizer term of g: a setting covers
/// a term when they agree on the term's non-identity positions. Greedy,
/// heaviest terms first; free positions are filled with Z.
std::vector<std::string> bell_settings(const GraphSpec &g);

/// Estimates the Bell mean from the covering settings alone, averaging every
/// setting that covers a term. Throws std::invalid_argument listing the
/// uncovered terms.
double bell_from_counts(const CountsTable &counts, const GraphSpec &g);

enum class Functional { Fidelity, Purity, Tangle, BellExpectation, BellFromCounts };

std::string functional_name(Functional f);

struct ErrorBar {
    double mean;
    double std;
    std::vector<double> samples;
};

/// Monte Carlo projection noise: resamples every setting multinomially
/// around its empirical frequencies (shot number rounded to an integer),
/// reconstructs and evaluates the functional. Fidelity is taken against
/// |g>; BellFromCounts skips reconstruction. Returns the sample mean and
/// the (n-1)-normalized standard deviation. Needs trials >= 2.
ErrorBar mc_error_bar(
    const CountsTable &counts, size_t trials, Functional functional, const GraphSpec &g, uint64_t seed,
    const MleOptions &options = {});

/// Several functionals over the same resampled data sets, one error bar per
/// functional in the given order. Reconstructs once per trial.
std::vector<ErrorBar> mc_error_bars(
    const CountsTable &counts, size_t trials, const std::vector<Functional> &functionals, const GraphSpec &g,
    uint64_t seed, const MleOptions &options = {});

/// Evaluates a functional on a reconstructed state.
double evaluate_functional(Functional functional, const DensityMatrix &rho, const GraphSpec &g);

/// CSV with a "# schema=1" first line and columns setting,outcome,count.
void write_counts_csv(std::ostream &out, const CountsTable &counts);
CountsTable read_counts_csv(std::istream &in);

/// Outcome bitstring, qubit 0 first.
std::string outcome_label(size_t outcome, size_t num_qubits);

}  // namespace ionmbqc

#endif
