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

#include "ionmbqc/mbqc.h"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

namespace ionmbqc {

namespace {

// One measurement of a pattern. `qubit` indexes the current (shrinking)
// register; the basis may depend on earlier outcomes.
struct Step {
    size_t qubit;
    std::function<MeasurementBasis(const std::vector<uint8_t> &)> basis;
};

using ByproductRule = std::function<PauliString(const std::vector<uint8_t> &)>;

PauliString x_pow_z_pow(bool x, bool z) {
    PauliString p(1);
    if (x) {
        p = p * PauliString::parse("X");
    }
    if (z) {
        p = p * PauliString::parse("Z");
    }
    return p;
}

PatternResult run_branches(const StateVector &resource, const std::vector<Step> &steps, const ByproductRule &byproduct) {
    std::vector<BranchRecord> frontier(1);
    frontier[0].probability = 1;
    frontier[0].residual = resource;
    for (const Step &step : steps) {
        std::vector<BranchRecord> next;
        for (const BranchRecord &b : frontier) {
            if (!b.residual.has_value()) {
                // Zero-probability branch: keep both children at probability 0.
                for (uint8_t s : {0, 1}) {
                    BranchRecord c = b;
                    c.outcomes.push_back(s);
                    next.push_back(std::move(c));
                }
                continue;
            }
            const auto &state = std::get<StateVector>(*b.residual);
            for (BranchRecord &m : measure(state, step.qubit, step.basis(b.outcomes), BranchMode{})) {
                BranchRecord c;
                c.outcomes = b.outcomes;
                c.outcomes.push_back(m.outcomes[0]);
                c.probability = b.probability * m.probability;
                if (c.probability > 0) {
                    c.residual = std::move(m.residual);
                }
                next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }
    for (BranchRecord &b : frontier) {
        b.byproduct = byproduct(b.outcomes);
    }
    DensityMatrix out = aggregate_branches(frontier);
    return {out, frontier};
}

PatternResult run_samples(
    const StateVector &resource, const std::vector<Step> &steps, const ByproductRule &byproduct, uint64_t seed,
    size_t shots) {
    if (shots == 0) {
        throw std::invalid_argument("sample mode needs at least one shot");
    }
    std::map<std::vector<uint8_t>, std::pair<size_t, StateVector>> seen;
    for (size_t shot = 0; shot < shots; shot++) {
        std::seed_seq seq{seed, static_cast<uint64_t>(shot)};
        std::mt19937_64 rng(seq);
        StateVector state = resource;
        std::vector<uint8_t> outcomes;
        for (const Step &step : steps) {
            BranchRecord r = measure(state, step.qubit, step.basis(outcomes), SampleMode{rng()})[0];
            outcomes.push_back(r.outcomes[0]);
            state = std::get<StateVector>(*r.residual);
        }
        auto it = seen.find(outcomes);
        if (it == seen.end()) {
            seen.emplace(outcomes, std::make_pair(size_t{1}, state));
        } else {
            it->second.first++;
        }
    }
    std::vector<BranchRecord> branches;
    for (auto &[outcomes, entry] : seen) {
        BranchRecord b;
        b.outcomes = outcomes;
        b.probability = static_cast<double>(entry.first) / static_cast<double>(shots);
        b.residual = entry.second;
        b.byproduct = byproduct(outcomes);
        branches.push_back(std::move(b));
    }
    DensityMatrix out = aggregate_branches(branches);
    return {out, branches};
}

PatternResult run(const StateVector &resource, const std::vector<Step> &steps, const ByproductRule &byproduct,
                  const PatternMode &mode) {
    if (std::holds_alternative<PatternBranchMode>(mode)) {
        return run_branches(resource, steps, byproduct);
    }
    const auto &s = std::get<PatternSampleMode>(mode);
    return run_samples(resource, steps, byproduct, s.seed, s.shots);
}

double signed_angle(double angle, uint8_t s) {
    return s ? -angle : angle;
}

}  // namespace

PatternResult run_single_qubit_pattern(double alpha, double beta, double gamma, const PatternMode &mode) {
    return run_single_qubit_pattern(build_graph_state(GraphSpec::linear_cluster(4)), alpha, beta, gamma, mode);
}

PatternResult run_single_qubit_pattern(
    const StateVector &resource, double alpha, double beta, double gamma, const PatternMode &mode) {
    if (resource.num_qubits() != 4) {
        throw std::invalid_argument("single-qubit pattern needs a four-qubit resource");
    }
    // Each measurement removes the front qubit, so the next one is index 0.
    std::vector<Step> steps = {
        {0, [alpha](const std::vector<uint8_t> &) { return MeasurementBasis::equatorial(alpha); }},
        {0, [beta](const std::vector<uint8_t> &s) { return MeasurementBasis::equatorial(signed_angle(beta, s[0])); }},
        {0,
         [gamma](const std::vector<uint8_t> &s) { return MeasurementBasis::equatorial(signed_angle(gamma, s[1])); }},
    };
    ByproductRule rule = [](const std::vector<uint8_t> &s) { return x_pow_z_pow((s[0] + s[2]) % 2, s[1]); };
    return run(resource, steps, rule, mode);
}

PatternResult run_two_qubit_pattern(double alpha, double beta, const PatternMode &mode) {
    StateVector resource = build_graph_state(GraphSpec::linear_cluster(4));
    // After qubit 0 is removed, original qubit 3 sits at index 2.
    std::vector<Step> steps = {
        {0, [alpha](const std::vector<uint8_t> &) { return MeasurementBasis::equatorial(alpha); }},
        {2, [beta](const std::vector<uint8_t> &) { return MeasurementBasis::equatorial(beta); }},
    };
    ByproductRule rule = [](const std::vector<uint8_t> &s) {
        PauliString a = x_pow_z_pow(s[0], s[1]);
        PauliString b = x_pow_z_pow(s[1], s[0]);
        return PauliString({a[0], b[0]}, a.phase_exponent() + b.phase_exponent());
    };
    return run(resource, steps, rule, mode);
}

Mat2 equivalent_circuit_single(double alpha, double beta, double gamma) {
    Mat2 h = gates::hadamard();
    return h * gates::phase(-gamma) * h * gates::phase(-beta) * h * gates::phase(-alpha);
}

CMatrix equivalent_circuit_two(double alpha, double beta) {
    Mat2 h = gates::hadamard();
    CMatrix a = h * gates::phase(-alpha);
    CMatrix b = h * gates::phase(-beta);
    return gates::cz() * kron(a, b);
}

StateVector oracle_output_single(double alpha, double beta, double gamma) {
    return StateVector(1, equivalent_circuit_single(alpha, beta, gamma) * StateVector::plus(1).amplitudes());
}

StateVector oracle_output_two(double alpha, double beta) {
    return StateVector(2, equivalent_circuit_two(alpha, beta) * StateVector::plus(2).amplitudes());
}

DensityMatrix aggregate_branches(const std::vector<BranchRecord> &branches) {
    if (branches.empty()) {
        throw std::invalid_argument("no branches to aggregate");
    }
    double total = 0;
    std::optional<CMatrix> acc;
    size_t n = 0;
    for (const BranchRecord &b : branches) {
        total += b.probability;
        if (b.probability <= 0) {
            continue;
        }
        if (!b.residual.has_value()) {
            throw std::invalid_argument("branch with nonzero probability has no residual state");
        }
        DensityMatrix rho = std::holds_alternative<StateVector>(*b.residual)
                                ? DensityMatrix(std::get<StateVector>(*b.residual))
                                : std::get<DensityMatrix>(*b.residual);
        if (b.byproduct.size() != 0) {
            rho = apply_pauli(rho, b.byproduct);
        }
        if (!acc.has_value()) {
            acc = b.probability * rho.matrix();
            n = rho.num_qubits();
        } else {
            if (rho.num_qubits() != n) {
                throw std::invalid_argument("branches have different output sizes");
            }
            *acc += b.probability * rho.matrix();
        }
    }
    if (std::abs(total - 1) > 1e-8) {
        throw std::invalid_argument("branch probabilities sum to " + std::to_string(total) + ", expected 1");
    }
    return DensityMatrix(n, *acc / total);
}

PatternResult run_z_deletion(const GraphSpec &g, size_t vertex) {
    StateVector state = build_graph_state(g);
    std::vector<BranchRecord> branches = measure(state, vertex, MeasurementBasis::z(), BranchMode{});
    size_t rest = g.num_vertices() - 1;
    for (BranchRecord &b : branches) {
        PauliString p(rest);
        if (b.outcomes[0] == 1) {
            for (size_t nb : g.neighbors(vertex)) {
                p = p.with_letter(nb - (nb > vertex), Pauli::Z);
            }
        }
        b.byproduct = p;
    }
    DensityMatrix out = aggregate_branches(branches);
    return {out, branches};
}

}  // namespace ionmbqc
