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

#include "ionmbqc/qec.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ionmbqc {

namespace {

void require_odd(size_t n) {
    if (n == 0 || n % 2 == 0) {
        throw std::invalid_argument("code length n must be odd, got " + std::to_string(n));
    }
    if (n + 2 > kMaxQubits) {
        throw std::invalid_argument("code length n=" + std::to_string(n) + " exceeds the register limit");
    }
}

// Index of codeword qubit C_i in a register with or without A.
size_t codeword_index(const EcLayout &layout, size_t num_qubits, size_t i) {
    if (i < 1 || i > layout.n()) {
        throw std::out_of_range("error target C" + std::to_string(i) + " is not a codeword qubit");
    }
    if (num_qubits == layout.num_qubits()) {
        return i;
    }
    if (num_qubits == layout.num_qubits() - 1) {
        return i - 1;
    }
    throw std::invalid_argument("state size does not match the code layout");
}

Pauli orthogonal_correction(InputState input) {
    return (input == InputState::Zero || input == InputState::One) ? Pauli::X : Pauli::Z;
}

// Frame vector H conj(psi) that A is projected onto.
Eigen::Vector2cd frame_vector(InputState input) {
    Eigen::Vector2cd psi = input_vector(input).amplitudes();
    return gates::hadamard() * psi.conjugate();
}

double binomial(size_t n, size_t k) {
    double r = 1;
    for (size_t j = 1; j <= k; j++) {
        r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    }
    return r;
}

}  // namespace

EcLayout::EcLayout(size_t n) : n_(n) {
    require_odd(n);
}

size_t EcLayout::c(size_t i) const {
    if (i < 1 || i > n_) {
        throw std::out_of_range("codeword index out of range");
    }
    return i;
}

GraphSpec EcLayout::graph() const {
    return GraphSpec::error_correction(n_);
}

std::string input_label(InputState s) {
    switch (s) {
        case InputState::Plus:
            return "+";
        case InputState::Minus:
            return "-";
        case InputState::PlusI:
            return "+i";
        case InputState::MinusI:
            return "-i";
        case InputState::Zero:
            return "0";
        case InputState::One:
            return "1";
    }
    return "?";
}

InputState parse_input_label(const std::string &label) {
    for (InputState s : inputs_of(InputSet::Six)) {
        if (input_label(s) == label) {
            return s;
        }
    }
    throw std::invalid_argument("unknown input state '" + label + "'");
}

StateVector input_vector(InputState s) {
    double r = 1 / std::sqrt(2.0);
    Eigen::Vector2cd v;
    switch (s) {
        case InputState::Plus:
            v << r, r;
            break;
        case InputState::Minus:
            v << r, -r;
            break;
        case InputState::PlusI:
            v << r, kI * r;
            break;
        case InputState::MinusI:
            v << r, -kI * r;
            break;
        case InputState::Zero:
            v << 1, 0;
            break;
        case InputState::One:
            v << 0, 1;
            break;
    }
    return StateVector(1, v);
}

std::vector<InputState> inputs_of(InputSet set) {
    std::vector<InputState> r = {InputState::Plus, InputState::Minus, InputState::PlusI, InputState::MinusI};
    if (set == InputSet::Six) {
        r.push_back(InputState::Zero);
        r.push_back(InputState::One);
    }
    return r;
}

double ErrorSpec::flip_probability() const {
    double s = std::sin(theta / 2);
    return s * s;
}

ErrorSpec ErrorSpec::from_probability(std::vector<size_t> targets, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("flip probability must lie in [0, 1]");
    }
    return {std::move(targets), 2 * std::asin(std::sqrt(p))};
}

ErrorSpec ErrorSpec::all(size_t n, double theta) {
    ErrorSpec e;
    for (size_t i = 1; i <= n; i++) {
        e.targets.push_back(i);
    }
    e.theta = theta;
    return e;
}

StateVector build_ec_state(size_t n) {
    require_odd(n);
    size_t q = n + 2;
    size_t d = size_t{1} << q;
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(d));
    // Sum over a (A) and c (logical value); B = a xor c. |c_L> has amplitude
    // (-1)^(c * popcount(x)) / 2^(n/2) on codeword bit string x.
    double norm = std::pow(2.0, -static_cast<double>(n) / 2) / 2;
    for (size_t a = 0; a < 2; a++) {
        for (size_t c = 0; c < 2; c++) {
            size_t b = a ^ c;
            for (size_t x = 0; x < (size_t{1} << n); x++) {
                double sign = (c && (std::popcount(x) % 2)) ? -1.0 : 1.0;
                size_t index = (a << (n + 1)) | (x << 1) | b;
                amps[static_cast<Eigen::Index>(index)] += sign * norm;
            }
        }
    }
    return StateVector(q, amps);
}

MeasurementBasis encode_basis(InputState input) {
    switch (input) {
        case InputState::Plus:
        case InputState::Minus:
            return MeasurementBasis::z();
        case InputState::PlusI:
        case InputState::MinusI:
            return MeasurementBasis::y();
        case InputState::Zero:
        case InputState::One:
            return MeasurementBasis::x();
    }
    throw std::logic_error("bad input");
}

std::vector<EncodeBranch> encode_input(const DensityMatrix &state, InputState input) {
    if (state.num_qubits() < 3) {
        throw std::invalid_argument("code state needs at least three qubits");
    }
    MeasurementBasis basis = encode_basis(input);
    Eigen::Vector2cd phi = frame_vector(input);
    std::vector<EncodeBranch> out;
    for (BranchRecord &r : measure(state, 0, basis, BranchMode{})) {
        int s = r.outcomes[0];
        bool on_frame = std::abs(basis.vector(s).dot(phi)) > 0.5;
        EncodeBranch b;
        b.outcome = on_frame ? 0 : 1;
        b.probability = r.probability;
        if (r.residual.has_value()) {
            b.residual = std::get<DensityMatrix>(*r.residual);
        }
        b.correction = on_frame ? Pauli::I : orthogonal_correction(input);
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), [](const EncodeBranch &x, const EncodeBranch &y) { return x.outcome < y.outcome; });
    return out;
}

std::vector<EncodeBranch> encode_input(const StateVector &state, InputState input) {
    return encode_input(DensityMatrix(state), input);
}

StateVector inject_errors(const StateVector &state, const EcLayout &layout, const ErrorSpec &spec) {
    StateVector s = state;
    for (size_t i : spec.targets) {
        s = apply_gate(s, gates::rz(spec.theta), codeword_index(layout, state.num_qubits(), i));
    }
    return s;
}

DensityMatrix inject_errors(const DensityMatrix &state, const EcLayout &layout, const ErrorSpec &spec) {
    DensityMatrix s = state;
    for (size_t i : spec.targets) {
        s = apply_gate(s, gates::rz(spec.theta), codeword_index(layout, state.num_qubits(), i));
    }
    return s;
}

bool recovery_is_z(const std::vector<uint8_t> &syndrome) {
    if (syndrome.size() % 2 == 0) {
        throw std::invalid_argument("majority vote needs an odd number of outcomes");
    }
    size_t minus = 0;
    for (uint8_t s : syndrome) {
        minus += s != 0;
    }
    return 2 * minus > syndrome.size();
}

DecodeResult decode_and_recover(const DensityMatrix &state) {
    size_t n = state.num_qubits() - 1;
    if (state.num_qubits() < 2 || n % 2 == 0) {
        throw std::invalid_argument("decode needs an odd codeword plus the output qubit");
    }
    struct Node {
        std::vector<uint8_t> syndrome;
        double probability;
        std::optional<DensityMatrix> rho;
    };
    std::vector<Node> frontier = {{{}, 1.0, state}};
    for (size_t i = 0; i < n; i++) {
        std::vector<Node> next;
        for (Node &node : frontier) {
            if (!node.rho.has_value()) {
                for (uint8_t s : {0, 1}) {
                    Node c{node.syndrome, 0.0, std::nullopt};
                    c.syndrome.push_back(s);
                    next.push_back(std::move(c));
                }
                continue;
            }
            for (BranchRecord &r : measure(*node.rho, 0, MeasurementBasis::x(), BranchMode{})) {
                Node c{node.syndrome, node.probability * r.probability, std::nullopt};
                c.syndrome.push_back(r.outcomes[0]);
                if (c.probability > 0 && r.residual.has_value()) {
                    c.rho = std::get<DensityMatrix>(*r.residual);
                }
                next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }
    DecodeResult result{{}, DensityMatrix::maximally_mixed(1)};
    CMatrix acc = CMatrix::Zero(2, 2);
    double total = 0;
    Mat2 h = gates::hadamard();
    for (Node &node : frontier) {
        bool z = recovery_is_z(node.syndrome);
        result.branches.push_back({node.syndrome, node.probability, z});
        if (!node.rho.has_value()) {
            continue;
        }
        // X on B is Z in the logical frame.
        CMatrix m = node.rho->matrix();
        if (z) {
            m = gates::pauli_x() * m * gates::pauli_x();
        }
        acc += node.probability * (h * m * h);
        total += node.probability;
    }
    result.output = DensityMatrix(1, acc / total);
    return result;
}

std::vector<double> syndrome_distribution(const DensityMatrix &state) {
    DecodeResult d = decode_and_recover(state);
    std::vector<double> p;
    for (const SyndromeBranch &b : d.branches) {
        p.push_back(b.probability);
    }
    return p;
}

DensityMatrix teleport(
    const DensityMatrix &resource, const EcLayout &layout, InputState input, const ErrorSpec &errors,
    ErrorTiming timing) {
    if (resource.num_qubits() != layout.num_qubits()) {
        throw std::invalid_argument("resource state does not match the code layout");
    }
    DensityMatrix start = timing == ErrorTiming::BeforeEncode ? inject_errors(resource, layout, errors) : resource;
    CMatrix acc = CMatrix::Zero(2, 2);
    double total = 0;
    for (EncodeBranch &b : encode_input(start, input)) {
        if (!b.residual.has_value() || b.probability <= 0) {
            continue;
        }
        DensityMatrix r = timing == ErrorTiming::AfterEncode ? inject_errors(*b.residual, layout, errors) : *b.residual;
        CMatrix out = decode_and_recover(r).output.matrix();
        if (b.correction != Pauli::I) {
            Mat2 p = pauli_matrix(b.correction);
            out = p * out * p;
        }
        acc += b.probability * out;
        total += b.probability;
    }
    return DensityMatrix(1, acc / total);
}

double teleport_fidelity(
    const DensityMatrix &resource, const EcLayout &layout, InputState input, const ErrorSpec &errors,
    ErrorTiming timing) {
    return fidelity(teleport(resource, layout, input, errors, timing), input_vector(input));
}

AtfReport atf(size_t n, const std::vector<double> &p_grid, const std::vector<size_t> &targets, InputSet set,
              ErrorTiming timing) {
    EcLayout layout(n);
    DensityMatrix resource(build_ec_state(n));
    std::vector<size_t> tg = targets;
    if (tg.empty()) {
        tg = ErrorSpec::all(n, 0).targets;
    }
    AtfReport report{n, set, tg, {}};
    std::vector<InputState> inputs = inputs_of(set);
    for (double p : p_grid) {
        ErrorSpec e = ErrorSpec::from_probability(tg, p);
        AtfPoint pt{p, {}, 0};
        for (InputState in : inputs) {
            double f = teleport_fidelity(resource, layout, in, e, timing);
            pt.fidelities.push_back(f);
            pt.atf += f;
        }
        pt.atf /= static_cast<double>(inputs.size());
        report.points.push_back(std::move(pt));
    }
    return report;
}

double ideal_atf_curve(size_t n, double p, InputSet set) {
    return ideal_atf_curve(n, p, set, n);
}

double ideal_atf_curve(size_t n, double p, InputSet set, size_t num_targets) {
    require_odd(n);
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("flip probability must lie in [0, 1]");
    }
    if (num_targets > n) {
        throw std::invalid_argument("more error targets than codeword qubits");
    }
    size_t m = num_targets;
    double f = 0;
    for (size_t k = 0; k <= std::min(m, (n - 1) / 2); k++) {
        f += binomial(m, k) * std::pow(p, static_cast<double>(k)) * std::pow(1 - p, static_cast<double>(m - k));
    }
    return set == InputSet::Four ? f : (4 * f + 2) / 6;
}

double noise_robustness_study(size_t n, Channel::Kind channel, double strength, NoiseScope scope, InputSet set) {
    EcLayout layout(n);
    DensityMatrix resource(build_ec_state(n));
    for (size_t q = 0; q < layout.num_qubits(); q++) {
        bool codeword = q >= 1 && q <= n;
        if (scope == NoiseScope::Codeword && !codeword) {
            continue;
        }
        resource = apply_channel(resource, Channel{channel, strength, q});
    }
    ErrorSpec none = ErrorSpec::all(n, 0);
    double total = 0;
    std::vector<InputState> inputs = inputs_of(set);
    for (InputState in : inputs) {
        total += teleport_fidelity(resource, layout, in, none);
    }
    return total / static_cast<double>(inputs.size());
}

std::vector<double> linear_grid(double start, double stop, size_t points) {
    if (points == 0) {
        throw std::invalid_argument("grid needs at least one point");
    }
    if (points == 1) {
        return {start};
    }
    std::vector<double> g(points);
    for (size_t i = 0; i < points; i++) {
        g[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    g.back() = stop;
    return g;
}

}  // namespace ionmbqc
