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

#include "ionmbqc/pulse.h"

#include <bit>
#include <charconv>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ionmbqc/quantum_ops.h"
#include "ionmbqc/simd_kernels.h"

namespace ionmbqc {

namespace {

std::string qubit_list(const std::vector<size_t> &qs) {
    std::string s;
    for (size_t i = 0; i < qs.size(); i++) {
        if (i) {
            s += ",";
        }
        s += std::to_string(qs[i]);
    }
    return s;
}

size_t parse_index(std::string_view tok, size_t line_no) {
    size_t v = 0;
    auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) {
        throw std::invalid_argument(
            "pulse program line " + std::to_string(line_no) + ": bad qubit index '" + std::string(tok) + "'");
    }
    return v;
}

std::vector<size_t> parse_list(std::string_view tok, size_t line_no) {
    std::vector<size_t> out;
    size_t start = 0;
    while (start <= tok.size()) {
        size_t comma = tok.find(',', start);
        if (comma == std::string_view::npos) {
            comma = tok.size();
        }
        out.push_back(parse_index(tok.substr(start, comma - start), line_no));
        start = comma + 1;
    }
    return out;
}

std::vector<size_t> resolve_active(const PulsePrimitive &p, const std::vector<bool> &hidden) {
    if (!p.all) {
        return p.active;
    }
    std::vector<size_t> r;
    for (size_t q = 0; q < hidden.size(); q++) {
        if (!hidden[q]) {
            r.push_back(q);
        }
    }
    return r;
}

// MS on a state: H on the active qubits turns every X_a X_b into Z_a Z_b,
// whose sum over pairs is (S^2 - m)/2 with S the sum of the +-1 eigenvalues.
void apply_ms_inplace(CVector &amps, size_t n, double theta, const std::vector<size_t> &active) {
    Mat2 h = gates::hadamard();
    size_t mask = 0;
    for (size_t q : active) {
        mask |= size_t{1} << qubit_bit(q, n);
        detail::apply_2x2_to_bit(amps.data(), n, qubit_bit(q, n), h);
    }
    auto m = static_cast<long>(active.size());
    std::vector<Complex> phase_by_ones(active.size() + 1);
    for (long k = 0; k <= m; k++) {
        long s = m - 2 * k;
        phase_by_ones[static_cast<size_t>(k)] = std::exp(-kI * (theta * static_cast<double>(s * s - m) / 2));
    }
    size_t d = size_t{1} << n;
    std::vector<Complex> diag(d);
    for (size_t i = 0; i < d; i++) {
        diag[i] = phase_by_ones[static_cast<size_t>(std::popcount(i & mask))];
    }
    simd::active_kernels().mul_diagonal(amps.data(), diag.data(), d);
    for (size_t q : active) {
        detail::apply_2x2_to_bit(amps.data(), n, qubit_bit(q, n), h);
    }
}

std::vector<size_t> all_qubits(size_t n) {
    std::vector<size_t> r(n);
    for (size_t q = 0; q < n; q++) {
        r[q] = q;
    }
    return r;
}

// Block with Z(pi) on `flips` before and after MS(theta, all), which flips the
// sign of every coupling between a flipped and an unflipped qubit.
void append_refocused(PulseSequence &seq, double theta, const std::vector<size_t> &flips) {
    for (size_t q : flips) {
        seq.append(PulsePrimitive::z(q, kPi));
    }
    seq.append(PulsePrimitive::ms(theta, all_qubits(seq.num_qubits())));
    for (size_t q : flips) {
        seq.append(PulsePrimitive::z(q, kPi));
    }
}

void append_blocks(PulseSequence &seq, size_t plain, size_t refocused, const std::vector<size_t> &flips) {
    for (size_t i = 0; i < plain; i++) {
        seq.append(PulsePrimitive::ms(kPi / 8, all_qubits(seq.num_qubits())));
    }
    for (size_t i = 0; i < refocused; i++) {
        append_refocused(seq, kPi / 8, flips);
    }
}

}  // namespace

PulsePrimitive PulsePrimitive::ms(double theta, std::vector<size_t> active) {
    PulsePrimitive p;
    p.kind = Kind::MS;
    p.theta = theta;
    p.active = std::move(active);
    return p;
}

PulsePrimitive PulsePrimitive::ms_all(double theta) {
    PulsePrimitive p = ms(theta, {});
    p.all = true;
    return p;
}

PulsePrimitive PulsePrimitive::z(size_t qubit, double theta) {
    PulsePrimitive p;
    p.kind = Kind::Z;
    p.qubit = qubit;
    p.theta = theta;
    return p;
}

PulsePrimitive PulsePrimitive::hide(size_t qubit) {
    PulsePrimitive p;
    p.kind = Kind::Hide;
    p.qubit = qubit;
    return p;
}

PulsePrimitive PulsePrimitive::unhide(size_t qubit) {
    PulsePrimitive p;
    p.kind = Kind::Unhide;
    p.qubit = qubit;
    return p;
}

PulsePrimitive PulsePrimitive::xall(double theta, std::vector<size_t> active) {
    PulsePrimitive p;
    p.kind = Kind::XAll;
    p.theta = theta;
    p.active = std::move(active);
    return p;
}

PulsePrimitive PulsePrimitive::xall_all(double theta) {
    PulsePrimitive p = xall(theta, {});
    p.all = true;
    return p;
}

PulseSequence::PulseSequence(size_t num_qubits, std::vector<PulsePrimitive> primitives)
    : num_qubits_(num_qubits), primitives_(std::move(primitives)) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("pulse sequence register size out of range");
    }
}

void PulseSequence::append(const PulsePrimitive &p) {
    primitives_.push_back(p);
}

void PulseSequence::append(const PulseSequence &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("cannot join pulse sequences of different register sizes");
    }
    primitives_.insert(primitives_.end(), other.primitives_.begin(), other.primitives_.end());
}

void PulseSequence::validate() const {
    std::vector<bool> hidden(num_qubits_, false);
    for (size_t i = 0; i < primitives_.size(); i++) {
        const PulsePrimitive &p = primitives_[i];
        std::string where = "pulse " + std::to_string(i) + ": ";
        switch (p.kind) {
            case PulsePrimitive::Kind::MS:
            case PulsePrimitive::Kind::XAll: {
                std::vector<size_t> act = resolve_active(p, hidden);
                try {
                    check_targets(act, num_qubits_);
                } catch (const std::exception &e) {
                    throw std::invalid_argument(where + e.what());
                }
                for (size_t q : act) {
                    if (hidden[q]) {
                        throw std::invalid_argument(where + "addresses hidden qubit " + std::to_string(q));
                    }
                }
                if (p.kind == PulsePrimitive::Kind::MS && act.size() < 2) {
                    throw std::invalid_argument(where + "MS needs at least two active qubits");
                }
                break;
            }
            case PulsePrimitive::Kind::Z:
                if (p.qubit >= num_qubits_) {
                    throw std::invalid_argument(where + "qubit out of range");
                }
                if (hidden[p.qubit]) {
                    throw std::invalid_argument(where + "Z rotation on hidden qubit " + std::to_string(p.qubit));
                }
                break;
            case PulsePrimitive::Kind::Hide:
                if (p.qubit >= num_qubits_) {
                    throw std::invalid_argument(where + "qubit out of range");
                }
                if (hidden[p.qubit]) {
                    throw std::invalid_argument(where + "qubit " + std::to_string(p.qubit) + " already hidden");
                }
                hidden[p.qubit] = true;
                break;
            case PulsePrimitive::Kind::Unhide:
                if (p.qubit >= num_qubits_) {
                    throw std::invalid_argument(where + "qubit out of range");
                }
                if (!hidden[p.qubit]) {
                    throw std::invalid_argument(where + "unmatched UNHIDE of qubit " + std::to_string(p.qubit));
                }
                hidden[p.qubit] = false;
                break;
        }
    }
    for (size_t q = 0; q < num_qubits_; q++) {
        if (hidden[q]) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " is still hidden at the end of the sequence");
        }
    }
}

std::string format_double(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

double parse_double(std::string_view text) {
    double v = 0;
    auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

std::string PulseSequence::to_text() const {
    std::ostringstream out;
    out << "QUBITS " << num_qubits_ << "\n";
    for (const PulsePrimitive &p : primitives_) {
        switch (p.kind) {
            case PulsePrimitive::Kind::MS:
                out << "MS " << format_double(p.theta) << " " << (p.all ? "*" : qubit_list(p.active)) << "\n";
                break;
            case PulsePrimitive::Kind::Z:
                out << "Z " << p.qubit << " " << format_double(p.theta) << "\n";
                break;
            case PulsePrimitive::Kind::Hide:
                out << "HIDE " << p.qubit << "\n";
                break;
            case PulsePrimitive::Kind::Unhide:
                out << "UNHIDE " << p.qubit << "\n";
                break;
            case PulsePrimitive::Kind::XAll:
                out << "XALL " << format_double(p.theta) << " " << (p.all ? "*" : qubit_list(p.active)) << "\n";
                break;
        }
    }
    return out.str();
}

PulseSequence PulseSequence::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    std::optional<PulseSequence> seq;
    while (std::getline(in, line)) {
        line_no++;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) {
            tok.push_back(t);
        }
        if (tok.empty() || tok[0][0] == '#') {
            continue;
        }
        auto fail = [&](const std::string &msg) {
            return std::invalid_argument("pulse program line " + std::to_string(line_no) + ": " + msg);
        };
        if (!seq.has_value()) {
            if (tok.size() != 2 || tok[0] != "QUBITS") {
                throw fail("expected 'QUBITS n' header");
            }
            seq.emplace(parse_index(tok[1], line_no));
            continue;
        }
        const std::string &op = tok[0];
        try {
            if (op == "MS" || op == "XALL") {
                if (tok.size() != 3) {
                    throw fail(op + " takes an angle and a qubit list");
                }
                double theta = parse_double(tok[1]);
                bool is_ms = op == "MS";
                if (tok[2] == "*") {
                    seq->append(is_ms ? PulsePrimitive::ms_all(theta) : PulsePrimitive::xall_all(theta));
                } else {
                    auto qs = parse_list(tok[2], line_no);
                    seq->append(is_ms ? PulsePrimitive::ms(theta, qs) : PulsePrimitive::xall(theta, qs));
                }
            } else if (op == "Z") {
                if (tok.size() != 3) {
                    throw fail("Z takes a qubit and an angle");
                }
                seq->append(PulsePrimitive::z(parse_index(tok[1], line_no), parse_double(tok[2])));
            } else if (op == "HIDE" || op == "UNHIDE") {
                if (tok.size() != 2) {
                    throw fail(op + " takes one qubit");
                }
                size_t q = parse_index(tok[1], line_no);
                seq->append(op == "HIDE" ? PulsePrimitive::hide(q) : PulsePrimitive::unhide(q));
            } else {
                throw fail("unknown primitive '" + op + "'");
            }
        } catch (const std::invalid_argument &e) {
            std::string msg = e.what();
            if (msg.rfind("pulse program line", 0) == 0) {
                throw;
            }
            throw fail(msg);
        }
    }
    if (!seq.has_value()) {
        throw std::invalid_argument("pulse program is empty");
    }
    return *seq;
}

CMatrix ms_unitary(double theta, const std::vector<size_t> &active, size_t n) {
    check_targets(active, n);
    if (active.size() < 2) {
        throw std::invalid_argument("MS needs at least two active qubits");
    }
    size_t d = size_t{1} << n;
    CMatrix u(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (size_t c = 0; c < d; c++) {
        CVector col = CVector::Zero(static_cast<Eigen::Index>(d));
        col[static_cast<Eigen::Index>(c)] = 1;
        apply_ms_inplace(col, n, theta, active);
        u.col(static_cast<Eigen::Index>(c)) = col;
    }
    return u;
}

double theta_from_physics(const PhysicalParams &p) {
    if (!(p.eta1 > 0) || !(p.omega > 0) || !(p.delta > 0) || p.n_ions == 0) {
        throw std::invalid_argument("physical parameters must be positive");
    }
    double eta_sq = p.eta1 * p.eta1 / static_cast<double>(p.n_ions);
    return kPi * eta_sq * p.omega * p.omega / (p.delta * p.delta);
}

StateVector simulate_sequence(const PulseSequence &seq, const StateVector &initial) {
    if (seq.num_qubits() != initial.num_qubits()) {
        throw std::invalid_argument("pulse sequence and state have different register sizes");
    }
    seq.validate();
    size_t n = seq.num_qubits();
    CVector amps = initial.amplitudes();
    std::vector<bool> hidden(n, false);
    for (const PulsePrimitive &p : seq.primitives()) {
        switch (p.kind) {
            case PulsePrimitive::Kind::MS:
                apply_ms_inplace(amps, n, p.theta, resolve_active(p, hidden));
                break;
            case PulsePrimitive::Kind::Z:
                detail::apply_2x2_to_bit(amps.data(), n, qubit_bit(p.qubit, n), gates::rz(p.theta));
                break;
            case PulsePrimitive::Kind::XAll:
                for (size_t q : resolve_active(p, hidden)) {
                    detail::apply_2x2_to_bit(amps.data(), n, qubit_bit(q, n), gates::rx(p.theta));
                }
                break;
            case PulsePrimitive::Kind::Hide:
                hidden[p.qubit] = true;
                break;
            case PulsePrimitive::Kind::Unhide:
                hidden[p.qubit] = false;
                break;
        }
    }
    return StateVector(n, std::move(amps));
}

PulseSequence compile_graph(const Family &family) {
    size_t n = family.num_qubits();
    PulseSequence seq(n);
    switch (family.kind) {
        case FamilyKind::Ghz:
            seq.append(PulsePrimitive::ms(kPi / 4, all_qubits(n)));
            return seq;
        case FamilyKind::LinearCluster:
            if (n != 4) {
                break;
            }
            // Entangle the middle pair with the outer ions hidden.
            seq.append(PulsePrimitive::hide(0));
            seq.append(PulsePrimitive::hide(3));
            seq.append(PulsePrimitive::ms(kPi / 4, {1, 2}));
            seq.append(PulsePrimitive::unhide(0));
            seq.append(PulsePrimitive::unhide(3));
            // Two MS(pi/8) pulses with Z(pi) on ions 0 and 1, then 0 and 2.
            seq.append(PulsePrimitive::ms(kPi / 8, all_qubits(n)));
            seq.append(PulsePrimitive::z(0, kPi));
            seq.append(PulsePrimitive::z(1, kPi));
            seq.append(PulsePrimitive::ms(kPi / 8, all_qubits(n)));
            seq.append(PulsePrimitive::z(0, kPi));
            seq.append(PulsePrimitive::z(2, kPi));
            return seq;
        case FamilyKind::RingCluster:
            if (n != 4) {
                break;
            }
            append_blocks(seq, 3, 5, {0, 2});
            return seq;
        case FamilyKind::ErrorCorrection: {
            size_t m = family.size;
            if (m == 2) {
                append_blocks(seq, 3, 5, {0, 3});
                return seq;
            }
            if (m % 2 == 0) {
                break;
            }
            // Refocusing A and B makes the A-C and C-B couplings -theta and
            // all others +theta per block.
            bool one_mod_four = m % 4 == 1;
            append_blocks(seq, one_mod_four ? 1 : 3, one_mod_four ? 3 : 1, {0, n - 1});
            return seq;
        }
        default:
            break;
    }
    throw std::invalid_argument("no pulse program for family " + family.name());
}

StateVector generated_state(const Family &family) {
    PulseSequence seq = compile_graph(family);
    return simulate_sequence(seq, StateVector::from_bits(std::string(seq.num_qubits(), '1')));
}

CorrectionTable correction_table(const Family &family) {
    if (family.kind != FamilyKind::Ghz) {
        return standard_correction_table(family);
    }
    static std::mutex mu;
    static std::map<size_t, CorrectionTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(family.size);
    if (it != cache.end()) {
        return it->second;
    }
    auto t = find_star_correction(generated_state(family), build_graph_state(GraphSpec::ghz(family.size)), 0);
    if (!t.has_value()) {
        throw std::logic_error("no local Clifford correction found for " + family.name());
    }
    cache.emplace(family.size, *t);
    return *t;
}

bool refocus_check(size_t k, double theta, size_t n, double tol) {
    if (n < 2 || k >= n) {
        throw std::invalid_argument("refocus_check: bad qubit index");
    }
    CMatrix ms = ms_unitary(theta, all_qubits(n), n);
    CMatrix zk = PauliString::single(n, k, Pauli::Z).matrix();
    CMatrix sandwich = zk * ms * zk * ms;
    std::vector<size_t> rest;
    for (size_t q = 0; q < n; q++) {
        if (q != k) {
            rest.push_back(q);
        }
    }
    size_t d = size_t{1} << n;
    CMatrix expected = rest.size() >= 2 ? ms_unitary(2 * theta, rest, n)
                                        : CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    double overlap = std::abs((expected.adjoint() * sandwich).trace()) / static_cast<double>(d);
    return std::abs(overlap - 1) <= tol;
}

PulseSequence error_implementation_block(const std::vector<size_t> &targets, double theta, size_t num_qubits) {
    if (targets.empty()) {
        throw std::invalid_argument("error block needs at least one target");
    }
    check_targets(targets, num_qubits);
    PulseSequence seq(num_qubits);
    for (int half = 0; half < 2; half++) {
        for (size_t t : targets) {
            seq.append(PulsePrimitive::z(t, kPi));
        }
        seq.append(PulsePrimitive::xall(half == 0 ? theta / 2 : -theta / 2, all_qubits(num_qubits)));
    }
    return seq;
}

}  // namespace ionmbqc
