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

#include "ionmbqc/clifford.h"

#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ionmbqc/quantum_ops.h"

namespace ionmbqc {

namespace {

Mat2 factor_matrix(CliffordFactor f) {
    switch (f) {
        case CliffordFactor::H:
            return gates::hadamard();
        case CliffordFactor::X:
            return gates::pauli_x();
        case CliffordFactor::Z:
            return gates::pauli_z();
        case CliffordFactor::XQuarterPlus:
            return gates::rx(-kPi / 2);
        case CliffordFactor::XQuarterMinus:
            return gates::rx(kPi / 2);
    }
    throw std::logic_error("bad factor");
}

const char *factor_token(CliffordFactor f) {
    switch (f) {
        case CliffordFactor::H:
            return "H";
        case CliffordFactor::X:
            return "X";
        case CliffordFactor::Z:
            return "Z";
        case CliffordFactor::XQuarterPlus:
            return "E+";
        case CliffordFactor::XQuarterMinus:
            return "E-";
    }
    return "?";
}

// Phase-free key for a 2x2 unitary.
std::string phase_free_key(const Mat2 &m) {
    Complex ref = 0;
    for (int i = 0; i < 4; i++) {
        if (std::abs(m(i / 2, i % 2)) > 1e-6) {
            ref = m(i / 2, i % 2);
            break;
        }
    }
    Mat2 n = m * (std::abs(ref) / ref);
    std::ostringstream ss;
    for (int i = 0; i < 4; i++) {
        Complex c = n(i / 2, i % 2);
        ss << std::lround(c.real() * 1e6) << "," << std::lround(c.imag() * 1e6) << ";";
    }
    return ss.str();
}

PauliString conjugate_setting(const PauliString &setting, const CorrectionTable &t, bool dagger_first) {
    if (setting.size() != t.size()) {
        throw std::invalid_argument("setting length does not match correction table");
    }
    std::vector<Pauli> letters;
    unsigned phase = setting.phase_exponent();
    for (size_t q = 0; q < t.size(); q++) {
        Mat2 u = t[q].matrix();
        // conjugate_pauli computes u p u^dag.
        auto img = conjugate_pauli(dagger_first ? Mat2(u.adjoint()) : u, setting[q]);
        if (!img.has_value()) {
            throw std::logic_error("correction table entry is not Clifford");
        }
        letters.push_back(img->letter);
        if (img->sign < 0) {
            phase += 2;
        }
    }
    return PauliString(std::move(letters), phase);
}

}  // namespace

LocalUnitary LocalUnitary::parse(std::string_view text) {
    std::istringstream ss{std::string(text)};
    std::string tok;
    std::vector<CliffordFactor> fs;
    while (ss >> tok) {
        if (tok == "I") {
            continue;
        } else if (tok == "H") {
            fs.push_back(CliffordFactor::H);
        } else if (tok == "X") {
            fs.push_back(CliffordFactor::X);
        } else if (tok == "Z") {
            fs.push_back(CliffordFactor::Z);
        } else if (tok == "E+") {
            fs.push_back(CliffordFactor::XQuarterPlus);
        } else if (tok == "E-") {
            fs.push_back(CliffordFactor::XQuarterMinus);
        } else {
            throw std::invalid_argument("unknown correction factor '" + tok + "'");
        }
    }
    return LocalUnitary(std::move(fs));
}

Mat2 LocalUnitary::matrix() const {
    Mat2 m = Mat2::Identity();
    for (CliffordFactor f : factors_) {
        m = m * factor_matrix(f);
    }
    return m;
}

std::string LocalUnitary::str() const {
    if (factors_.empty()) {
        return "I";
    }
    std::string s;
    for (CliffordFactor f : factors_) {
        if (!s.empty()) {
            s += " ";
        }
        s += factor_token(f);
    }
    return s;
}

std::optional<SignedPauli> conjugate_pauli(const Mat2 &u, Pauli p) {
    if (p == Pauli::I) {
        return SignedPauli{Pauli::I, 1};
    }
    Mat2 img = u * pauli_matrix(p) * u.adjoint();
    for (Pauli l : {Pauli::X, Pauli::Y, Pauli::Z}) {
        Complex c = (pauli_matrix(l) * img).trace() / 2.0;
        for (int sign : {1, -1}) {
            if (std::abs(c - static_cast<double>(sign)) < 1e-9) {
                return SignedPauli{l, sign};
            }
        }
    }
    return std::nullopt;
}

bool is_clifford(const Mat2 &u, double tol) {
    if (!is_unitary(u, tol)) {
        return false;
    }
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        if (!conjugate_pauli(u, p).has_value()) {
            return false;
        }
    }
    return true;
}

const std::vector<LocalUnitary> &single_qubit_cliffords() {
    static const std::vector<LocalUnitary> all = [] {
        const CliffordFactor gens[] = {
            CliffordFactor::H,
            CliffordFactor::X,
            CliffordFactor::Z,
            CliffordFactor::XQuarterPlus,
            CliffordFactor::XQuarterMinus,
        };
        std::vector<LocalUnitary> out;
        std::map<std::string, size_t> seen;
        std::deque<LocalUnitary> queue{LocalUnitary()};
        seen[phase_free_key(Mat2::Identity())] = 0;
        out.push_back(LocalUnitary());
        while (!queue.empty()) {
            LocalUnitary w = queue.front();
            queue.pop_front();
            for (CliffordFactor g : gens) {
                std::vector<CliffordFactor> fs = w.factors();
                fs.push_back(g);
                LocalUnitary next(fs);
                std::string key = phase_free_key(next.matrix());
                if (seen.count(key)) {
                    continue;
                }
                seen[key] = out.size();
                out.push_back(next);
                queue.push_back(next);
            }
        }
        if (out.size() != 24) {
            throw std::logic_error("single-qubit Clifford enumeration did not find 24 elements");
        }
        return out;
    }();
    return all;
}

CorrectionTable::CorrectionTable(std::vector<LocalUnitary> ops) : ops_(std::move(ops)) {
}

CorrectionTable CorrectionTable::identity(size_t n) {
    return CorrectionTable(std::vector<LocalUnitary>(n));
}

bool CorrectionTable::is_clifford() const {
    for (const LocalUnitary &u : ops_) {
        if (!ionmbqc::is_clifford(u.matrix())) {
            return false;
        }
    }
    return true;
}

CorrectionTable standard_correction_table(const Family &family) {
    auto table = [](std::initializer_list<const char *> words) {
        std::vector<LocalUnitary> ops;
        for (const char *w : words) {
            ops.push_back(LocalUnitary::parse(w));
        }
        return CorrectionTable(std::move(ops));
    };
    switch (family.kind) {
        case FamilyKind::LinearCluster:
            if (family.size == 4) {
                // Third entry must be "H Z"; "H X" leaves a Z frame behind.
                return table({"H Z E-", "H Z X", "H Z", "H E-"});
            }
            break;
        case FamilyKind::RingCluster:
            if (family.size == 4) {
                return table({"H X Z", "H X", "H X", "H X Z"});
            }
            break;
        case FamilyKind::ErrorCorrection: {
            if (family.size == 2) {
                // Ring order A, C1, B, C2.
                return table({"H X Z", "H X", "H X Z", "H X"});
            }
            std::vector<LocalUnitary> ops;
            ops.push_back(LocalUnitary::parse("H E+ Z"));
            for (size_t i = 0; i < family.size; i++) {
                ops.push_back(LocalUnitary::parse("H"));
            }
            ops.push_back(LocalUnitary::parse("H E+ Z"));
            return CorrectionTable(std::move(ops));
        }
        default:
            break;
    }
    throw std::invalid_argument("no standard correction table for " + family.name());
}

StateVector apply_correction_table(const StateVector &state, const CorrectionTable &t) {
    if (t.size() != state.num_qubits()) {
        throw std::invalid_argument("correction table length does not match state");
    }
    StateVector s = state;
    for (size_t q = 0; q < t.size(); q++) {
        if (!t[q].factors().empty()) {
            s = apply_gate(s, t[q].matrix(), q);
        }
    }
    return s;
}

DensityMatrix apply_correction_table(const DensityMatrix &rho, const CorrectionTable &t) {
    if (t.size() != rho.num_qubits()) {
        throw std::invalid_argument("correction table length does not match state");
    }
    DensityMatrix r = rho;
    for (size_t q = 0; q < t.size(); q++) {
        if (!t[q].factors().empty()) {
            r = apply_gate(r, t[q].matrix(), q);
        }
    }
    return r;
}

PauliString reinterpret_pauli_setting(const PauliString &setting, const CorrectionTable &t) {
    return conjugate_setting(setting, t, true);
}

PauliString conjugate_setting_forward(const PauliString &setting, const CorrectionTable &t) {
    return conjugate_setting(setting, t, false);
}

std::optional<CorrectionTable> find_lc_equivalence(const GraphSpec &from, const GraphSpec &to) {
    size_t n = from.num_vertices();
    if (to.num_vertices() != n) {
        throw std::invalid_argument("graphs have different vertex counts");
    }
    if (n > 6) {
        throw std::invalid_argument("local Clifford search is limited to 6 qubits");
    }
    const auto &cliffords = single_qubit_cliffords();
    size_t nc = cliffords.size();

    // images[c][p] = (letter, sign) of U_c p U_c^dag.
    std::vector<std::array<SignedPauli, 4>> images(nc);
    for (size_t c = 0; c < nc; c++) {
        Mat2 u = cliffords[c].matrix();
        for (int p = 0; p < 4; p++) {
            images[c][p] = *conjugate_pauli(u, static_cast<Pauli>(p));
        }
    }

    std::vector<size_t> pow4(n + 1, 1);
    for (size_t q = 1; q <= n; q++) {
        pow4[q] = pow4[q - 1] * 4;
    }
    // Signed membership table of S(to), indexed by letters in base 4.
    std::vector<int8_t> member(pow4[n], 0);
    for (const PauliString &s : stabilizer_group(to).group()) {
        size_t code = 0;
        for (size_t q = 0; q < n; q++) {
            code += static_cast<size_t>(s[q]) * pow4[q];
        }
        member[code] = static_cast<int8_t>(s.sign());
    }
    std::vector<PauliString> gens = stabilizer_group(from).generators();

    std::vector<size_t> idx(n, 0);
    while (true) {
        bool ok = true;
        for (const PauliString &k : gens) {
            size_t code = 0;
            int sign = 1;
            for (size_t q = 0; q < n; q++) {
                const SignedPauli &sp = images[idx[q]][static_cast<int>(k[q])];
                code += static_cast<size_t>(sp.letter) * pow4[q];
                sign *= sp.sign;
            }
            if (member[code] != sign) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<LocalUnitary> ops;
            for (size_t q = 0; q < n; q++) {
                ops.push_back(cliffords[idx[q]]);
            }
            return CorrectionTable(std::move(ops));
        }
        size_t q = 0;
        while (q < n && ++idx[q] == nc) {
            idx[q] = 0;
            q++;
        }
        if (q == n) {
            return std::nullopt;
        }
    }
}

std::optional<CorrectionTable> find_star_correction(
    const StateVector &from, const StateVector &to, size_t center, double tol) {
    size_t n = from.num_qubits();
    if (to.num_qubits() != n || center >= n) {
        throw std::invalid_argument("find_star_correction: bad arguments");
    }
    const auto &cliffords = single_qubit_cliffords();
    for (const LocalUnitary &c : cliffords) {
        StateVector partial = c.factors().empty() ? from : apply_gate(from, c.matrix(), center);
        for (const LocalUnitary &l : cliffords) {
            StateVector s = partial;
            if (!l.factors().empty()) {
                for (size_t q = 0; q < n; q++) {
                    if (q != center) {
                        s = apply_gate(s, l.matrix(), q);
                    }
                }
            }
            if (fidelity(s, to) >= 1 - tol) {
                std::vector<LocalUnitary> ops(n, l);
                ops[center] = c;
                return CorrectionTable(std::move(ops));
            }
        }
    }
    return std::nullopt;
}

GraphSpec local_complement(const GraphSpec &g, size_t v) {
    std::vector<size_t> nb = g.neighbors(v);
    size_t n = g.num_vertices();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const Edge &e : g.edges()) {
        adj[e.first][e.second] = adj[e.second][e.first] = true;
    }
    for (size_t i = 0; i < nb.size(); i++) {
        for (size_t j = i + 1; j < nb.size(); j++) {
            size_t a = nb[i], b = nb[j];
            adj[a][b] = adj[b][a] = !adj[a][b];
        }
    }
    std::vector<Edge> edges;
    for (size_t a = 0; a < n; a++) {
        for (size_t b = a + 1; b < n; b++) {
            if (adj[a][b]) {
                edges.emplace_back(a, b);
            }
        }
    }
    return GraphSpec(n, edges);
}

}  // namespace ionmbqc
