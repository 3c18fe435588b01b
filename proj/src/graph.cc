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

#include "ionmbqc/graph.h"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ionmbqc {

namespace {

Edge normalized(Edge e) {
    if (e.first > e.second) {
        std::swap(e.first, e.second);
    }
    return e;
}

std::string upper(std::string_view s) {
    std::string r;
    for (char c : s) {
        if (c != '_' && c != ' ') {
            r.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
    }
    return r;
}

size_t parse_size(const std::string &digits, const std::string &text) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        })) {
        throw std::invalid_argument("cannot parse graph family '" + text + "'");
    }
    return static_cast<size_t>(std::stoul(digits));
}

}  // namespace

std::string Family::name() const {
    switch (kind) {
        case FamilyKind::LinearCluster:
            return "LC" + std::to_string(size);
        case FamilyKind::RingCluster:
            return "RC" + std::to_string(size);
        case FamilyKind::ErrorCorrection:
            return "EC" + std::to_string(size);
        case FamilyKind::ErrorCorrectionLc:
            return "EC3LC";
        case FamilyKind::Ghz:
            return "GHZ" + std::to_string(size);
        case FamilyKind::Custom:
            break;
    }
    return "custom";
}

Family Family::parse(std::string_view text, std::optional<size_t> size) {
    std::string t = upper(text);
    if (t == "EC3LC") {
        return {FamilyKind::ErrorCorrectionLc, 3};
    }
    static const std::pair<const char *, FamilyKind> prefixes[] = {
        {"GHZ", FamilyKind::Ghz},
        {"LC", FamilyKind::LinearCluster},
        {"RC", FamilyKind::RingCluster},
        {"EC", FamilyKind::ErrorCorrection},
    };
    for (const auto &[prefix, kind] : prefixes) {
        std::string p = prefix;
        if (t.rfind(p, 0) != 0) {
            continue;
        }
        std::string rest = t.substr(p.size());
        size_t n;
        if (rest.empty()) {
            if (!size.has_value()) {
                throw std::invalid_argument("graph family '" + std::string(text) + "' needs a size");
            }
            n = *size;
        } else {
            n = parse_size(rest, std::string(text));
            if (size.has_value() && *size != n) {
                throw std::invalid_argument("conflicting sizes for graph family '" + std::string(text) + "'");
            }
        }
        Family f{kind, n};
        // Validates the size.
        (void)f.num_qubits();
        return f;
    }
    throw std::invalid_argument("unknown graph family '" + std::string(text) + "'");
}

size_t Family::num_qubits() const {
    size_t q = 0;
    switch (kind) {
        case FamilyKind::LinearCluster:
        case FamilyKind::RingCluster:
        case FamilyKind::Ghz:
            q = size;
            break;
        case FamilyKind::ErrorCorrection:
            q = size + 2;
            break;
        case FamilyKind::ErrorCorrectionLc:
            q = 5;
            break;
        case FamilyKind::Custom:
            throw std::invalid_argument("custom graphs have no implied size");
    }
    size_t min_size = kind == FamilyKind::RingCluster ? 3 : (kind == FamilyKind::ErrorCorrection ? 1 : 2);
    if (size < min_size || q > kMaxQubits) {
        throw std::invalid_argument("unsupported size " + std::to_string(size) + " for family " + name());
    }
    return q;
}

GraphSpec::GraphSpec(size_t num_vertices, std::vector<Edge> edges, Family family)
    : n_(num_vertices), family_(family) {
    if (num_vertices == 0 || num_vertices > kMaxQubits) {
        throw std::invalid_argument("graph must have 1.." + std::to_string(kMaxQubits) + " vertices");
    }
    std::set<Edge> seen;
    for (Edge e : edges) {
        e = normalized(e);
        if (e.first == e.second) {
            throw std::invalid_argument("self-loop on vertex " + std::to_string(e.first));
        }
        if (e.second >= n_) {
            throw std::out_of_range("edge references vertex " + std::to_string(e.second) + " of a " +
                                    std::to_string(n_) + "-vertex graph");
        }
        if (!seen.insert(e).second) {
            throw std::invalid_argument(
                "duplicate edge " + std::to_string(e.first) + "-" + std::to_string(e.second));
        }
        edges_.push_back(e);
    }
}

GraphSpec GraphSpec::for_family(const Family &family) {
    switch (family.kind) {
        case FamilyKind::LinearCluster:
            return linear_cluster(family.size);
        case FamilyKind::RingCluster:
            return ring_cluster(family.size);
        case FamilyKind::ErrorCorrection:
            return error_correction(family.size);
        case FamilyKind::ErrorCorrectionLc:
            return error_correction_lc3();
        case FamilyKind::Ghz:
            return ghz(family.size);
        case FamilyKind::Custom:
            break;
    }
    throw std::invalid_argument("custom graphs need an explicit edge list");
}

GraphSpec GraphSpec::linear_cluster(size_t n) {
    Family f = Family::lc(n);
    f.num_qubits();
    std::vector<Edge> e;
    for (size_t i = 0; i + 1 < n; i++) {
        e.emplace_back(i, i + 1);
    }
    return GraphSpec(n, e, f);
}

GraphSpec GraphSpec::ring_cluster(size_t n) {
    Family f = Family::rc(n);
    f.num_qubits();
    std::vector<Edge> e;
    for (size_t i = 0; i < n; i++) {
        e.emplace_back(i, (i + 1) % n);
    }
    return GraphSpec(n, e, f);
}

GraphSpec GraphSpec::error_correction(size_t n) {
    Family f = Family::ec(n);
    size_t q = f.num_qubits();
    std::vector<Edge> e;
    for (size_t i = 1; i <= n; i++) {
        e.emplace_back(0, i);
        e.emplace_back(i, q - 1);
    }
    return GraphSpec(q, e, f);
}

GraphSpec GraphSpec::error_correction_lc3() {
    // Vertices keep the EC_3 roles: A=0, C1..C3=1..3, B=4.
    return GraphSpec(5, {{1, 0}, {1, 2}, {1, 3}, {0, 4}}, Family{FamilyKind::ErrorCorrectionLc, 3});
}

GraphSpec GraphSpec::ghz(size_t n) {
    Family f = Family::ghz(n);
    f.num_qubits();
    std::vector<Edge> e;
    for (size_t i = 1; i < n; i++) {
        e.emplace_back(0, i);
    }
    return GraphSpec(n, e, f);
}

std::string GraphSpec::name() const {
    return family_.name();
}

bool GraphSpec::has_edge(size_t a, size_t b) const {
    Edge e = normalized({a, b});
    return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

std::vector<size_t> GraphSpec::neighbors(size_t v) const {
    if (v >= n_) {
        throw std::out_of_range("vertex out of range");
    }
    std::vector<size_t> r;
    for (const Edge &e : edges_) {
        if (e.first == v) {
            r.push_back(e.second);
        } else if (e.second == v) {
            r.push_back(e.first);
        }
    }
    std::sort(r.begin(), r.end());
    return r;
}

bool GraphSpec::same_edges(const GraphSpec &other) const {
    if (n_ != other.n_ || edges_.size() != other.edges_.size()) {
        return false;
    }
    std::set<Edge> a(edges_.begin(), edges_.end());
    std::set<Edge> b(other.edges_.begin(), other.edges_.end());
    return a == b;
}

GraphSpec GraphSpec::with_edge_order(const std::vector<Edge> &order) const {
    GraphSpec g(n_, order, family_);
    if (!g.same_edges(*this)) {
        throw std::invalid_argument("edge order is not a permutation of the edge set");
    }
    return g;
}

GraphSpec GraphSpec::without_vertex(size_t v) const {
    if (v >= n_ || n_ < 2) {
        throw std::out_of_range("cannot remove vertex");
    }
    std::vector<Edge> e;
    for (const Edge &x : edges_) {
        if (x.first == v || x.second == v) {
            continue;
        }
        e.emplace_back(x.first - (x.first > v), x.second - (x.second > v));
    }
    return GraphSpec(n_ - 1, e);
}

GraphSpec read_graph(std::istream &in, Family family) {
    std::string line;
    std::optional<size_t> n;
    std::vector<Edge> edges;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream ss(line);
        long long a, b;
        std::string extra;
        if (!n.has_value()) {
            if (!(ss >> a) || (ss >> extra) || a <= 0) {
                throw std::invalid_argument("graph file line " + std::to_string(line_no) + ": expected vertex count");
            }
            n = static_cast<size_t>(a);
            continue;
        }
        if (!(ss >> a >> b) || (ss >> extra) || a < 0 || b < 0) {
            throw std::invalid_argument("graph file line " + std::to_string(line_no) + ": expected 'a b'");
        }
        edges.emplace_back(static_cast<size_t>(a), static_cast<size_t>(b));
    }
    if (!n.has_value()) {
        throw std::invalid_argument("graph file is empty");
    }
    return GraphSpec(*n, edges, family);
}

void write_graph(std::ostream &out, const GraphSpec &g) {
    out << g.num_vertices() << "\n";
    for (const Edge &e : g.edges()) {
        out << e.first << " " << e.second << "\n";
    }
}

StateVector build_graph_state(const GraphSpec &g) {
    size_t n = g.num_vertices();
    StateVector plus = StateVector::plus(n);
    CVector amps = plus.amplitudes();
    for (const Edge &e : g.edges()) {
        size_t mask = (size_t{1} << qubit_bit(e.first, n)) | (size_t{1} << qubit_bit(e.second, n));
        for (size_t i = 0; i < plus.dim(); i++) {
            if ((i & mask) == mask) {
                amps[static_cast<Eigen::Index>(i)] = -amps[static_cast<Eigen::Index>(i)];
            }
        }
    }
    return StateVector(n, std::move(amps));
}

PauliString stabilizer_generator(const GraphSpec &g, size_t a) {
    PauliString k = PauliString::single(g.num_vertices(), a, Pauli::X);
    for (size_t b : g.neighbors(a)) {
        k = k.with_letter(b, Pauli::Z);
    }
    return k;
}

StabilizerSet::StabilizerSet(std::vector<PauliString> generators) : generators_(std::move(generators)) {
    for (size_t i = 0; i < generators_.size(); i++) {
        for (size_t j = 0; j < i; j++) {
            if (!generators_[i].commutes_with(generators_[j])) {
                throw std::invalid_argument("stabilizer generators must commute");
            }
        }
    }
}

PauliString StabilizerSet::element(uint64_t mask) const {
    if (generators_.empty()) {
        throw std::logic_error("empty stabilizer set");
    }
    PauliString r(generators_[0].size());
    for (size_t a = 0; a < generators_.size(); a++) {
        if ((mask >> a) & 1) {
            r = r * generators_[a];
        }
    }
    return r;
}

std::vector<PauliString> StabilizerSet::group() const {
    if (generators_.size() > kMaxQubits) {
        throw std::length_error("stabilizer group too large to enumerate");
    }
    size_t count = size_t{1} << generators_.size();
    std::vector<PauliString> out;
    out.reserve(count);
    for (uint64_t m = 0; m < count; m++) {
        out.push_back(element(m));
    }
    return out;
}

StabilizerSet stabilizer_group(const GraphSpec &g) {
    std::vector<PauliString> gens;
    for (size_t a = 0; a < g.num_vertices(); a++) {
        gens.push_back(stabilizer_generator(g, a));
    }
    return StabilizerSet(std::move(gens));
}

CMatrix bell_operator(const GraphSpec &g) {
    auto group = stabilizer_group(g).group();
    size_t d = size_t{1} << g.num_vertices();
    CMatrix b = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const PauliString &s : group) {
        b += s.matrix();
    }
    return b / static_cast<double>(group.size());
}

double bell_mean(const StateVector &state, const GraphSpec &g) {
    if (state.num_qubits() != g.num_vertices()) {
        throw std::invalid_argument("state size does not match graph");
    }
    auto group = stabilizer_group(g).group();
    double t = 0;
    for (const PauliString &s : group) {
        t += expectation(state, s).real();
    }
    return t / static_cast<double>(group.size());
}

double bell_mean(const DensityMatrix &rho, const GraphSpec &g) {
    if (rho.num_qubits() != g.num_vertices()) {
        throw std::invalid_argument("state size does not match graph");
    }
    auto group = stabilizer_group(g).group();
    double t = 0;
    for (const PauliString &s : group) {
        t += expectation(rho, s).real();
    }
    return t / static_cast<double>(group.size());
}

namespace {

BellReport make_report(const GraphSpec &g, double mean) {
    BellReport r;
    r.graph = g.name();
    r.num_qubits = g.num_vertices();
    r.expectation = mean;
    r.lhv_bound = lhv_bound(g);
    r.violated = r.expectation > r.lhv_bound;
    return r;
}

}  // namespace

BellReport bell_expectation(const StateVector &state, const GraphSpec &g) {
    return make_report(g, bell_mean(state, g));
}

BellReport bell_expectation(const DensityMatrix &rho, const GraphSpec &g) {
    return make_report(g, bell_mean(rho, g));
}

double lhv_bound(const GraphSpec &g) {
    const Family &f = g.family();
    switch (f.kind) {
        case FamilyKind::LinearCluster:
            if (f.size == 3 || f.size == 4) {
                return 0.75;
            }
            break;
        case FamilyKind::RingCluster:
            if (f.size == 4) {
                return 0.75;
            }
            break;
        case FamilyKind::ErrorCorrection:
            if (f.size == 1 || f.size == 2 || f.size == 3) {
                return 0.75;
            }
            if (f.size == 5) {
                return 0.625;
            }
            break;
        case FamilyKind::ErrorCorrectionLc:
            return 0.75;
        default:
            break;
    }
    throw std::invalid_argument("no cited bound for graph " + g.name());
}

}  // namespace ionmbqc
