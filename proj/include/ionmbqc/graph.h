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

#ifndef IONMBQC_GRAPH_H
#define IONMBQC_GRAPH_H

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ionmbqc/pauli.h"
#include "ionmbqc/state.h"

namespace ionmbqc {

enum class FamilyKind {
    Custom,
    LinearCluster,    // LC_n: path 0-1-...-(n-1)
    RingCluster,      // RC_n: cycle 0-1-...-(n-1)-0
    ErrorCorrection,  // EC_n: A=0, C_i=i, B=n+1, edges A-C_i and C_i-B
    ErrorCorrectionLc,  // EC_3LC: star on C1 with leaves A, C2, C3, plus A-B
    Ghz,              // GHZ(n): star centred on qubit 0
};

struct Family {
    FamilyKind kind = FamilyKind::Custom;
    size_t size = 0;

    static Family lc(size_t n) {
        return {FamilyKind::LinearCluster, n};
    }
    static Family rc(size_t n) {
        return {FamilyKind::RingCluster, n};
    }
    static Family ec(size_t n) {
        return {FamilyKind::ErrorCorrection, n};
    }
    static Family ghz(size_t n) {
        return {FamilyKind::Ghz, n};
    }

    /// Short name: LC4, RC4, EC3, EC3LC, GHZ5, custom.
    std::string name() const;

    /// Accepts "LC4", "RC4", "EC3", "EC_3", "GHZ5", "EC3LC", or a bare
    /// family word ("EC", "GHZ", "LC", "RC") with `size` supplied separately.
    static Family parse(std::string_view text, std::optional<size_t> size = std::nullopt);

    /// Number of qubits of the family's graph.
    size_t num_qubits() const;

    bool operator==(const Family &) const = default;
};

using Edge = std::pair<size_t, size_t>;

/// Undirected simple graph. Edges keep their insertion order (normalized so
/// that first < second); duplicates are rejected.
class GraphSpec {
   public:
    GraphSpec(size_t num_vertices, std::vector<Edge> edges, Family family = {});

    static GraphSpec for_family(const Family &family);
    static GraphSpec linear_cluster(size_t n);
    static GraphSpec ring_cluster(size_t n);
    static GraphSpec error_correction(size_t n);
    static GraphSpec error_correction_lc3();
    static GraphSpec ghz(size_t n);

    size_t num_vertices() const {
        return n_;
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    const Family &family() const {
        return family_;
    }
    std::string name() const;

    bool has_edge(size_t a, size_t b) const;
    std::vector<size_t> neighbors(size_t v) const;

    /// Same vertex count and edge set (order and family ignored).
    bool same_edges(const GraphSpec &other) const;

    /// Same graph with the edge list in a different order.
    GraphSpec with_edge_order(const std::vector<Edge> &order) const;

    /// Graph with vertex v removed; remaining vertices keep their order.
    GraphSpec without_vertex(size_t v) const;

   private:
    size_t n_;
    std::vector<Edge> edges_;
    Family family_;
};

/// Edge-list text format: vertex count on the first line, then one "a b" pair
/// per line. Blank lines and lines starting with '#' are ignored.
GraphSpec read_graph(std::istream &in, Family family = {});
void write_graph(std::ostream &out, const GraphSpec &g);

/// |+>^n followed by CZ on every edge in edge-list order.
StateVector build_graph_state(const GraphSpec &g);

/// K_a = X_a prod_{b in N(a)} Z_b.
PauliString stabilizer_generator(const GraphSpec &g, size_t a);

class StabilizerSet {
   public:
    explicit StabilizerSet(std::vector<PauliString> generators);

    const std::vector<PauliString> &generators() const {
        return generators_;
    }

    /// Product of the generators selected by the bits of `mask` (bit a picks
    /// generator a), multiplied in ascending order.
    PauliString element(uint64_t mask) const;

    /// All 2^n elements, indexed by mask. Throws above kMaxQubits.
    std::vector<PauliString> group() const;

   private:
    std::vector<PauliString> generators_;
};

StabilizerSet stabilizer_group(const GraphSpec &g);

/// (1/2^n) sum_j s_j as a dense matrix.
CMatrix bell_operator(const GraphSpec &g);

struct BellReport {
    std::string graph;
    size_t num_qubits = 0;
    double expectation = 0;
    double lhv_bound = 0;
    bool violated = false;
};

/// Mean of the 2^n stabilizer expectation values.
double bell_mean(const StateVector &state, const GraphSpec &g);
double bell_mean(const DensityMatrix &rho, const GraphSpec &g);

/// Bell mean plus the cited LHV bound. Throws for graphs without one.
BellReport bell_expectation(const StateVector &state, const GraphSpec &g);
BellReport bell_expectation(const DensityMatrix &rho, const GraphSpec &g);

/// Cited local-hidden-variable bound D(G). Throws std::invalid_argument
/// ("no cited bound ...") for graphs outside the cited set.
double lhv_bound(const GraphSpec &g);

}  // namespace ionmbqc

#endif
