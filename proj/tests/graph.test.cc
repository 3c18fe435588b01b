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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "ionmbqc/graph.h"
#include "ionmbqc/quantum_ops.h"
#include "oracle.h"

using namespace ionmbqc;

namespace {

oracle::V oracle_state(const GraphSpec &g) {
    return oracle::graph_state(g.num_vertices(), g.edges());
}

std::vector<GraphSpec> table_families() {
    return {GraphSpec::linear_cluster(4), GraphSpec::ring_cluster(4), GraphSpec::error_correction(1),
            GraphSpec::error_correction(3), GraphSpec::error_correction(5)};
}

}  // namespace

TEST(Family, ParseAndName) {
    EXPECT_EQ(Family::parse("LC4"), Family::lc(4));
    EXPECT_EQ(Family::parse("EC", 5), Family::ec(5));
    EXPECT_EQ(Family::parse("EC_3"), Family::ec(3));
    EXPECT_EQ(Family::parse("ghz5").name(), "GHZ5");
    EXPECT_EQ(Family::parse("EC3LC").name(), "EC3LC");
    EXPECT_EQ(Family::ec(5).num_qubits(), 7u);
    EXPECT_THROW(Family::parse("XY4"), std::invalid_argument);
    EXPECT_THROW(Family::parse("EC"), std::invalid_argument);
    EXPECT_THROW(Family::parse("LC4", 5), std::invalid_argument);
}

TEST(GraphSpec, FamiliesHaveExpectedEdges) {
    GraphSpec lc = GraphSpec::linear_cluster(4);
    EXPECT_EQ(lc.edges().size(), 3u);
    EXPECT_TRUE(lc.has_edge(2, 1));
    GraphSpec rc = GraphSpec::ring_cluster(4);
    EXPECT_TRUE(rc.has_edge(0, 3));
    GraphSpec ec = GraphSpec::error_correction(3);
    EXPECT_EQ(ec.num_vertices(), 5u);
    EXPECT_EQ(ec.neighbors(0), (std::vector<size_t>{1, 2, 3}));
    EXPECT_EQ(ec.neighbors(4), (std::vector<size_t>{1, 2, 3}));
    GraphSpec ghz = GraphSpec::ghz(4);
    EXPECT_EQ(ghz.neighbors(0).size(), 3u);
    EXPECT_THROW(GraphSpec(3, {{0, 0}}), std::invalid_argument);
    EXPECT_THROW(GraphSpec(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    EXPECT_THROW(GraphSpec(3, {{0, 5}}), std::out_of_range);
}

TEST(GraphSpec, GraphStateMatchesClosedForm) {
    for (const GraphSpec &g : table_families()) {
        EXPECT_NEAR(oracle::fidelity(build_graph_state(g).amplitudes(), oracle_state(g)), 1, 1e-12) << g.name();
    }
}

TEST(GraphSpec, EdgeOrderDoesNotChangeTheState) {
    GraphSpec g = GraphSpec::ring_cluster(4);
    std::vector<Edge> rev(g.edges().rbegin(), g.edges().rend());
    GraphSpec h = g.with_edge_order(rev);
    EXPECT_TRUE(g.same_edges(h));
    EXPECT_NEAR((build_graph_state(g).amplitudes() - build_graph_state(h).amplitudes()).norm(), 0, 1e-14);
}

TEST(GraphSpec, StateIsEigenstateOfEveryGenerator) {
    for (const GraphSpec &g : table_families()) {
        StateVector s = build_graph_state(g);
        for (size_t a = 0; a < g.num_vertices(); a++) {
            PauliString k = stabilizer_generator(g, a);
            EXPECT_NEAR(expectation(s, k).real(), 1, 1e-12) << g.name() << " K" << a;
        }
    }
}

TEST(GraphSpec, FileRoundTrip) {
    GraphSpec g = GraphSpec::error_correction(3);
    std::stringstream ss;
    write_graph(ss, g);
    GraphSpec back = read_graph(ss, Family::ec(3));
    EXPECT_TRUE(back.same_edges(g));
    EXPECT_EQ(back.family(), Family::ec(3));
    std::istringstream bad("3\n0 1 2\n");
    EXPECT_THROW(read_graph(bad), std::invalid_argument);
    std::istringstream comments("# header\n3\n\n0 1\n# x\n1 2\n");
    EXPECT_EQ(read_graph(comments).edges().size(), 2u);
}

TEST(Stabilizers, LinearClusterGroupHasSixteenSignedTerms) {
    std::set<std::string> want = {"+IIII", "+XZII", "+ZXZI", "+IZXZ", "+IIZX", "+YYZI", "+XIXZ", "+XZZX",
                                  "+ZYYZ", "+ZXIX", "+IZYY", "-ZYXY", "+XIYY", "+YYIX", "-YXYZ", "+YXXY"};
    std::set<std::string> got;
    for (const PauliString &p : stabilizer_group(GraphSpec::linear_cluster(4)).group()) {
        got.insert(p.str());
    }
    EXPECT_EQ(got, want);
}

TEST(Stabilizers, GeneratorsMustCommute) {
    EXPECT_THROW(StabilizerSet({PauliString::parse("XI"), PauliString::parse("ZI")}), std::invalid_argument);
}

TEST(Bell, IdealStatesReachOneAndViolateTheCitedBounds) {
    for (const GraphSpec &g : table_families()) {
        BellReport r = bell_expectation(build_graph_state(g), g);
        EXPECT_NEAR(r.expectation, 1, 1e-10) << g.name();
        EXPECT_TRUE(r.violated);
        EXPECT_DOUBLE_EQ(r.lhv_bound, g.num_vertices() == 7 ? 0.625 : 0.75);
    }
}

TEST(Bell, MaximallyMixedGivesInverseDimension) {
    GraphSpec g = GraphSpec::linear_cluster(4);
    BellReport r = bell_expectation(DensityMatrix::maximally_mixed(4), g);
    EXPECT_NEAR(r.expectation, 1.0 / 16, 1e-14);
    EXPECT_FALSE(r.violated);
}

TEST(Bell, BoundsAreOnlyCitedForKnownGraphs) {
    EXPECT_DOUBLE_EQ(lhv_bound(GraphSpec::linear_cluster(3)), 0.75);
    EXPECT_DOUBLE_EQ(lhv_bound(GraphSpec::error_correction_lc3()), 0.75);
    EXPECT_THROW(lhv_bound(GraphSpec::linear_cluster(6)), std::invalid_argument);
    EXPECT_THROW(lhv_bound(GraphSpec(3, {{0, 1}})), std::invalid_argument);
}

TEST(Bell, OperatorEqualsGraphProjectorUpToSevenQubits) {
    std::vector<GraphSpec> graphs = table_families();
    graphs.push_back(GraphSpec::linear_cluster(7));
    graphs.push_back(GraphSpec::ghz(6));
    graphs.push_back(GraphSpec::ring_cluster(5));
    for (const GraphSpec &g : graphs) {
        CMatrix b = bell_operator(g);
        oracle::M proj = oracle::projector(oracle_state(g));
        EXPECT_NEAR((b - proj).cwiseAbs().maxCoeff(), 0, 1e-10) << g.name();
    }
}

TEST(Bell, MeanEqualsFidelityForMixedStates) {
    GraphSpec g = GraphSpec::ring_cluster(4);
    DensityMatrix rho(build_graph_state(g));
    for (size_t q = 0; q < 4; q++) {
        rho = apply_channel(rho, Channel::depolarize(0.1, q));
    }
    EXPECT_NEAR(bell_mean(rho, g), fidelity(rho, build_graph_state(g)), 1e-12);
}
