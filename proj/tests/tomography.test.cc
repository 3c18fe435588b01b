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

#include <sstream>

#include "ionmbqc/tomography.h"
#include "oracle.h"

using namespace ionmbqc;

namespace {

DensityMatrix depolarized(const GraphSpec &g, double p) {
    DensityMatrix rho(build_graph_state(g));
    for (size_t q = 0; q < g.num_vertices(); q++) {
        rho = apply_channel(rho, Channel::depolarize(p, q));
    }
    return rho;
}

}  // namespace

TEST(Tomography, FullSettingsAreOrdered) {
    MeasurementSettings s = MeasurementSettings::full(2, 10);
    EXPECT_EQ(s.settings, (std::vector<std::string>{"XX", "XY", "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ"}));
    EXPECT_NO_THROW(s.validate());
    s.settings.push_back("XX");
    EXPECT_THROW(s.validate(), std::invalid_argument);
    EXPECT_THROW((MeasurementSettings{1, {"Q"}, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((MeasurementSettings{1, {"X"}, 0}.validate()), std::invalid_argument);
}

TEST(Tomography, SettingProbabilitiesMatchProjectors) {
    GraphSpec g = GraphSpec::linear_cluster(3);
    DensityMatrix rho = depolarized(g, 0.2);
    oracle::V plus_i(2);
    plus_i << 1 / std::sqrt(2.0), oracle::C(0, 1 / std::sqrt(2.0));
    oracle::V one_x(2);
    one_x << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    // Outcome 0 of Y, 1 of X, 0 of Z: index 0b010.
    oracle::V v = oracle::kron(oracle::kron(plus_i, one_x), oracle::basis_state("0"));
    double want = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    std::vector<double> probs = setting_probabilities(rho, "YXZ");
    ASSERT_EQ(probs.size(), 8u);
    EXPECT_NEAR(probs[2], want, 1e-12);
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    EXPECT_NEAR(total, 1, 1e-12);
    EXPECT_EQ(outcome_label(2, 3), "010");
}

TEST(Tomography, ExactReconstructionOfGraphStates) {
    std::vector<GraphSpec> graphs = {GraphSpec::ghz(3), GraphSpec::linear_cluster(4), GraphSpec::ring_cluster(4),
                                     GraphSpec::error_correction(3), GraphSpec::ghz(5)};
    for (const GraphSpec &g : graphs) {
        StateVector psi = build_graph_state(g);
        CountsTable counts = exact_counts(psi, MeasurementSettings::full(g.num_vertices(), 1000));
        ReconstructionResult r = mle_reconstruct(counts);
        EXPECT_GE(fidelity(r.rho, psi), 1 - 1e-8) << g.name();
        EXPECT_TRUE(r.converged);
    }
}

TEST(Tomography, LikelihoodNeverDecreases) {
    GraphSpec g = GraphSpec::linear_cluster(3);
    CountsTable counts = sample_counts(depolarized(g, 0.1), MeasurementSettings::full(3, 200), 5);
    ReconstructionResult r = mle_reconstruct(counts);
    ASSERT_GE(r.likelihood_trace.size(), 2u);
    for (size_t i = 1; i < r.likelihood_trace.size(); i++) {
        EXPECT_GE(r.likelihood_trace[i], r.likelihood_trace[i - 1]) << i;
    }
    EXPECT_EQ(r.likelihood_trace.back(), r.log_likelihood);
    EXPECT_GE(r.rho.min_eigenvalue(), -1e-12);
    EXPECT_NEAR(r.rho.trace(), 1, 1e-12);
}

TEST(Tomography, MaximallyMixedIsAFixedPoint) {
    CountsTable counts = exact_counts(DensityMatrix::maximally_mixed(2), MeasurementSettings::full(2, 100));
    ReconstructionResult r = mle_reconstruct(counts);
    EXPECT_NEAR((r.rho.matrix() - DensityMatrix::maximally_mixed(2).matrix()).norm(), 0, 1e-12);
}

TEST(Tomography, IncompleteSettingsAreRejected) {
    EXPECT_TRUE(is_informationally_complete(2, MeasurementSettings::full(2, 1).settings));
    EXPECT_FALSE(is_informationally_complete(2, {"XX", "YY", "ZZ"}));
    EXPECT_TRUE(is_informationally_complete(1, {"X", "Y", "Z"}));
    MeasurementSettings partial{2, {"XX", "YY", "ZZ", "XZ"}, 10};
    CountsTable counts = exact_counts(StateVector::plus(2), partial);
    EXPECT_THROW(mle_reconstruct(counts), std::invalid_argument);
}

TEST(Tomography, SamplingIsSeededAndUnbiased) {
    GraphSpec g = GraphSpec::ghz(3);
    DensityMatrix rho = depolarized(g, 0.3);
    MeasurementSettings s{3, {"XXX", "ZYX"}, 200000};
    CountsTable a = sample_counts(rho, s, 42);
    CountsTable b = sample_counts(rho, s, 42);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_NE(sample_counts(rho, s, 43).counts, a.counts);
    for (size_t k = 0; k < s.settings.size(); k++) {
        std::vector<double> p = setting_probabilities(rho, s.settings[k]);
        EXPECT_EQ(a.shots(k), 200000);
        for (size_t o = 0; o < p.size(); o++) {
            double sigma = std::sqrt(p[o] * (1 - p[o]) / 200000);
            EXPECT_NEAR(a.counts[k][o] / 200000, p[o], 5 * sigma + 1e-12);
        }
    }
    CountsTable sv = sample_counts(build_graph_state(g), s, 42);
    CountsTable dm = sample_counts(DensityMatrix(build_graph_state(g)), s, 42);
    EXPECT_EQ(sv.counts, dm.counts);
}

TEST(Tomography, CountsCsvRoundTrip) {
    CountsTable counts = sample_counts(depolarized(GraphSpec::ghz(2), 0.1), MeasurementSettings::full(2, 37), 3);
    counts.counts[0][1] = 0.1 + 0.2;
    std::stringstream ss;
    write_counts_csv(ss, counts);
    std::string text = ss.str();
    EXPECT_EQ(text.rfind("# schema=1\nsetting,outcome,count\n", 0), 0u);
    CountsTable back = read_counts_csv(ss);
    EXPECT_EQ(back.settings, counts.settings);
    EXPECT_EQ(back.counts, counts.counts);
    EXPECT_EQ(back.num_qubits, 2u);

    std::stringstream bad("setting,outcome,count\nXX,00,1\n");
    EXPECT_THROW(read_counts_csv(bad), std::invalid_argument);
    std::stringstream bad_outcome("# schema=1\nsetting,outcome,count\nXX,0a,1\n");
    EXPECT_THROW(read_counts_csv(bad_outcome), std::invalid_argument);
}

TEST(Tomography, ErrorBarsShrinkWithShots) {
    GraphSpec g = GraphSpec::ghz(3);
    DensityMatrix rho = depolarized(g, 0.1);
    auto std_at = [&](size_t shots) {
        CountsTable counts = sample_counts(rho, MeasurementSettings::full(3, shots), 17);
        return mc_error_bar(counts, 60, Functional::Fidelity, g, 99).std;
    };
    double coarse = std_at(100);
    double fine = std_at(10000);
    ASSERT_GT(fine, 0);
    double ratio = coarse / fine;
    EXPECT_GT(ratio, 5);
    EXPECT_LT(ratio, 20);
}

TEST(Tomography, SharedResamplingAcrossFunctionals) {
    GraphSpec g = GraphSpec::ghz(2);
    CountsTable counts = sample_counts(depolarized(g, 0.2), MeasurementSettings::full(2, 500), 1);
    std::vector<ErrorBar> bars = mc_error_bars(counts, 10, {Functional::Fidelity, Functional::Tangle}, g, 4);
    ErrorBar f = mc_error_bar(counts, 10, Functional::Fidelity, g, 4);
    ASSERT_EQ(bars.size(), 2u);
    EXPECT_EQ(bars[0].samples, f.samples);
    EXPECT_EQ(bars[1].samples.size(), 10u);
    EXPECT_THROW(mc_error_bar(counts, 1, Functional::Fidelity, g, 4), std::invalid_argument);
}

TEST(Tomography, BellSettingsCoverEveryTerm) {
    for (const GraphSpec &g : {GraphSpec::linear_cluster(4), GraphSpec::ring_cluster(4),
                               GraphSpec::error_correction(3), GraphSpec::error_correction(5)}) {
        std::vector<std::string> settings = bell_settings(g);
        EXPECT_LT(settings.size(), static_cast<size_t>(std::pow(3, g.num_vertices())));
        CountsTable counts = exact_counts(build_graph_state(g), MeasurementSettings{g.num_vertices(), settings, 100});
        EXPECT_NEAR(bell_from_counts(counts, g), 1, 1e-10) << g.name();
    }
}

TEST(Tomography, BellViolationSurvivesDepolarizing) {
    GraphSpec g = GraphSpec::linear_cluster(4);
    DensityMatrix rho = depolarized(g, 0.055);
    double f = fidelity(rho, build_graph_state(g));
    EXPECT_NEAR(f, 0.84, 0.01);
    EXPECT_GT(bell_mean(rho, g), 0.75);

    CountsTable counts = sample_counts(rho, MeasurementSettings{4, bell_settings(g), 1000}, 8);
    double estimate = bell_from_counts(counts, g);
    ErrorBar bar = mc_error_bar(counts, 50, Functional::BellFromCounts, g, 9);
    EXPECT_GT(bar.std, 0);
    EXPECT_LT(bar.std, 0.02);
    EXPECT_GT(estimate - 3 * bar.std, 0.75);

    CountsTable full = sample_counts(rho, MeasurementSettings::full(4, 1000), 8);
    ReconstructionResult r = mle_reconstruct(full);
    EXPECT_GT(evaluate_functional(Functional::BellExpectation, r.rho, g), 0.75);
    EXPECT_NEAR(evaluate_functional(Functional::Fidelity, r.rho, g), f, 0.03);
}

TEST(Tomography, MissingBellSettingsAreListed) {
    GraphSpec g = GraphSpec::linear_cluster(4);
    CountsTable counts = exact_counts(build_graph_state(g), MeasurementSettings{4, {"XZXZ", "ZXZX"}, 10});
    try {
        bell_from_counts(counts, g);
        FAIL() << "expected an exception";
    } catch (const std::invalid_argument &e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("ZYXY"), std::string::npos) << msg;
        EXPECT_EQ(msg.find(" XZII"), std::string::npos) << msg;
    }
}
