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

// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ionmbqc/clifford.h"
#include "ionmbqc/graph.h"
#include "ionmbqc/mbqc.h"
#include "ionmbqc/pulse.h"
#include "ionmbqc/qec.h"
#include "ionmbqc/quantum_ops.h"
#include "ionmbqc/tomography.h"
#include "oracle.h"

using namespace ionmbqc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

double binomial(size_t n, size_t k) {
    double r = 1;
    for (size_t i = 0; i < k; i++) {
        r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return r;
}

double closed_form(size_t n, double p) {
    double total = 0;
    for (size_t k = 0; 2 * k < n; k++) {
        total += binomial(n, k) * std::pow(p, static_cast<double>(k)) * std::pow(1 - p, static_cast<double>(n - k));
    }
    return total;
}

oracle::M phase(double phi) {
    oracle::M p = oracle::M::Identity(2, 2);
    p(1, 1) = std::exp(oracle::C(0, phi));
    return p;
}

oracle::V plus(size_t n) {
    return oracle::V::Constant(1 << n, 1 / std::sqrt(static_cast<double>(1 << n)));
}

DensityMatrix depolarized(const GraphSpec &g, double p) {
    DensityMatrix rho(build_graph_state(g));
    for (size_t q = 0; q < g.num_vertices(); q++) {
        rho = apply_channel(rho, Channel::depolarize(p, q));
    }
    return rho;
}

// Each check returns an empty string on success, or a short reason.
using Check = std::function<std::string()>;

std::string fmt(const char *f, double a, double b = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string pulse_compiler() {
    auto start = Clock::now();
    std::vector<Family> families = {Family::lc(4), Family::rc(4), Family::ec(1), Family::ec(2), Family::ec(3),
                                    Family::ec(5)};
    for (size_t n = 2; n <= 6; n++) {
        families.push_back(Family::ghz(n));
    }
    for (const Family &f : families) {
        StateVector corrected = apply_correction_table(generated_state(f), correction_table(f));
        GraphSpec g = GraphSpec::for_family(f);
        double fid = oracle::fidelity(corrected.amplitudes(), oracle::graph_state(g.num_vertices(), g.edges()));
        if (fid < 1 - 1e-9) {
            return f.name() + fmt(" fidelity %.12f", fid);
        }
    }
    double t = seconds_since(start);
    return t < 10 ? "" : fmt("took %.1f s", t);
}

std::string intermediate_state() {
    PulseSequence full = compile_graph(Family::lc(4));
    std::vector<PulsePrimitive> head(full.primitives().begin(), full.primitives().begin() + 5);
    StateVector out = simulate_sequence(PulseSequence(4, head), StateVector::from_bits("1111"));
    oracle::V want = (oracle::basis_state("1111") - oracle::C(0, 1) * oracle::basis_state("1001")) / std::sqrt(2.0);
    double err = (out.amplitudes() - want).norm();
    return err <= 1e-10 ? "" : fmt("distance %.3e", err);
}

std::string mbqc_oracle() {
    oracle::M h = oracle::hadamard();
    double settings[5][3] = {{kPi / 2, 0, 0}, {0, 0, -kPi / 2}, {kPi / 2, -kPi / 2, 0}, {kPi / 2, 0, -kPi / 2},
                             {kPi / 4, 0, 0}};
    for (auto &s : settings) {
        oracle::V want = h * phase(-s[2]) * h * phase(-s[1]) * h * phase(-s[0]) * plus(1);
        double f = oracle::fidelity(run_single_qubit_pattern(s[0], s[1], s[2]).output.matrix(), want);
        if (f < 1 - 1e-9) {
            return fmt("single (%.3f, ...) fidelity %.12f", s[0], f);
        }
    }
    oracle::M cz = oracle::M::Identity(4, 4);
    cz(3, 3) = -1;
    for (auto [a, b] : {std::pair{kPi / 2, -kPi / 2}, std::pair{0.0, 0.0}}) {
        oracle::V want = cz * oracle::kron(h * phase(-a), h * phase(-b)) * plus(2);
        DensityMatrix out = run_two_qubit_pattern(a, b).output;
        double f = oracle::fidelity(out.matrix(), want);
        if (f < 1 - 1e-9) {
            return fmt("two-qubit fidelity %.12f", f);
        }
        double t = tangle(out);
        if (a != 0 && std::abs(t - 1) > 1e-9) {
            return fmt("entangling tangle %.12f", t);
        }
        if (a == 0 && t > 1e-9) {
            return fmt("separable tangle %.3e", t);
        }
    }
    return "";
}

std::string determinism() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int i = 0; i < 20; i++) {
        double p1 = purity(run_single_qubit_pattern(u(rng), u(rng), u(rng)).output);
        double p2 = purity(run_two_qubit_pattern(u(rng), u(rng)).output);
        if (std::min(p1, p2) < 1 - 1e-9) {
            return fmt("purity %.12f", std::min(p1, p2));
        }
    }
    return "";
}

std::string correctable_region() {
    for (size_t n : {1, 3, 5}) {
        EcLayout layout(n);
        DensityMatrix resource(build_ec_state(n));
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
            if (2 * static_cast<size_t>(std::popcount(mask)) >= n) {
                continue;
            }
            ErrorSpec e;
            e.theta = kPi;
            for (size_t i = 0; i < n; i++) {
                if ((mask >> i) & 1) {
                    e.targets.push_back(i + 1);
                }
            }
            for (InputState s : inputs_of(InputSet::Six)) {
                double f = teleport_fidelity(resource, layout, s, e);
                if (std::abs(f - 1) > 1e-10) {
                    return fmt("n=%.0f fidelity %.12f", static_cast<double>(n), f);
                }
            }
        }
    }
    return "";
}

std::string qec_curves() {
    std::vector<double> grid = linear_grid(0, 1, 21);
    for (size_t n : {1, 3, 5}) {
        AtfReport r = atf(n, grid, {}, InputSet::Four);
        for (const AtfPoint &pt : r.points) {
            if (std::abs(pt.atf - closed_form(n, pt.p)) > 1e-9) {
                return fmt("n=%.0f p=%.2f off the closed form", static_cast<double>(n), pt.p);
            }
        }
        if (std::abs(r.points[10].atf - 0.5) > 1e-9) {
            return fmt("n=%.0f ATF(0.5)=%.12f", static_cast<double>(n), r.points[10].atf);
        }
    }
    double a1 = atf(1, {0.4}, {}, InputSet::Four).points[0].atf;
    double a3 = atf(3, {0.4}, {}, InputSet::Four).points[0].atf;
    double a5 = atf(5, {0.4}, {}, InputSet::Four).points[0].atf;
    return (a5 > a3 && a3 > a1) ? "" : "ordering at p=0.4 violated";
}

std::string six_state() {
    std::vector<double> grid = linear_grid(0, 1, 21);
    for (size_t n : {1, 3, 5}) {
        AtfReport four = atf(n, grid, {}, InputSet::Four);
        AtfReport six = atf(n, grid, {}, InputSet::Six);
        for (size_t i = 0; i < grid.size(); i++) {
            if (std::abs(six.points[i].atf - (4 * four.points[i].atf + 2) / 6) > 1e-9) {
                return fmt("n=%.0f p=%.2f", static_cast<double>(n), grid[i]);
            }
        }
    }
    return "";
}

std::string bell_suite() {
    struct Row {
        GraphSpec g;
        double bound;
    };
    std::vector<Row> rows = {{GraphSpec::linear_cluster(4), 0.75}, {GraphSpec::ring_cluster(4), 0.75},
                             {GraphSpec::error_correction(1), 0.75}, {GraphSpec::error_correction(3), 0.75},
                             {GraphSpec::error_correction(5), 0.625}};
    for (const Row &r : rows) {
        BellReport rep = bell_expectation(build_graph_state(r.g), r.g);
        if (std::abs(rep.expectation - 1) > 1e-10) {
            return r.g.name() + fmt(" <B>=%.12f", rep.expectation);
        }
        if (rep.lhv_bound != r.bound || !rep.violated) {
            return r.g.name() + fmt(" bound %.3f", rep.lhv_bound);
        }
    }
    for (size_t n = 2; n <= 7; n++) {
        for (const GraphSpec &g : {GraphSpec::linear_cluster(n), GraphSpec::ghz(n)}) {
            oracle::M proj = oracle::projector(oracle::graph_state(n, g.edges()));
            double err = (bell_operator(g) - proj).norm();
            if (err > 1e-10) {
                return g.name() + fmt(" projector distance %.3e", err);
            }
        }
    }
    std::vector<PauliString> group = stabilizer_group(GraphSpec::linear_cluster(4)).group();
    const std::vector<std::string> expansion = {"+IIII", "+XZII", "+ZXZI", "+YYZI", "+IZXZ", "+XIXZ",
                                                "+ZYYZ", "-YXYZ", "+IIZX", "+XZZX", "+ZXIX", "+YYIX",
                                                "+IZYY", "+XIYY", "-ZYXY", "+YXXY"};
    std::vector<std::string> got;
    for (const PauliString &p : group) {
        got.push_back(p.str());
    }
    std::sort(got.begin(), got.end());
    std::vector<std::string> want = expansion;
    std::sort(want.begin(), want.end());
    return got == want ? "" : "LC4 stabilizer expansion differs";
}

std::string tomography() {
    for (const GraphSpec &g : {GraphSpec::ghz(3), GraphSpec::linear_cluster(4), GraphSpec::error_correction(3)}) {
        StateVector psi = build_graph_state(g);
        ReconstructionResult r = mle_reconstruct(exact_counts(psi, MeasurementSettings::full(g.num_vertices(), 1000)));
        double f = fidelity(r.rho, psi);
        if (f < 1 - 1e-8) {
            return g.name() + fmt(" fidelity %.12f", f);
        }
        for (size_t i = 1; i < r.likelihood_trace.size(); i++) {
            if (r.likelihood_trace[i] < r.likelihood_trace[i - 1]) {
                return g.name() + " likelihood decreased";
            }
        }
    }
    GraphSpec ghz = GraphSpec::ghz(3);
    DensityMatrix noisy = depolarized(ghz, 0.1);
    auto std_at = [&](size_t shots) {
        CountsTable c = sample_counts(noisy, MeasurementSettings::full(3, shots), 17);
        ReconstructionResult r = mle_reconstruct(c);
        for (size_t i = 1; i < r.likelihood_trace.size(); i++) {
            if (r.likelihood_trace[i] < r.likelihood_trace[i - 1]) {
                return -1.0;
            }
        }
        return mc_error_bar(c, 60, Functional::Fidelity, ghz, 99).std;
    };
    double coarse = std_at(100);
    double fine = std_at(10000);
    if (coarse < 0 || fine <= 0) {
        return "likelihood decreased on sampled data";
    }
    double ratio = coarse / fine;
    if (ratio < 5 || ratio > 20) {
        return fmt("error bar ratio over 100x shots %.2f", ratio);
    }
    GraphSpec lc4 = GraphSpec::linear_cluster(4);
    DensityMatrix rho = depolarized(lc4, 0.055);
    double f = fidelity(rho, build_graph_state(lc4));
    CountsTable counts = sample_counts(rho, MeasurementSettings{4, bell_settings(lc4), 1000}, 8);
    double b = bell_from_counts(counts, lc4);
    ErrorBar bar = mc_error_bar(counts, 50, Functional::BellFromCounts, lc4, 9);
    if (std::abs(f - 0.84) > 0.01 || b - 3 * bar.std <= 0.75) {
        return fmt("noisy Bell %.4f at fidelity %.4f", b, f);
    }
    return "";
}

std::string noise_robustness() {
    for (double s : {0.05, 0.1, 0.2, 0.3, 0.5}) {
        double one = noise_robustness_study(1, Channel::Kind::Dephase, s, NoiseScope::Codeword);
        double three = noise_robustness_study(3, Channel::Kind::Dephase, s, NoiseScope::Codeword);
        if (three < one) {
            return fmt("strength %.2f: n=3 below n=1 (%.6f)", s, three - one);
        }
    }
    return "";
}

}  // namespace

int main() {
    auto start = Clock::now();
    std::vector<std::pair<std::string, Check>> checks = {
        {"pulse compiler fidelity for all families", pulse_compiler},
        {"four-qubit intermediate state", intermediate_state},
        {"MBQC oracle equivalence and tangle", mbqc_oracle},
        {"feedforward aggregation purity", determinism},
        {"QEC correctable region", correctable_region},
        {"QEC curves, midpoint and ordering", qec_curves},
        {"six-state ATF", six_state},
        {"Bell suite", bell_suite},
        {"tomography", tomography},
        {"codeword dephasing robustness", noise_robustness},
    };
    int failures = 0;
    for (auto &[name, check] : checks) {
        std::string reason;
        try {
            reason = check();
        } catch (const std::exception &e) {
            reason = std::string("exception: ") + e.what();
        }
        if (reason.empty()) {
            std::printf("PASS %s\n", name.c_str());
        } else {
            std::printf("FAIL %s: %s\n", name.c_str(), reason.c_str());
            failures++;
        }
    }
    double total = seconds_since(start);
    bool fast = total < 300;
    std::printf("%s primary suite runtime %.1f s (limit 300 s)\n", fast ? "PASS" : "FAIL", total);
    failures += fast ? 0 : 1;
    return failures == 0 ? 0 : 1;
}
