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

#ifndef IONMBQC_EXPERIMENT_H
#define IONMBQC_EXPERIMENT_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ionmbqc/quantum_ops.h"

namespace ionmbqc {

/// "start:stop:points", points >= 1 values including both ends.
struct GridSpec {
    double start = 0;
    double stop = 1;
    size_t points = 21;

    std::vector<double> values() const;
    std::string str() const;
    static GridSpec parse(std::string_view text);
};

/// "none" or "<dephase|depolarize>:<strength>".
struct NoiseSpec {
    std::optional<Channel::Kind> channel;
    double strength = 0;

    std::string str() const;
    static NoiseSpec parse(std::string_view text);
    /// Applies the channel to every qubit.
    DensityMatrix apply(const DensityMatrix &rho) const;
};

/// Everything needed to rerun one CLI invocation. Stored as an INI file with
/// sections [run], [graph], [gates], [qec], [tomography], [noise] and
/// [compile]; every key is always written, in a fixed order.
struct ExperimentConfig {
    std::string command;
    uint64_t seed = 1;
    size_t shots = 1000;
    size_t trials = 20;
    std::string output;

    std::string family;
    /// Optional edge-list file; the family, when given, acts as its tag.
    std::string graph_file;

    std::string pattern = "single";
    /// One angle set per row: 3 angles (single) or 2 (two).
    std::vector<std::vector<double>> angles;
    std::string mode = "branch";

    std::vector<size_t> code_sizes = {1, 3, 5};
    std::string targets = "all";
    GridSpec p_grid;
    size_t inputs = 4;

    bool exact = false;
    bool bell_subset = false;
    std::string counts_in;
    std::string counts_out;
    std::string rho_out;

    NoiseSpec noise;

    std::string program;

    void validate() const;
};

void write_config(std::ostream &out, const ExperimentConfig &config);
ExperimentConfig read_config(std::istream &in);

/// Radians only: decimals and pi expressions such as "pi/2", "-pi/4",
/// "3*pi/4", "0.5*pi". Anything mentioning degrees is rejected.
double parse_angle(std::string_view text);

/// "a,b,c;a,b,c".
std::vector<std::vector<double>> parse_angle_sets(std::string_view text);
std::string format_angle_sets(const std::vector<std::vector<double>> &sets);

/// "all" or "C1,C3". Returns 1-based indices; empty means all.
std::vector<size_t> parse_targets(std::string_view text, size_t n);

// Each command writes its artifact to `out` and returns the exit code.

/// JSON report; exit 0 iff fidelity and every stabilizer check reach 1 - 1e-9.
int cmd_verify(const ExperimentConfig &config, std::ostream &out);
/// Pulse program text. With `program` set, parses that file and re-emits it.
int cmd_compile(const ExperimentConfig &config, std::ostream &out);
/// CSV, one row per angle set.
int cmd_gates(const ExperimentConfig &config, std::ostream &out);
/// CSV with columns n,p,input,fidelity,atf,atf_closed_form.
int cmd_qec(const ExperimentConfig &config, std::ostream &out);
/// Edge list of the family's graph in the graph-file format.
int cmd_graph(const ExperimentConfig &config, std::ostream &out);
/// JSON Bell report. With graph_file set, evaluates that graph; a family tag
/// must then match its edges, and untagged graphs get no LHV bound.
int cmd_bell(const ExperimentConfig &config, std::ostream &out);
/// JSON summary; also writes counts_out and rho_out when set.
int cmd_tomo(const ExperimentConfig &config, std::ostream &out);

/// Dispatches on config.command, writing to config.output (or `out` when
/// empty). Exceptions become a one-line JSON error record on `err` and exit
/// code 1.
int run_experiment(const ExperimentConfig &config, std::ostream &out, std::ostream &err);

/// {"error": {"command": ..., "type": ..., "message": ...}}
std::string error_record(const std::string &command, const std::exception &e);

}  // namespace ionmbqc

#endif
