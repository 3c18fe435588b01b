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

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "ionmbqc/experiment.h"

using namespace ionmbqc;

namespace {

struct Args {
    ExperimentConfig config;
    std::string family;
    std::optional<size_t> size;
    std::string angles;
    std::string n = "1,3,5";
    std::string p_grid = "0:1:21";
    std::string noise = "none";
    std::string save_config;
    std::string config_file;
};

void add_family(CLI::App *cmd, Args &a, bool required) {
    cmd->add_option("family", a.family, "Graph family: LC4, RC4, EC3, EC3LC, GHZ5, or a bare name with a size")
        ->required(required);
    cmd->add_option("size", a.size, "Family size when the name has none");
}

void add_common(CLI::App *cmd, Args &a) {
    cmd->add_option("--out", a.config.output, "Output file (default: stdout)");
    cmd->add_option("--save-config", a.save_config, "Also write the equivalent config file");
}

void add_sampling(CLI::App *cmd, Args &a) {
    cmd->add_option("--shots", a.config.shots, "Shots per setting")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a.config.seed, "RNG seed");
    cmd->add_option("--trials", a.config.trials, "Monte Carlo trials for error bars (0 disables)");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Trapped-ion graph-state and measurement-based computation simulator"};
    app.require_subcommand(1);
    Args a;

    auto *verify = app.add_subcommand("verify", "Compile, simulate and correct a family; check the graph state");
    add_family(verify, a, true);
    add_common(verify, a);

    auto *compile = app.add_subcommand("compile", "Print the pulse program of a family, or re-emit a program file");
    add_family(compile, a, false);
    compile->add_option("--program", a.config.program, "Pulse program file to parse and re-emit");
    add_common(compile, a);

    auto *graph = app.add_subcommand("graph", "Print the edge list of a family");
    add_family(graph, a, true);
    add_common(graph, a);

    auto *gates = app.add_subcommand("gates", "Run a measurement pattern on the four-qubit linear cluster");
    gates->add_option("pattern", a.config.pattern, "single or two")->required()->check(CLI::IsMember({"single", "two"}));
    gates->add_option("--angles", a.angles, "Angle sets in radians, e.g. 'pi/2,0,0;pi/4,0,0'")->required();
    gates->add_option("--mode", a.config.mode, "branch or sample")->check(CLI::IsMember({"branch", "sample"}));
    add_sampling(gates, a);
    add_common(gates, a);

    auto *qec = app.add_subcommand("qec", "Average teleportation fidelity curves of the repetition code");
    qec->add_option("--n", a.n, "Comma-separated odd code sizes");
    qec->add_option("--targets", a.config.targets, "all, or codeword qubits such as C1,C2");
    qec->add_option("--p-grid", a.p_grid, "start:stop:points");
    qec->add_option("--inputs", a.config.inputs, "4 or 6 input states")->check(CLI::IsMember({4, 6}));
    add_common(qec, a);

    auto *bell = app.add_subcommand("bell", "Stabilizer Bell operator report");
    add_family(bell, a, false);
    bell->add_option("--graph", a.config.graph_file, "Edge-list file; the family argument becomes its tag");
    bell->add_option("--noise", a.noise, "none, dephase:<p> or depolarize:<p> on every qubit");
    add_sampling(bell, a);
    add_common(bell, a);

    auto *tomo = app.add_subcommand("tomo", "Simulated Pauli tomography with maximum-likelihood reconstruction");
    add_family(tomo, a, true);
    tomo->add_option("--noise", a.noise, "none, dephase:<p> or depolarize:<p> on every qubit");
    tomo->add_flag("--exact", a.config.exact, "Use exact probabilities instead of sampled counts");
    tomo->add_flag("--bell-subset", a.config.bell_subset, "Measure only the settings needed for the Bell operator");
    tomo->add_option("--counts-in", a.config.counts_in, "Read counts from a CSV file instead of simulating");
    tomo->add_option("--counts-out", a.config.counts_out, "Write the counts CSV");
    tomo->add_option("--rho-out", a.config.rho_out, "Write the reconstructed density matrix CSV");
    add_sampling(tomo, a);
    add_common(tomo, a);

    auto *run = app.add_subcommand("run", "Run the experiment described by a config file");
    run->add_option("config", a.config_file, "Config file")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    ExperimentConfig config;
    try {
        if (run->parsed()) {
            std::ifstream in(a.config_file);
            config = read_config(in);
        } else {
            config = a.config;
            config.command = app.get_subcommands().front()->get_name();
            if (!a.family.empty()) {
                config.family = a.size.has_value() ? a.family + " " + std::to_string(*a.size) : a.family;
            }
            config.angles = parse_angle_sets(a.angles);
            config.code_sizes.clear();
            for (const std::string &s : CLI::detail::split(a.n, ',')) {
                config.code_sizes.push_back(std::stoul(s));
            }
            config.p_grid = GridSpec::parse(a.p_grid);
            config.noise = NoiseSpec::parse(a.noise);
            config.validate();
            if (!a.save_config.empty()) {
                std::ofstream cf(a.save_config);
                if (!cf) {
                    throw std::runtime_error("cannot write '" + a.save_config + "'");
                }
                write_config(cf, config);
            }
        }
    } catch (const std::exception &e) {
        std::cerr << error_record(config.command.empty() ? "config" : config.command, e) << '\n';
        return 2;
    }
    return run_experiment(config, std::cout, std::cerr);
}
