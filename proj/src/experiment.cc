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

#include "ionmbqc/experiment.h"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ionmbqc/clifford.h"
#include "ionmbqc/graph.h"
#include "ionmbqc/mbqc.h"
#include "ionmbqc/pulse.h"
#include "ionmbqc/qec.h"
#include "ionmbqc/tomography.h"
#include "json.hpp"

namespace ionmbqc {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kVerifyThreshold = 1 - 1e-9;
constexpr size_t kMaxFullTomographyQubits = 6;

std::string trim(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

size_t parse_count(std::string_view text, const std::string &what) {
    std::string t = trim(text);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument(what + " must be a non-negative integer, got '" + t + "'");
    }
    return std::stoull(t);
}

bool parse_bool(const std::string &text, const std::string &what) {
    if (text == "true") {
        return true;
    }
    if (text == "false") {
        return false;
    }
    throw std::invalid_argument(what + " must be true or false, got '" + text + "'");
}

std::string join_sizes(const std::vector<size_t> &v) {
    std::string s;
    for (size_t i = 0; i < v.size(); i++) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s;
}

const std::set<std::string> kCommands = {"verify", "compile", "graph", "gates", "qec", "bell", "tomo"};

const std::map<std::string, std::vector<std::string>> kConfigKeys = {
    {"run", {"command", "seed", "shots", "trials", "output"}},
    {"graph", {"family", "file"}},
    {"gates", {"pattern", "angles", "mode"}},
    {"qec", {"n", "targets", "p_grid", "inputs"}},
    {"tomography", {"exact", "bell_subset", "counts_in", "counts_out", "rho_out"}},
    {"noise", {"channel"}},
    {"compile", {"program"}},
};

Family config_family(const ExperimentConfig &c) {
    if (c.family.empty()) {
        throw std::invalid_argument("command '" + c.command + "' needs a graph family");
    }
    std::vector<std::string> parts = split(c.family, ' ');
    if (parts.size() == 2) {
        return Family::parse(parts[0], parse_count(parts[1], "family size"));
    }
    if (parts.size() != 1) {
        throw std::invalid_argument("bad graph family '" + c.family + "'");
    }
    return Family::parse(parts[0]);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_output(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    return out;
}

Json error_bar_json(double value, const std::optional<ErrorBar> &bar) {
    Json j;
    j["value"] = value;
    if (bar.has_value()) {
        j["mc_mean"] = bar->mean;
        j["mc_std"] = bar->std;
    }
    return j;
}

void write_rho_csv(std::ostream &out, const DensityMatrix &rho) {
    out << "# schema=1\n";
    out << "row,col,real,imag\n";
    for (size_t r = 0; r < rho.dim(); r++) {
        for (size_t c = 0; c < rho.dim(); c++) {
            out << r << ',' << c << ',' << format_double(rho(r, c).real()) << ',' << format_double(rho(r, c).imag())
                << '\n';
        }
    }
}

DensityMatrix family_state(const Family &f, const NoiseSpec &noise) {
    return noise.apply(DensityMatrix(build_graph_state(GraphSpec::for_family(f))));
}

}  // namespace

std::vector<double> GridSpec::values() const {
    return linear_grid(start, stop, points);
}

std::string GridSpec::str() const {
    return format_double(start) + ":" + format_double(stop) + ":" + std::to_string(points);
}

GridSpec GridSpec::parse(std::string_view text) {
    std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3) {
        throw std::invalid_argument("grid must look like start:stop:points, got '" + std::string(text) + "'");
    }
    GridSpec g{parse_double(parts[0]), parse_double(parts[1]), parse_count(parts[2], "grid points")};
    if (g.points == 0) {
        throw std::invalid_argument("grid needs at least one point");
    }
    if (!(g.start >= 0 && g.stop <= 1 && g.start <= g.stop)) {
        throw std::invalid_argument("p grid must satisfy 0 <= start <= stop <= 1");
    }
    return g;
}

std::string NoiseSpec::str() const {
    if (!channel.has_value()) {
        return "none";
    }
    return std::string(*channel == Channel::Kind::Dephase ? "dephase" : "depolarize") + ":" + format_double(strength);
}

NoiseSpec NoiseSpec::parse(std::string_view text) {
    std::string t = trim(text);
    if (t == "none" || t.empty()) {
        return {};
    }
    std::vector<std::string> parts = split(t, ':');
    if (parts.size() != 2) {
        throw std::invalid_argument("noise must be 'none' or '<dephase|depolarize>:<strength>', got '" + t + "'");
    }
    NoiseSpec n;
    if (parts[0] == "dephase") {
        n.channel = Channel::Kind::Dephase;
    } else if (parts[0] == "depolarize") {
        n.channel = Channel::Kind::Depolarize;
    } else {
        throw std::invalid_argument("unknown noise channel '" + parts[0] + "'");
    }
    n.strength = parse_double(parts[1]);
    if (!(n.strength >= 0 && n.strength <= 1)) {
        throw std::invalid_argument("noise strength must lie in [0, 1]");
    }
    return n;
}

DensityMatrix NoiseSpec::apply(const DensityMatrix &rho) const {
    if (!channel.has_value()) {
        return rho;
    }
    DensityMatrix out = rho;
    for (size_t q = 0; q < rho.num_qubits(); q++) {
        out = apply_channel(out, Channel{*channel, strength, q});
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (!kCommands.count(command)) {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    if (pattern != "single" && pattern != "two") {
        throw std::invalid_argument("pattern must be 'single' or 'two'");
    }
    if (mode != "branch" && mode != "sample") {
        throw std::invalid_argument("mode must be 'branch' or 'sample'");
    }
    if (inputs != 4 && inputs != 6) {
        throw std::invalid_argument("inputs must be 4 or 6");
    }
    size_t want = pattern == "single" ? 3 : 2;
    for (const std::vector<double> &a : angles) {
        if (a.size() != want) {
            throw std::invalid_argument(
                "pattern '" + pattern + "' takes " + std::to_string(want) + " angles per set, got " +
                std::to_string(a.size()));
        }
    }
    for (size_t n : code_sizes) {
        EcLayout check(n);
        (void)check;
    }
}

void write_config(std::ostream &out, const ExperimentConfig &c) {
    boost::property_tree::ptree pt;
    pt.put("run.command", c.command);
    pt.put("run.seed", std::to_string(c.seed));
    pt.put("run.shots", std::to_string(c.shots));
    pt.put("run.trials", std::to_string(c.trials));
    pt.put("run.output", c.output);
    pt.put("graph.family", c.family);
    pt.put("graph.file", c.graph_file);
    pt.put("gates.pattern", c.pattern);
    pt.put("gates.angles", format_angle_sets(c.angles));
    pt.put("gates.mode", c.mode);
    pt.put("qec.n", join_sizes(c.code_sizes));
    pt.put("qec.targets", c.targets);
    pt.put("qec.p_grid", c.p_grid.str());
    pt.put("qec.inputs", std::to_string(c.inputs));
    pt.put("tomography.exact", c.exact ? "true" : "false");
    pt.put("tomography.bell_subset", c.bell_subset ? "true" : "false");
    pt.put("tomography.counts_in", c.counts_in);
    pt.put("tomography.counts_out", c.counts_out);
    pt.put("tomography.rho_out", c.rho_out);
    pt.put("noise.channel", c.noise.str());
    pt.put("compile.program", c.program);
    boost::property_tree::ini_parser::write_ini(out, pt);
}

ExperimentConfig read_config(std::istream &in) {
    boost::property_tree::ptree pt;
    try {
        boost::property_tree::ini_parser::read_ini(in, pt);
    } catch (const boost::property_tree::ini_parser_error &e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    for (const auto &[section, body] : pt) {
        auto it = kConfigKeys.find(section);
        if (it == kConfigKeys.end()) {
            throw std::invalid_argument("config: unknown section [" + section + "]");
        }
        for (const auto &[key, value] : body) {
            (void)value;
            if (std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
                throw std::invalid_argument("config: unknown key '" + key + "' in [" + section + "]");
            }
        }
    }
    auto get = [&](const std::string &path) { return trim(pt.get<std::string>(path, "")); };
    ExperimentConfig c;
    c.command = get("run.command");
    if (!get("run.seed").empty()) {
        c.seed = parse_count(get("run.seed"), "seed");
    }
    if (!get("run.shots").empty()) {
        c.shots = parse_count(get("run.shots"), "shots");
    }
    if (!get("run.trials").empty()) {
        c.trials = parse_count(get("run.trials"), "trials");
    }
    c.output = get("run.output");
    c.family = get("graph.family");
    c.graph_file = get("graph.file");
    if (!get("gates.pattern").empty()) {
        c.pattern = get("gates.pattern");
    }
    c.angles = parse_angle_sets(get("gates.angles"));
    if (!get("gates.mode").empty()) {
        c.mode = get("gates.mode");
    }
    if (!get("qec.n").empty()) {
        c.code_sizes.clear();
        for (const std::string &s : split(get("qec.n"), ',')) {
            c.code_sizes.push_back(parse_count(s, "code size"));
        }
    }
    if (!get("qec.targets").empty()) {
        c.targets = get("qec.targets");
    }
    if (!get("qec.p_grid").empty()) {
        c.p_grid = GridSpec::parse(get("qec.p_grid"));
    }
    if (!get("qec.inputs").empty()) {
        c.inputs = parse_count(get("qec.inputs"), "inputs");
    }
    if (!get("tomography.exact").empty()) {
        c.exact = parse_bool(get("tomography.exact"), "exact");
    }
    if (!get("tomography.bell_subset").empty()) {
        c.bell_subset = parse_bool(get("tomography.bell_subset"), "bell_subset");
    }
    c.counts_in = get("tomography.counts_in");
    c.counts_out = get("tomography.counts_out");
    c.rho_out = get("tomography.rho_out");
    c.noise = NoiseSpec::parse(get("noise.channel"));
    c.program = get("compile.program");
    c.validate();
    return c;
}

double parse_angle(std::string_view text) {
    std::string t;
    for (char ch : text) {
        if (ch != ' ' && ch != '\t') {
            t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        }
    }
    if (t.find("deg") != std::string::npos || t.find("\xc2\xb0") != std::string::npos) {
        throw std::invalid_argument("angle '" + std::string(text) + "': degrees are not accepted, use radians");
    }
    if (t.empty()) {
        throw std::invalid_argument("empty angle");
    }
    size_t pi = t.find("pi");
    double value;
    if (pi == std::string::npos) {
        value = parse_double(t);
    } else {
        std::string head = t.substr(0, pi);
        std::string tail = t.substr(pi + 2);
        double coef = 1;
        if (!head.empty() && head.back() == '*') {
            head.pop_back();
            if (head.empty() || head == "-" || head == "+") {
                throw std::invalid_argument("bad angle '" + std::string(text) + "'");
            }
        }
        if (head == "-") {
            coef = -1;
        } else if (head == "+" || head.empty()) {
            coef = 1;
        } else {
            coef = parse_double(head);
        }
        double den = 1;
        if (!tail.empty()) {
            if (tail[0] != '/') {
                throw std::invalid_argument("bad angle '" + std::string(text) + "'");
            }
            den = parse_double(tail.substr(1));
            if (den == 0) {
                throw std::invalid_argument("angle '" + std::string(text) + "' divides by zero");
            }
        }
        value = coef * kPi / den;
    }
    if (!std::isfinite(value)) {
        throw std::invalid_argument("angle '" + std::string(text) + "' is not finite");
    }
    return value;
}

std::vector<std::vector<double>> parse_angle_sets(std::string_view text) {
    std::vector<std::vector<double>> sets;
    if (trim(text).empty()) {
        return sets;
    }
    for (const std::string &set : split(text, ';')) {
        std::vector<double> angles;
        for (const std::string &a : split(set, ',')) {
            angles.push_back(parse_angle(a));
        }
        sets.push_back(std::move(angles));
    }
    return sets;
}

std::string format_angle_sets(const std::vector<std::vector<double>> &sets) {
    std::string s;
    for (size_t i = 0; i < sets.size(); i++) {
        if (i) {
            s += ';';
        }
        for (size_t j = 0; j < sets[i].size(); j++) {
            if (j) {
                s += ',';
            }
            s += format_double(sets[i][j]);
        }
    }
    return s;
}

std::vector<size_t> parse_targets(std::string_view text, size_t n) {
    std::string t = trim(text);
    if (t == "all" || t.empty()) {
        return {};
    }
    std::vector<size_t> out;
    for (const std::string &item : split(t, ',')) {
        if (item.size() < 2 || (item[0] != 'C' && item[0] != 'c')) {
            throw std::invalid_argument("error target '" + item + "' must look like C1");
        }
        size_t i = parse_count(item.substr(1), "error target");
        if (i < 1 || i > n) {
            throw std::invalid_argument("error target '" + item + "' is outside C1..C" + std::to_string(n));
        }
        if (std::find(out.begin(), out.end(), i) != out.end()) {
            throw std::invalid_argument("duplicate error target '" + item + "'");
        }
        out.push_back(i);
    }
    return out;
}

int cmd_verify(const ExperimentConfig &config, std::ostream &out) {
    Family f = config_family(config);
    PulseSequence seq = compile_graph(f);
    StateVector corrected = apply_correction_table(generated_state(f), correction_table(f));
    GraphSpec g = GraphSpec::for_family(f);
    double fid = fidelity(corrected, build_graph_state(g));
    bool pass = fid >= kVerifyThreshold;
    Json stabilizers = Json::array();
    for (size_t a = 0; a < g.num_vertices(); a++) {
        PauliString k = stabilizer_generator(g, a);
        double e = expectation(corrected, k).real();
        pass = pass && e >= kVerifyThreshold;
        stabilizers.push_back({{"generator", k.str()}, {"expectation", e}});
    }
    Json j;
    j["schema"] = 1;
    j["command"] = "verify";
    j["family"] = f.name();
    j["num_qubits"] = g.num_vertices();
    j["pulses"] = seq.primitives().size();
    j["fidelity"] = fid;
    j["stabilizers"] = stabilizers;
    j["threshold"] = kVerifyThreshold;
    j["pass"] = pass;
    out << j.dump(2) << '\n';
    return pass ? 0 : 1;
}

int cmd_compile(const ExperimentConfig &config, std::ostream &out) {
    if (!config.program.empty()) {
        PulseSequence seq = PulseSequence::parse(read_file(config.program));
        seq.validate();
        out << seq.to_text();
        return 0;
    }
    out << compile_graph(config_family(config)).to_text();
    return 0;
}

int cmd_gates(const ExperimentConfig &config, std::ostream &out) {
    config.validate();
    if (config.angles.empty()) {
        throw std::invalid_argument("gates needs at least one angle set");
    }
    PatternMode mode = PatternBranchMode{};
    if (config.mode == "sample") {
        mode = PatternSampleMode{config.seed, config.shots};
    }
    out << "# schema=1\n";
    if (config.pattern == "single") {
        out << "pattern,alpha,beta,gamma,x,y,z,oracle_fidelity,purity\n";
        for (const std::vector<double> &a : config.angles) {
            PatternResult r = run_single_qubit_pattern(a[0], a[1], a[2], mode);
            Eigen::Vector3d b = bloch_vector(r.output);
            out << "single," << format_double(a[0]) << ',' << format_double(a[1]) << ',' << format_double(a[2]) << ','
                << format_double(b.x()) << ',' << format_double(b.y()) << ',' << format_double(b.z()) << ','
                << format_double(fidelity(r.output, oracle_output_single(a[0], a[1], a[2]))) << ','
                << format_double(purity(r.output)) << '\n';
        }
        return 0;
    }
    out << "pattern,alpha,beta,tangle,oracle_fidelity,purity";
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            out << ",re_" << r << c << ",im_" << r << c;
        }
    }
    out << '\n';
    for (const std::vector<double> &a : config.angles) {
        PatternResult r = run_two_qubit_pattern(a[0], a[1], mode);
        out << "two," << format_double(a[0]) << ',' << format_double(a[1]) << ',' << format_double(tangle(r.output))
            << ',' << format_double(fidelity(r.output, oracle_output_two(a[0], a[1]))) << ','
            << format_double(purity(r.output));
        for (size_t i = 0; i < 4; i++) {
            for (size_t k = 0; k < 4; k++) {
                out << ',' << format_double(r.output(i, k).real()) << ',' << format_double(r.output(i, k).imag());
            }
        }
        out << '\n';
    }
    return 0;
}

int cmd_qec(const ExperimentConfig &config, std::ostream &out) {
    config.validate();
    InputSet set = config.inputs == 6 ? InputSet::Six : InputSet::Four;
    std::vector<size_t> sizes = config.code_sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    std::vector<double> grid = config.p_grid.values();
    out << "# schema=1\n";
    out << "n,p,input,fidelity,atf,atf_closed_form\n";
    for (size_t n : sizes) {
        std::vector<size_t> targets = parse_targets(config.targets, n);
        size_t m = targets.empty() ? n : targets.size();
        AtfReport rep = atf(n, grid, targets, set);
        std::vector<InputState> inputs = inputs_of(set);
        for (const AtfPoint &pt : rep.points) {
            double closed = ideal_atf_curve(n, pt.p, set, m);
            for (size_t i = 0; i < inputs.size(); i++) {
                out << n << ',' << format_double(pt.p) << ',' << input_label(inputs[i]) << ','
                    << format_double(pt.fidelities[i]) << ',' << format_double(pt.atf) << ',' << format_double(closed)
                    << '\n';
            }
        }
    }
    return 0;
}

int cmd_graph(const ExperimentConfig &config, std::ostream &out) {
    write_graph(out, GraphSpec::for_family(config_family(config)));
    return 0;
}

static GraphSpec bell_graph(const ExperimentConfig &config) {
    if (config.graph_file.empty()) {
        return GraphSpec::for_family(config_family(config));
    }
    std::ifstream in(config.graph_file, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + config.graph_file + "'");
    }
    Family tag = config.family.empty() ? Family{} : config_family(config);
    GraphSpec g = read_graph(in, tag);
    if (!config.family.empty() && !g.same_edges(GraphSpec::for_family(tag))) {
        throw std::invalid_argument("graph file does not match the edges of family " + tag.name());
    }
    return g;
}

// Null in reports for graphs without a cited bound.
static std::optional<double> cited_bound(const GraphSpec &g) {
    try {
        return lhv_bound(g);
    } catch (const std::invalid_argument &) {
        return std::nullopt;
    }
}

int cmd_bell(const ExperimentConfig &config, std::ostream &out) {
    GraphSpec g = bell_graph(config);
    std::optional<double> cited = cited_bound(g);
    bool has_bound = cited.has_value();
    DensityMatrix rho = config.noise.apply(DensityMatrix(build_graph_state(g)));
    double expectation = bell_mean(rho, g);
    double bound = cited.value_or(0);
    Json j;
    j["schema"] = 1;
    j["command"] = "bell";
    j["family"] = g.family().name();
    j["num_qubits"] = g.num_vertices();
    j["noise"] = config.noise.str();
    j["expectation"] = expectation;
    j["fidelity"] = fidelity(rho, build_graph_state(g));
    j["lhv_bound"] = has_bound ? Json(bound) : Json(nullptr);
    j["violated"] = has_bound ? Json(expectation > bound) : Json(nullptr);
    if (config.trials >= 2) {
        MeasurementSettings ms{g.num_vertices(), bell_settings(g), config.shots};
        CountsTable counts = sample_counts(rho, ms, config.seed);
        ErrorBar bar = mc_error_bar(counts, config.trials, Functional::BellFromCounts, g, config.seed + 1);
        double est = bell_from_counts(counts, g);
        j["estimate"] = {
            {"settings", ms.settings.size()},
            {"shots", config.shots},
            {"seed", config.seed},
            {"trials", config.trials},
            {"value", est},
            {"mc_mean", bar.mean},
            {"mc_std", bar.std},
            {"violated", has_bound ? Json(est > bound) : Json(nullptr)},
        };
    }
    out << j.dump(2) << '\n';
    return 0;
}

int cmd_tomo(const ExperimentConfig &config, std::ostream &out) {
    Family f = config_family(config);
    GraphSpec g = GraphSpec::for_family(f);
    size_t n = g.num_vertices();
    if (!config.bell_subset && n > kMaxFullTomographyQubits) {
        throw std::domain_error(
            "full tomography of " + std::to_string(n) + " qubits needs 3^" + std::to_string(n) +
            " settings, which is impractical; the limit is " + std::to_string(kMaxFullTomographyQubits) +
            " qubits. Use the Bell subset instead");
    }
    MeasurementSettings ms = config.bell_subset ? MeasurementSettings{n, bell_settings(g), config.shots}
                                                : MeasurementSettings::full(n, config.shots);
    CountsTable counts;
    if (!config.counts_in.empty()) {
        std::ifstream in(config.counts_in, std::ios::binary);
        if (!in) {
            throw std::runtime_error("cannot open '" + config.counts_in + "'");
        }
        counts = read_counts_csv(in);
        if (counts.num_qubits != n) {
            throw std::invalid_argument("counts file does not match the family's qubit count");
        }
    } else {
        DensityMatrix rho = family_state(f, config.noise);
        counts = config.exact ? exact_counts(rho, ms) : sample_counts(rho, ms, config.seed);
    }
    if (!config.counts_out.empty()) {
        std::ofstream co = open_output(config.counts_out);
        write_counts_csv(co, counts);
    }
    bool mc = config.trials >= 2;
    Json j;
    j["schema"] = 1;
    j["command"] = "tomo";
    j["family"] = f.name();
    j["num_qubits"] = n;
    j["mode"] = config.bell_subset ? "bell_subset" : "full";
    j["settings"] = counts.settings.size();
    j["shots"] = config.shots;
    j["seed"] = config.seed;
    j["exact"] = config.exact;
    j["noise"] = config.noise.str();
    j["trials"] = config.trials;
    std::optional<double> bound = cited_bound(g);
    j["lhv_bound"] = bound ? Json(*bound) : Json(nullptr);
    auto violated = [&](double b) { return bound ? Json(b > *bound) : Json(nullptr); };
    if (config.bell_subset) {
        double b = bell_from_counts(counts, g);
        std::optional<ErrorBar> bar;
        if (mc) {
            bar = mc_error_bar(counts, config.trials, Functional::BellFromCounts, g, config.seed + 1);
        }
        j["bell_from_counts"] = error_bar_json(b, bar);
        j["violated"] = violated(b);
        out << j.dump(2) << '\n';
        return 0;
    }
    ReconstructionResult rec = mle_reconstruct(counts);
    std::vector<Functional> funcs = {Functional::Fidelity, Functional::Purity, Functional::BellExpectation,
                                     Functional::BellFromCounts};
    if (n == 2) {
        funcs.push_back(Functional::Tangle);
    }
    std::vector<ErrorBar> bars;
    if (mc) {
        bars = mc_error_bars(counts, config.trials, funcs, g, config.seed + 1);
    }
    j["iterations"] = rec.iterations;
    j["converged"] = rec.converged;
    j["log_likelihood"] = rec.log_likelihood;
    for (size_t i = 0; i < funcs.size(); i++) {
        double v = funcs[i] == Functional::BellFromCounts ? bell_from_counts(counts, g)
                                                          : evaluate_functional(funcs[i], rec.rho, g);
        j[functional_name(funcs[i])] = error_bar_json(v, mc ? std::optional<ErrorBar>(bars[i]) : std::nullopt);
    }
    j["violated"] = violated(bell_from_counts(counts, g));
    if (!config.rho_out.empty()) {
        std::ofstream ro = open_output(config.rho_out);
        write_rho_csv(ro, rec.rho);
    }
    out << j.dump(2) << '\n';
    return 0;
}

std::string error_record(const std::string &command, const std::exception &e) {
    std::string type = "error";
    if (dynamic_cast<const std::invalid_argument *>(&e)) {
        type = "invalid_argument";
    } else if (dynamic_cast<const std::out_of_range *>(&e)) {
        type = "out_of_range";
    } else if (dynamic_cast<const std::domain_error *>(&e)) {
        type = "domain_error";
    } else if (dynamic_cast<const std::runtime_error *>(&e)) {
        type = "runtime_error";
    }
    Json j;
    j["error"] = {{"command", command}, {"type", type}, {"message", e.what()}};
    return j.dump();
}

int run_experiment(const ExperimentConfig &config, std::ostream &out, std::ostream &err) {
    try {
        config.validate();
        std::ofstream file;
        std::ostream *sink = &out;
        if (!config.output.empty()) {
            file = open_output(config.output);
            sink = &file;
        }
        const std::string &c = config.command;
        if (c == "verify") {
            return cmd_verify(config, *sink);
        }
        if (c == "compile") {
            return cmd_compile(config, *sink);
        }
        if (c == "graph") {
            return cmd_graph(config, *sink);
        }
        if (c == "gates") {
            return cmd_gates(config, *sink);
        }
        if (c == "qec") {
            return cmd_qec(config, *sink);
        }
        if (c == "bell") {
            return cmd_bell(config, *sink);
        }
        return cmd_tomo(config, *sink);
    } catch (const std::exception &e) {
        err << error_record(config.command, e) << '\n';
        return 1;
    }
}

}  // namespace ionmbqc
