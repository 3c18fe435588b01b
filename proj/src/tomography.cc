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

#include "ionmbqc/tomography.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ionmbqc/pulse.h"

namespace ionmbqc {

namespace {

struct Masks {
    size_t x;
    size_t z;
};

void check_setting(const std::string &s, size_t n) {
    if (s.size() != n) {
        throw std::invalid_argument("setting '" + s + "' does not have " + std::to_string(n) + " letters");
    }
    for (char c : s) {
        if (c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("setting '" + s + "' has a letter outside {X, Y, Z}");
        }
    }
}

// Pauli string with the setting's letters on subset t (index-bit mask) and
// identity elsewhere.
Masks setting_masks(const std::string &s, size_t t) {
    size_t n = s.size();
    Masks m{0, 0};
    for (size_t q = 0; q < n; q++) {
        size_t bit = size_t{1} << (n - 1 - q);
        if (!(t & bit)) {
            continue;
        }
        if (s[q] == 'X' || s[q] == 'Y') {
            m.x |= bit;
        }
        if (s[q] == 'Z' || s[q] == 'Y') {
            m.z |= bit;
        }
    }
    return m;
}

Complex i_pow(unsigned k) {
    switch (k % 4) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

// Tr(rho P) for P = i^{|x&z|} X^x Z^z.
double pauli_expect(const CMatrix &rho, size_t x, size_t z) {
    size_t d = static_cast<size_t>(rho.rows());
    Complex acc = 0;
    for (size_t c = 0; c < d; c++) {
        Complex v = rho(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ x));
        acc += (std::popcount(c & z) % 2) ? -v : v;
    }
    return (i_pow(static_cast<unsigned>(std::popcount(x & z))) * acc).real();
}

// h_o = sum_t (-1)^{|o&t|} v_t.
void walsh_hadamard(std::vector<double> &v) {
    for (size_t h = 1; h < v.size(); h <<= 1) {
        for (size_t i = 0; i < v.size(); i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                double a = v[j];
                double b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

std::vector<double> probabilities_from_expectations(std::vector<double> e) {
    double d = static_cast<double>(e.size());
    walsh_hadamard(e);
    for (double &p : e) {
        p /= d;
    }
    return e;
}

// Multinomial by sequential binomials.
std::vector<double> draw_multinomial(const std::vector<double> &p, uint64_t shots, std::mt19937_64 &rng) {
    std::vector<double> clamped(p.size());
    double total = 0;
    for (size_t i = 0; i < p.size(); i++) {
        clamped[i] = std::max(0.0, p[i]);
        total += clamped[i];
    }
    std::vector<double> out(p.size(), 0.0);
    uint64_t left = shots;
    double mass = total;
    for (size_t i = 0; i < p.size() && left > 0; i++) {
        if (i + 1 == p.size()) {
            out[i] = static_cast<double>(left);
            break;
        }
        double q = mass > 0 ? std::clamp(clamped[i] / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<uint64_t> bin(left, q);
        uint64_t k = bin(rng);
        out[i] = static_cast<double>(k);
        left -= k;
        mass -= clamped[i];
    }
    return out;
}

uint64_t rounded_shots(double shots) {
    if (!(shots >= 1)) {
        throw std::invalid_argument("setting with fewer than one shot");
    }
    return static_cast<uint64_t>(std::llround(shots));
}

// Precomputed measurement map for the MLE loop.
struct MeasurementMap {
    size_t n;
    size_t d;
    // key = x * d + z per (setting, subset)
    std::vector<std::vector<size_t>> keys;
};

MeasurementMap build_map(const CountsTable &counts) {
    MeasurementMap m{counts.num_qubits, size_t{1} << counts.num_qubits, {}};
    for (const std::string &s : counts.settings) {
        std::vector<size_t> k(m.d);
        for (size_t t = 0; t < m.d; t++) {
            Masks pm = setting_masks(s, t);
            k[t] = pm.x * m.d + pm.z;
        }
        m.keys.push_back(std::move(k));
    }
    return m;
}

struct Evaluation {
    double log_likelihood;
    // Pauli coefficients of R, indexed by key.
    std::vector<double> r;
};

Evaluation evaluate(const MeasurementMap &m, const CountsTable &counts, const CMatrix &rho, bool want_r) {
    std::vector<double> e(m.d * m.d, std::numeric_limits<double>::quiet_NaN());
    Evaluation ev{0, {}};
    if (want_r) {
        ev.r.assign(m.d * m.d, 0.0);
    }
    double settings = static_cast<double>(counts.settings.size());
    for (size_t s = 0; s < counts.settings.size(); s++) {
        std::vector<double> v(m.d);
        for (size_t t = 0; t < m.d; t++) {
            size_t key = m.keys[s][t];
            if (std::isnan(e[key])) {
                e[key] = pauli_expect(rho, key / m.d, key % m.d);
            }
            v[t] = e[key];
        }
        std::vector<double> p = probabilities_from_expectations(std::move(v));
        double shots = counts.shots(s);
        std::vector<double> w(m.d, 0.0);
        for (size_t o = 0; o < m.d; o++) {
            double c = counts.counts[s][o];
            if (c <= 0) {
                continue;
            }
            if (p[o] <= 0) {
                ev.log_likelihood = -std::numeric_limits<double>::infinity();
                return ev;
            }
            ev.log_likelihood += c * std::log(p[o]);
            w[o] = (c / shots) / p[o];
        }
        if (want_r) {
            walsh_hadamard(w);
            for (size_t t = 0; t < m.d; t++) {
                ev.r[m.keys[s][t]] += w[t] / (static_cast<double>(m.d) * settings);
            }
        }
    }
    return ev;
}

CMatrix r_matrix(const MeasurementMap &m, const std::vector<double> &r) {
    Eigen::Index d = static_cast<Eigen::Index>(m.d);
    CMatrix out = CMatrix::Zero(d, d);
    for (size_t key = 0; key < r.size(); key++) {
        if (r[key] == 0) {
            continue;
        }
        size_t x = key / m.d;
        size_t z = key % m.d;
        Complex coef = r[key] * i_pow(static_cast<unsigned>(std::popcount(x & z)));
        for (size_t c = 0; c < m.d; c++) {
            Complex v = (std::popcount(c & z) % 2) ? -coef : coef;
            out(static_cast<Eigen::Index>(c ^ x), static_cast<Eigen::Index>(c)) += v;
        }
    }
    return out;
}

CMatrix sandwich(const CMatrix &a, const CMatrix &rho) {
    CMatrix next = a * rho * a.adjoint();
    next = (next + next.adjoint()) / 2.0;
    return next / next.trace().real();
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(item);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

MeasurementSettings MeasurementSettings::full(size_t n, size_t shots) {
    if (n == 0 || n > kMaxQubits) {
        throw std::invalid_argument("bad qubit count for tomography");
    }
    MeasurementSettings m{n, {}, shots};
    size_t total = 1;
    for (size_t i = 0; i < n; i++) {
        total *= 3;
    }
    const char letters[] = {'X', 'Y', 'Z'};
    for (size_t k = 0; k < total; k++) {
        std::string s(n, 'X');
        size_t v = k;
        for (size_t q = n; q-- > 0;) {
            s[q] = letters[v % 3];
            v /= 3;
        }
        m.settings.push_back(s);
    }
    m.validate();
    return m;
}

void MeasurementSettings::validate() const {
    if (shots < 1) {
        throw std::invalid_argument("shots per setting must be at least 1");
    }
    if (settings.empty()) {
        throw std::invalid_argument("no measurement settings");
    }
    std::set<std::string> seen;
    for (const std::string &s : settings) {
        check_setting(s, num_qubits);
        if (!seen.insert(s).second) {
            throw std::invalid_argument("duplicate setting '" + s + "'");
        }
    }
}

double CountsTable::shots(size_t setting) const {
    double total = 0;
    for (double c : counts.at(setting)) {
        total += c;
    }
    return total;
}

size_t CountsTable::find(const std::string &setting) const {
    auto it = std::find(settings.begin(), settings.end(), setting);
    return static_cast<size_t>(it - settings.begin());
}

void CountsTable::validate() const {
    if (settings.size() != counts.size()) {
        throw std::invalid_argument("counts table: settings and counts differ in length");
    }
    std::set<std::string> seen;
    size_t d = size_t{1} << num_qubits;
    for (size_t s = 0; s < settings.size(); s++) {
        check_setting(settings[s], num_qubits);
        if (!seen.insert(settings[s]).second) {
            throw std::invalid_argument("counts table: duplicate setting '" + settings[s] + "'");
        }
        if (counts[s].size() != d) {
            throw std::invalid_argument("counts table: setting '" + settings[s] + "' lacks 2^n outcomes");
        }
        for (double c : counts[s]) {
            if (!(c >= 0)) {
                throw std::invalid_argument("counts table: negative count");
            }
        }
        if (!(shots(s) > 0)) {
            throw std::invalid_argument("counts table: setting '" + settings[s] + "' has no shots");
        }
    }
}

std::vector<double> setting_probabilities(const DensityMatrix &rho, const std::string &setting) {
    size_t n = rho.num_qubits();
    check_setting(setting, n);
    size_t d = rho.dim();
    std::vector<double> e(d);
    for (size_t t = 0; t < d; t++) {
        Masks m = setting_masks(setting, t);
        e[t] = pauli_expect(rho.matrix(), m.x, m.z);
    }
    return probabilities_from_expectations(std::move(e));
}

CountsTable sample_counts(const DensityMatrix &rho, const MeasurementSettings &settings, uint64_t seed) {
    settings.validate();
    if (settings.num_qubits != rho.num_qubits()) {
        throw std::invalid_argument("settings and state have different qubit counts");
    }
    std::mt19937_64 rng(seed);
    CountsTable t{settings.num_qubits, settings.settings, {}};
    for (const std::string &s : settings.settings) {
        t.counts.push_back(draw_multinomial(setting_probabilities(rho, s), settings.shots, rng));
    }
    return t;
}

CountsTable sample_counts(const StateVector &state, const MeasurementSettings &settings, uint64_t seed) {
    return sample_counts(DensityMatrix(state), settings, seed);
}

CountsTable exact_counts(const DensityMatrix &rho, const MeasurementSettings &settings) {
    settings.validate();
    if (settings.num_qubits != rho.num_qubits()) {
        throw std::invalid_argument("settings and state have different qubit counts");
    }
    CountsTable t{settings.num_qubits, settings.settings, {}};
    for (const std::string &s : settings.settings) {
        std::vector<double> p = setting_probabilities(rho, s);
        for (double &x : p) {
            x = std::max(0.0, x) * static_cast<double>(settings.shots);
        }
        t.counts.push_back(std::move(p));
    }
    return t;
}

CountsTable exact_counts(const StateVector &state, const MeasurementSettings &settings) {
    return exact_counts(DensityMatrix(state), settings);
}

bool is_informationally_complete(size_t num_qubits, const std::vector<std::string> &settings) {
    size_t d = size_t{1} << num_qubits;
    std::vector<bool> covered(d * d, false);
    size_t count = 0;
    for (const std::string &s : settings) {
        check_setting(s, num_qubits);
        for (size_t t = 0; t < d; t++) {
            Masks m = setting_masks(s, t);
            size_t key = m.x * d + m.z;
            if (!covered[key]) {
                covered[key] = true;
                count++;
            }
        }
    }
    return count == d * d;
}

ReconstructionResult mle_reconstruct(const CountsTable &counts, const MleOptions &options) {
    counts.validate();
    if (!is_informationally_complete(counts.num_qubits, counts.settings)) {
        throw std::invalid_argument(
            "settings are informationally incomplete: the measurement map does not span all Pauli operators");
    }
    MeasurementMap m = build_map(counts);
    Eigen::Index d = static_cast<Eigen::Index>(m.d);
    CMatrix rho = CMatrix::Identity(d, d) / static_cast<double>(m.d);
    CMatrix id = CMatrix::Identity(d, d);
    Evaluation cur = evaluate(m, counts, rho, true);
    ReconstructionResult res{DensityMatrix::maximally_mixed(m.n), cur.log_likelihood, 0, false, {cur.log_likelihood}};
    for (size_t it = 0; it < options.max_iterations; it++) {
        CMatrix r = r_matrix(m, cur.r);
        CMatrix cand = sandwich(r, rho);
        Evaluation next = evaluate(m, counts, cand, true);
        // Longer steps R^k rho R^k, kept while they raise the likelihood.
        CMatrix rk = r;
        for (int k = 0; k < 6 && next.log_likelihood >= cur.log_likelihood; k++) {
            rk = rk * rk;
            rk /= rk.trace().real() / static_cast<double>(m.d);
            CMatrix longer = sandwich(rk, rho);
            Evaluation ev = evaluate(m, counts, longer, true);
            if (!(ev.log_likelihood > next.log_likelihood)) {
                break;
            }
            cand = std::move(longer);
            next = std::move(ev);
        }
        double eps = 1;
        while (!(next.log_likelihood >= cur.log_likelihood) && eps > 1e-12) {
            cand = sandwich(id + eps * r, rho);
            next = evaluate(m, counts, cand, true);
            eps /= 2;
        }
        if (!(next.log_likelihood >= cur.log_likelihood)) {
            res.converged = true;
            break;
        }
        double change = next.log_likelihood - cur.log_likelihood;
        rho = cand;
        cur = std::move(next);
        res.iterations = it + 1;
        res.likelihood_trace.push_back(cur.log_likelihood);
        if (change <= options.tolerance * std::abs(cur.log_likelihood)) {
            res.converged = true;
            break;
        }
    }
    res.rho = DensityMatrix(m.n, rho);
    res.log_likelihood = cur.log_likelihood;
    return res;
}

std::vector<std::string> bell_settings(const GraphSpec &g) {
    size_t n = g.num_vertices();
    std::vector<PauliString> terms = stabilizer_group(g).group();
    std::stable_sort(terms.begin(), terms.end(), [](const PauliString &a, const PauliString &b) {
        return a.weight() > b.weight();
    });
    std::vector<std::string> partial;
    for (const PauliString &term : terms) {
        if (term.is_identity()) {
            continue;
        }
        std::string letters = term.letters_str();
        bool placed = false;
        for (std::string &p : partial) {
            bool ok = true;
            for (size_t q = 0; q < n && ok; q++) {
                ok = letters[q] == 'I' || p[q] == '.' || p[q] == letters[q];
            }
            if (ok) {
                for (size_t q = 0; q < n; q++) {
                    if (letters[q] != 'I') {
                        p[q] = letters[q];
                    }
                }
                placed = true;
                break;
            }
        }
        if (!placed) {
            std::string p(n, '.');
            for (size_t q = 0; q < n; q++) {
                if (letters[q] != 'I') {
                    p[q] = letters[q];
                }
            }
            partial.push_back(p);
        }
    }
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::string &p : partial) {
        std::replace(p.begin(), p.end(), '.', 'Z');
        if (seen.insert(p).second) {
            out.push_back(p);
        }
    }
    if (out.empty()) {
        out.push_back(std::string(n, 'Z'));
    }
    return out;
}

double bell_from_counts(const CountsTable &counts, const GraphSpec &g) {
    counts.validate();
    size_t n = g.num_vertices();
    if (counts.num_qubits != n) {
        throw std::invalid_argument("counts and graph have different qubit counts");
    }
    std::vector<PauliString> terms = stabilizer_group(g).group();
    std::vector<std::string> missing;
    double total = 0;
    for (const PauliString &term : terms) {
        if (term.is_identity()) {
            total += term.sign();
            continue;
        }
        size_t support = 0;
        for (size_t q = 0; q < n; q++) {
            if (term[q] != Pauli::I) {
                support |= size_t{1} << (n - 1 - q);
            }
        }
        double sum = 0;
        size_t used = 0;
        for (size_t s = 0; s < counts.settings.size(); s++) {
            const std::string &setting = counts.settings[s];
            bool covers = true;
            for (size_t q = 0; q < n && covers; q++) {
                covers = term[q] == Pauli::I || setting[q] == pauli_char(term[q]);
            }
            if (!covers) {
                continue;
            }
            double shots = counts.shots(s);
            double e = 0;
            for (size_t o = 0; o < counts.counts[s].size(); o++) {
                double f = counts.counts[s][o] / shots;
                e += (std::popcount(o & support) % 2) ? -f : f;
            }
            sum += e;
            used++;
        }
        if (used == 0) {
            missing.push_back(term.letters_str());
            continue;
        }
        total += term.sign() * sum / static_cast<double>(used);
    }
    if (!missing.empty()) {
        std::string msg = "counts lack settings for stabilizer terms:";
        for (const std::string &m : missing) {
            msg += " " + m;
        }
        throw std::invalid_argument(msg);
    }
    return total / static_cast<double>(terms.size());
}

std::string functional_name(Functional f) {
    switch (f) {
        case Functional::Fidelity:
            return "fidelity";
        case Functional::Purity:
            return "purity";
        case Functional::Tangle:
            return "tangle";
        case Functional::BellExpectation:
            return "bell_expectation";
        case Functional::BellFromCounts:
            return "bell_from_counts";
    }
    return "?";
}

double evaluate_functional(Functional functional, const DensityMatrix &rho, const GraphSpec &g) {
    switch (functional) {
        case Functional::Fidelity:
            return fidelity(rho, build_graph_state(g));
        case Functional::Purity:
            return purity(rho);
        case Functional::Tangle:
            return tangle(rho);
        case Functional::BellExpectation:
            return bell_mean(rho, g);
        case Functional::BellFromCounts:
            break;
    }
    throw std::invalid_argument("bell_from_counts is evaluated on counts, not on a state");
}

std::vector<ErrorBar> mc_error_bars(
    const CountsTable &counts, size_t trials, const std::vector<Functional> &functionals, const GraphSpec &g,
    uint64_t seed, const MleOptions &options) {
    if (trials < 2) {
        throw std::invalid_argument("Monte Carlo error bars need at least two trials");
    }
    counts.validate();
    bool needs_state = false;
    for (Functional f : functionals) {
        needs_state |= f != Functional::BellFromCounts;
    }
    std::mt19937_64 rng(seed);
    std::vector<ErrorBar> bars(functionals.size(), ErrorBar{0, 0, {}});
    for (size_t k = 0; k < trials; k++) {
        CountsTable resampled{counts.num_qubits, counts.settings, {}};
        for (size_t s = 0; s < counts.settings.size(); s++) {
            double shots = counts.shots(s);
            std::vector<double> f = counts.counts[s];
            for (double &x : f) {
                x /= shots;
            }
            resampled.counts.push_back(draw_multinomial(f, rounded_shots(shots), rng));
        }
        std::optional<DensityMatrix> rho;
        if (needs_state) {
            rho = mle_reconstruct(resampled, options).rho;
        }
        for (size_t i = 0; i < functionals.size(); i++) {
            double v = functionals[i] == Functional::BellFromCounts ? bell_from_counts(resampled, g)
                                                                    : evaluate_functional(functionals[i], *rho, g);
            bars[i].samples.push_back(v);
        }
    }
    for (ErrorBar &bar : bars) {
        for (double v : bar.samples) {
            bar.mean += v;
        }
        bar.mean /= static_cast<double>(trials);
        double var = 0;
        for (double v : bar.samples) {
            var += (v - bar.mean) * (v - bar.mean);
        }
        bar.std = std::sqrt(var / static_cast<double>(trials - 1));
    }
    return bars;
}

ErrorBar mc_error_bar(
    const CountsTable &counts, size_t trials, Functional functional, const GraphSpec &g, uint64_t seed,
    const MleOptions &options) {
    return mc_error_bars(counts, trials, {functional}, g, seed, options)[0];
}

std::string outcome_label(size_t outcome, size_t num_qubits) {
    std::string s(num_qubits, '0');
    for (size_t q = 0; q < num_qubits; q++) {
        if (outcome & (size_t{1} << (num_qubits - 1 - q))) {
            s[q] = '1';
        }
    }
    return s;
}

void write_counts_csv(std::ostream &out, const CountsTable &counts) {
    counts.validate();
    out << "# schema=1\n";
    out << "setting,outcome,count\n";
    for (size_t s = 0; s < counts.settings.size(); s++) {
        for (size_t o = 0; o < counts.counts[s].size(); o++) {
            out << counts.settings[s] << ',' << outcome_label(o, counts.num_qubits) << ','
                << format_double(counts.counts[s][o]) << '\n';
        }
    }
}

CountsTable read_counts_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "# schema=1") {
        throw std::invalid_argument("counts CSV must start with '# schema=1'");
    }
    if (!std::getline(in, line) || trim(line) != "setting,outcome,count") {
        throw std::invalid_argument("counts CSV header must be 'setting,outcome,count'");
    }
    CountsTable t;
    bool sized = false;
    size_t line_no = 2;
    while (std::getline(in, line)) {
        line_no++;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> f = split_csv(line);
        if (f.size() != 3) {
            throw std::invalid_argument("counts CSV line " + std::to_string(line_no) + ": expected 3 fields");
        }
        std::string setting = trim(f[0]);
        std::string outcome = trim(f[1]);
        if (!sized) {
            t.num_qubits = setting.size();
            if (t.num_qubits == 0 || t.num_qubits > kMaxQubits) {
                throw std::invalid_argument("counts CSV: bad setting length");
            }
            sized = true;
        }
        check_setting(setting, t.num_qubits);
        if (outcome.size() != t.num_qubits || outcome.find_first_not_of("01") != std::string::npos) {
            throw std::invalid_argument("counts CSV line " + std::to_string(line_no) + ": bad outcome '" + outcome + "'");
        }
        size_t o = 0;
        for (char c : outcome) {
            o = (o << 1) | static_cast<size_t>(c == '1');
        }
        double count = parse_double(trim(f[2]));
        size_t s = t.find(setting);
        if (s == t.settings.size()) {
            t.settings.push_back(setting);
            t.counts.emplace_back(size_t{1} << t.num_qubits, 0.0);
        }
        t.counts[s][o] += count;
    }
    if (!sized) {
        throw std::invalid_argument("counts CSV has no data rows");
    }
    t.validate();
    return t;
}

}  // namespace ionmbqc
