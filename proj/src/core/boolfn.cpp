// Copyright 2026 The Postsel Authors
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

#include "boolfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <sstream>

#include "errors.hpp"
#include "json.hpp"
#include "rational.hpp"

namespace postsel::boolfn {

namespace {

void check_vars(int n, int limit) {
    if (n < 0 || n > limit) {
        throw CapacityError("variable count " + std::to_string(n) + " outside [0, " + std::to_string(limit) + "]");
    }
}

/// In-place unnormalized Walsh-Hadamard butterfly.
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

}  // namespace

uint64_t variable_bit(int n, int i) {
    if (i < 1 || i > n) {
        throw DomainError("variable index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
    }
    return uint64_t{1} << (n - i);
}

std::vector<int> subset_members(int n, Subset s) {
    std::vector<int> out;
    for (int i = 1; i <= n; i++) {
        if (s & variable_bit(n, i)) {
            out.push_back(i);
        }
    }
    return out;
}

Subset subset_from_members(int n, std::span<const int> members) {
    Subset s = 0;
    for (int i : members) {
        s |= variable_bit(n, i);
    }
    return s;
}

TruthTable TruthTable::zeros(int n) {
    check_vars(n, kMaxTableVars);
    return TruthTable{n, std::vector<double>(size_t{1} << n, 0.0)};
}

TruthTable TruthTable::from_function(int n, const std::function<double(uint64_t)> &f) {
    TruthTable tt = zeros(n);
    for (uint64_t x = 0; x < tt.values.size(); x++) {
        tt.values[x] = f(x);
    }
    return tt;
}

TruthTable TruthTable::parse(const std::string &text) {
    std::vector<double> values;
    std::istringstream in(text);
    std::string tok;
    std::vector<std::string> tokens;
    while (in >> tok) {
        tokens.push_back(tok);
    }
    if (tokens.size() == 1 && tokens[0].find_first_not_of("01") == std::string::npos && tokens[0].size() > 1) {
        for (char c : tokens[0]) {
            values.push_back(c == '1' ? 1.0 : 0.0);
        }
    } else {
        for (const auto &t : tokens) {
            try {
                size_t used = 0;
                values.push_back(std::stod(t, &used));
                if (used != t.size()) {
                    throw DomainError("bad truth-table entry '" + t + "'");
                }
            } catch (const std::logic_error &) {
                throw DomainError("bad truth-table entry '" + t + "'");
            }
        }
    }
    if (values.empty() || !std::has_single_bit(values.size())) {
        throw DomainError("truth table length " + std::to_string(values.size()) + " is not a power of two");
    }
    int n = std::countr_zero(values.size());
    check_vars(n, kMaxTableVars);
    return TruthTable{n, std::move(values)};
}

std::string TruthTable::to_text() const {
    if (is_boolean()) {
        std::string s;
        for (double v : values) {
            s.push_back(v != 0 ? '1' : '0');
        }
        return s;
    }
    std::ostringstream out;
    out.precision(17);
    for (size_t i = 0; i < values.size(); i++) {
        out << (i ? " " : "") << values[i];
    }
    return out.str();
}

bool TruthTable::is_boolean() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

bool TruthTable::is_symmetric() const {
    std::vector<std::optional<double>> by_weight(static_cast<size_t>(n) + 1);
    for (uint64_t x = 0; x < values.size(); x++) {
        auto &slot = by_weight[std::popcount(x)];
        if (!slot) {
            slot = values[x];
        } else if (*slot != values[x]) {
            return false;
        }
    }
    return true;
}

TruthTable or_table(int n) {
    return TruthTable::from_function(n, [](uint64_t x) { return x != 0 ? 1.0 : 0.0; });
}

TruthTable and_table(int n) {
    uint64_t all = (uint64_t{1} << n) - 1;
    return TruthTable::from_function(n, [all](uint64_t x) { return x == all ? 1.0 : 0.0; });
}

TruthTable majority_table(int n) {
    return TruthTable::from_function(n, [n](uint64_t x) { return 2 * std::popcount(x) >= n ? 1.0 : 0.0; });
}

TruthTable dictator_table(int n, int i) {
    uint64_t bit = variable_bit(n, i);
    return TruthTable::from_function(n, [bit](uint64_t x) { return (x & bit) ? 1.0 : 0.0; });
}

int MultilinearPoly::degree() const {
    int d = -1;
    for (const auto &[s, c] : coeffs) {
        if (std::abs(c) > kZeroTolerance) {
            d = std::max(d, std::popcount(s));
        }
    }
    return std::max(d, 0);
}

double MultilinearPoly::evaluate(std::span<const double> point) const {
    if (point.size() != static_cast<size_t>(n)) {
        throw DomainError("evaluation point has " + std::to_string(point.size()) + " coordinates, expected " +
                          std::to_string(n));
    }
    double total = 0;
    for (const auto &[s, c] : coeffs) {
        double term = c;
        for (int i = 1; i <= n && term != 0; i++) {
            if (s & variable_bit(n, i)) {
                term *= point[i - 1];
            }
        }
        total += term;
    }
    return total;
}

double MultilinearPoly::evaluate_cube(uint64_t x) const {
    double total = 0;
    for (const auto &[s, c] : coeffs) {
        if ((s & x) == s) {
            total += c;
        }
    }
    return total;
}

std::string MultilinearPoly::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["terms"] = nlohmann::json::array();
    for (const auto &[s, c] : coeffs) {
        j["terms"].push_back({{"subset", subset_members(n, s)}, {"coeff", c}});
    }
    return j.dump();
}

MultilinearPoly MultilinearPoly::from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw DomainError(std::string("polynomial JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("terms")) {
        throw DomainError("polynomial JSON needs fields 'n' and 'terms'");
    }
    MultilinearPoly p;
    p.n = j.at("n").get<int>();
    check_vars(p.n, 63);
    for (const auto &t : j.at("terms")) {
        auto members = t.at("subset").get<std::vector<int>>();
        double c;
        const auto &cj = t.at("coeff");
        if (cj.is_string()) {
            c = to_double(parse_rational(cj.get<std::string>()));
        } else {
            c = cj.get<double>();
        }
        p.coeffs[subset_from_members(p.n, members)] += c;
    }
    return p;
}

MultilinearPoly operator-(const MultilinearPoly &a, const MultilinearPoly &b) {
    if (a.n != b.n) {
        throw DomainError("polynomials over different variable counts");
    }
    MultilinearPoly out = a;
    for (const auto &[s, c] : b.coeffs) {
        out.coeffs[s] -= c;
    }
    return out;
}

MultilinearPoly operator*(double c, const MultilinearPoly &p) {
    MultilinearPoly out = p;
    for (auto &[s, v] : out.coeffs) {
        v *= c;
    }
    return out;
}

MultilinearPoly mobius_interpolate(const TruthTable &tt) {
    std::vector<double> c = tt.values;
    // c(S) = sum_{T subset S} (-1)^{|S - T|} f(T)
    for (size_t h = 1; h < c.size(); h <<= 1) {
        for (size_t s = 0; s < c.size(); s++) {
            if (s & h) {
                c[s] -= c[s ^ h];
            }
        }
    }
    MultilinearPoly p;
    p.n = tt.n;
    for (uint64_t s = 0; s < c.size(); s++) {
        if (c[s] != 0) {
            p.coeffs[s] = c[s];
        }
    }
    return p;
}

double eval_multilinear(const MultilinearPoly &p, std::span<const double> point) {
    return p.evaluate(point);
}

TruthTable evaluate_on_cube(const MultilinearPoly &p) {
    check_vars(p.n, kMaxTableVars);
    std::vector<double> v(size_t{1} << p.n, 0.0);
    for (const auto &[s, c] : p.coeffs) {
        v[s] += c;
    }
    // Zeta transform: value(x) = sum_{S subset x} c(S).
    for (size_t h = 1; h < v.size(); h <<= 1) {
        for (size_t x = 0; x < v.size(); x++) {
            if (x & h) {
                v[x] += v[x ^ h];
            }
        }
    }
    return TruthTable{p.n, std::move(v)};
}

int FourierSpectrum::support_degree(double tolerance) const {
    int d = -1;
    for (uint64_t s = 0; s < coeffs.size(); s++) {
        if (std::abs(coeffs[s]) > tolerance) {
            d = std::max(d, std::popcount(s));
        }
    }
    return d;
}

double FourierSpectrum::squared_mass() const {
    double m = 0;
    for (double c : coeffs) {
        m += c * c;
    }
    return m;
}

FourierSpectrum fourier(const TruthTable &tt) {
    std::vector<double> v = tt.values;
    walsh_hadamard(v);
    double scale = std::ldexp(1.0, -tt.n);
    for (double &c : v) {
        c *= scale;
    }
    return FourierSpectrum{tt.n, std::move(v)};
}

TruthTable inverse_fourier(const FourierSpectrum &spec) {
    std::vector<double> v = spec.coeffs;
    walsh_hadamard(v);
    return TruthTable{spec.n, std::move(v)};
}

double UnivariatePoly::evaluate(double z) const {
    double acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

UnivariatePoly interpolate_univariate(std::span<const std::pair<double, double>> samples) {
    size_t m = samples.size();
    if (m == 0) {
        throw DomainError("no interpolation samples");
    }
    std::vector<double> z(m);
    std::vector<double> dd(m);
    for (size_t i = 0; i < m; i++) {
        z[i] = samples[i].first;
        dd[i] = samples[i].second;
    }
    for (size_t i = 0; i < m; i++) {
        for (size_t j = i + 1; j < m; j++) {
            if (z[i] == z[j]) {
                throw DomainError("duplicate interpolation node " + std::to_string(z[i]));
            }
        }
    }
    // Divided differences in place: dd[i] = f[z_0, ..., z_i].
    for (size_t level = 1; level < m; level++) {
        for (size_t i = m - 1; i >= level; i--) {
            dd[i] = (dd[i] - dd[i - 1]) / (z[i] - z[i - level]);
        }
    }
    // Horner on the Newton form, expanding into monomials.
    std::vector<double> c{dd[m - 1]};
    for (size_t ii = m - 1; ii-- > 0;) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (size_t k = 0; k < c.size(); k++) {
            next[k + 1] += c[k];
            next[k] -= z[ii] * c[k];
        }
        next[0] += dd[ii];
        c = std::move(next);
    }
    while (c.size() > 1 && std::abs(c.back()) <= kZeroTolerance) {
        c.pop_back();
    }
    UnivariatePoly p{std::move(c)};
    for (const auto &[node, value] : samples) {
        double scale = std::max(1.0, std::abs(value));
        if (std::abs(p.evaluate(node) - value) > 1e-8 * scale) {
            throw TheoremViolation("interpolant misses node " + std::to_string(node));
        }
    }
    return p;
}

ExtractedPQ extract_pq(const CoherentAlgorithm &alg) {
    int n = alg.num_inputs();
    check_vars(n, kMaxExtractVars);
    int t = alg.query_count();
    OutputConvention conv = alg.output_convention();
    TruthTable q_vals = TruthTable::zeros(n);
    TruthTable p_vals = TruthTable::zeros(n);
    for (uint64_t x = 0; x < q_vals.values.size(); x++) {
        qsim::QueryCounter counter;
        qsim::PureState s = alg.final_state(bits_from_index(x, n), counter);
        if (counter.count() != static_cast<uint64_t>(t)) {
            throw TheoremViolation("algorithm declared " + std::to_string(t) + " queries but charged " +
                                   std::to_string(counter.count()));
        }
        auto amps = s.amplitudes();
        double qa = 0;
        double pab = 0;
        for (uint64_t i = 0; i < amps.size(); i++) {
            if (conv.a(i)) {
                double pr = amps[i] * amps[i];
                qa += pr;
                if (conv.b(i)) {
                    pab += pr;
                }
            }
        }
        q_vals.values[x] = qa;
        p_vals.values[x] = pab;
    }
    ExtractedPQ out{mobius_interpolate(p_vals), mobius_interpolate(q_vals), t};
    // Simulation noise leaves ~1e-17 residue on high-order coefficients.
    for (auto *poly : {&out.p, &out.q}) {
        std::erase_if(poly->coeffs, [](const auto &kv) { return std::abs(kv.second) <= kZeroTolerance; });
    }
    if (out.p.degree() > 2 * t || out.q.degree() > 2 * t) {
        throw TheoremViolation("extracted degree (" + std::to_string(out.p.degree()) + ", " +
                               std::to_string(out.q.degree()) + ") exceeds 2T = " + std::to_string(2 * t));
    }
    return out;
}

RatioCheck ratio_check(const MultilinearPoly &p, const MultilinearPoly &q, const TruthTable &f, double eps) {
    if (p.n != f.n || q.n != f.n) {
        throw DomainError("P, Q and f must share the variable count");
    }
    TruthTable pv = evaluate_on_cube(p);
    TruthTable qv = evaluate_on_cube(q);
    RatioCheck rc;
    for (uint64_t x = 0; x < f.values.size(); x++) {
        if (std::abs(qv.values[x]) < 1e-12) {
            throw DomainError("Q vanishes at cube point " + format_bits(bits_from_index(x, f.n)));
        }
        double dev = std::abs(pv.values[x] / qv.values[x] - f.values[x]);
        if (dev > rc.max_deviation) {
            rc.max_deviation = dev;
            rc.argmax = x;
        }
    }
    rc.ok = rc.max_deviation <= eps + 1e-12;
    return rc;
}

}  // namespace postsel::boolfn
