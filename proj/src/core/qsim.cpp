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

#include "qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "errors.hpp"
#include "json.hpp"
#include "random.hpp"

namespace postsel {

size_t hamming_weight(const Bits &x) {
    return static_cast<size_t>(std::count(x.begin(), x.end(), uint8_t{1}));
}

Bits parse_bits(std::string_view text) {
    Bits x;
    x.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw DomainError("bit string may only contain '0' and '1', got '" + std::string(text) + "'");
        }
        x.push_back(static_cast<uint8_t>(c - '0'));
    }
    return x;
}

std::string format_bits(const Bits &x) {
    std::string out;
    out.reserve(x.size());
    for (auto b : x) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

Bits bits_from_index(uint64_t value, int n) {
    Bits x(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        x[i] = static_cast<uint8_t>((value >> (n - 1 - i)) & 1);
    }
    return x;
}

uint64_t index_from_bits(const Bits &x) {
    uint64_t v = 0;
    for (auto b : x) {
        v = (v << 1) | (b & 1);
    }
    return v;
}

}  // namespace postsel

namespace postsel::qsim {

const Gate2 kHadamard = {M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2};

namespace {

void check_qubit(const PureState &s, int q, const char *what) {
    if (q < 0 || q >= s.num_qubits()) {
        throw DomainError(std::string(what) + " qubit " + std::to_string(q) + " out of range for " +
                          std::to_string(s.num_qubits()) + " qubits");
    }
}

void check_register(const PureState &s, Register reg) {
    if (reg.width < 0 || reg.first < 0 || reg.first + reg.width > s.num_qubits()) {
        throw DomainError("register [" + std::to_string(reg.first) + ", +" + std::to_string(reg.width) +
                          ") does not fit in " + std::to_string(s.num_qubits()) + " qubits");
    }
}

bool in_register(Register reg, int q) {
    return q >= reg.first && q < reg.first + reg.width;
}

void assert_normalized(const PureState &s, const char *op) {
    double n = s.norm();
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw TheoremViolation(std::string(op) + " broke normalization: norm " + std::to_string(n));
    }
}

}  // namespace

PureState::PureState(int num_qubits, std::vector<double> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
}

PureState PureState::basis(int num_qubits, uint64_t index) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw CapacityError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
    uint64_t dim = uint64_t{1} << num_qubits;
    if (index >= dim) {
        throw DomainError("basis index " + std::to_string(index) + " out of range for " +
                          std::to_string(num_qubits) + " qubits");
    }
    std::vector<double> amps(dim, 0.0);
    amps[index] = 1.0;
    return PureState(num_qubits, std::move(amps));
}

PureState PureState::from_amplitudes(int num_qubits, std::vector<double> amplitudes) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw CapacityError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
    if (amplitudes.size() != (size_t{1} << num_qubits)) {
        throw DomainError("amplitude vector length " + std::to_string(amplitudes.size()) + " is not 2^" +
                          std::to_string(num_qubits));
    }
    PureState s(num_qubits, std::move(amplitudes));
    if (std::abs(s.norm() - 1.0) > kNormTolerance) {
        throw DomainError("amplitudes are not normalized (norm " + std::to_string(s.norm()) + ")");
    }
    return s;
}

PureState PureState::normalized(int num_qubits, std::vector<double> amplitudes) {
    double sq = 0;
    for (double a : amplitudes) {
        sq += a * a;
    }
    if (!(sq > 0)) {
        throw DomainError("cannot normalize the zero vector");
    }
    double inv = 1.0 / std::sqrt(sq);
    for (double &a : amplitudes) {
        a *= inv;
    }
    return from_amplitudes(num_qubits, std::move(amplitudes));
}

double PureState::norm() const {
    double sq = 0;
    for (double a : amplitudes_) {
        sq += a * a;
    }
    return std::sqrt(sq);
}

uint64_t PureState::register_value(uint64_t index, Register reg) const {
    int shift = num_qubits_ - reg.first - reg.width;
    uint64_t mask = reg.width >= 64 ? ~uint64_t{0} : ((uint64_t{1} << reg.width) - 1);
    return (index >> shift) & mask;
}

std::string PureState::to_json() const {
    nlohmann::json j;
    j["num_qubits"] = num_qubits_;
    j["amplitudes"] = amplitudes_;
    return j.dump();
}

BasisPredicate qubit_equals(int num_qubits, int q, int value) {
    uint64_t mask = uint64_t{1} << (num_qubits - 1 - q);
    uint64_t want = value ? mask : 0;
    return [mask, want](uint64_t idx) { return (idx & mask) == want; };
}

BasisPredicate register_equals(int num_qubits, Register reg, uint64_t value) {
    int shift = num_qubits - reg.first - reg.width;
    uint64_t mask = ((uint64_t{1} << reg.width) - 1) << shift;
    uint64_t want = value << shift;
    return [mask, want](uint64_t idx) { return (idx & mask) == want; };
}

void apply_1q_gate(PureState &s, int q, const Gate2 &g, std::optional<int> control) {
    check_qubit(s, q, "target");
    if (control) {
        check_qubit(s, *control, "control");
        if (*control == q) {
            throw DomainError("control and target coincide");
        }
    }
    // G^T G = I
    double c00 = g[0] * g[0] + g[2] * g[2];
    double c01 = g[0] * g[1] + g[2] * g[3];
    double c11 = g[1] * g[1] + g[3] * g[3];
    if (std::abs(c00 - 1) > kOrthogonalityTolerance || std::abs(c01) > kOrthogonalityTolerance ||
        std::abs(c11 - 1) > kOrthogonalityTolerance) {
        throw DomainError("gate is not orthogonal");
    }
    uint64_t tmask = s.qubit_mask(q);
    uint64_t cmask = control ? s.qubit_mask(*control) : 0;
    auto &a = s.amplitudes_;
    for (uint64_t i = 0; i < a.size(); i++) {
        if ((i & tmask) || (i & cmask) != cmask) {
            continue;
        }
        uint64_t j = i | tmask;
        double a0 = a[i];
        double a1 = a[j];
        a[i] = g[0] * a0 + g[1] * a1;
        a[j] = g[2] * a0 + g[3] * a1;
    }
    assert_normalized(s, "apply_1q_gate");
}

void apply_hadamards(PureState &s, Register reg) {
    check_register(s, reg);
    for (int q = reg.first; q < reg.first + reg.width; q++) {
        apply_1q_gate(s, q, kHadamard);
    }
}

void apply_bit_query(PureState &s, const Bits &x, Register index, int target, QueryCounter &counter,
                     Addressing addressing) {
    check_register(s, index);
    check_qubit(s, target, "target");
    if (in_register(index, target)) {
        throw DomainError("query target lies inside the index register");
    }
    uint64_t n = x.size();
    uint64_t capacity = index.width >= 63 ? ~uint64_t{0} : (uint64_t{1} << index.width);
    uint64_t needed = addressing == Addressing::OneBased ? n + 1 : n;
    if (capacity < needed) {
        throw DomainError("index register of width " + std::to_string(index.width) + " cannot address " +
                          std::to_string(n) + " input positions");
    }
    uint64_t tmask = s.qubit_mask(target);
    auto &a = s.amplitudes_;
    for (uint64_t i = 0; i < a.size(); i++) {
        if (i & tmask) {
            continue;
        }
        uint64_t v = s.register_value(i, index);
        uint64_t pos;
        if (addressing == Addressing::OneBased) {
            if (v < 1 || v > n) {
                continue;
            }
            pos = v - 1;
        } else {
            if (v >= n) {
                continue;
            }
            pos = v;
        }
        if (x[pos]) {
            std::swap(a[i], a[i | tmask]);
        }
    }
    counter.charge(1);
    assert_normalized(s, "apply_bit_query");
}

void apply_subset_phase_query(PureState &s, const Bits &x, Register subset, int degree, QueryCounter &counter) {
    check_register(s, subset);
    if (static_cast<size_t>(subset.width) != x.size()) {
        throw DomainError("subset register width " + std::to_string(subset.width) + " differs from input length " +
                          std::to_string(x.size()));
    }
    if (degree < 0) {
        throw DomainError("negative degree budget");
    }
    uint64_t xmask = index_from_bits(x);
    auto &a = s.amplitudes_;
    for (uint64_t i = 0; i < a.size(); i++) {
        if (std::abs(a[i]) < kSupportTolerance) {
            continue;
        }
        uint64_t sv = s.register_value(i, subset);
        if (std::popcount(sv) > degree) {
            throw DegreeOverflowError("state has support on a subset of size " + std::to_string(std::popcount(sv)) +
                                      " > degree " + std::to_string(degree));
        }
    }
    for (uint64_t i = 0; i < a.size(); i++) {
        if (std::popcount(s.register_value(i, subset) & xmask) & 1) {
            a[i] = -a[i];
        }
    }
    counter.charge(static_cast<uint64_t>(degree));
    assert_normalized(s, "apply_subset_phase_query");
}

double postselect(PureState &s, const BasisPredicate &pred) {
    auto &a = s.amplitudes_;
    double mass = 0;
    for (uint64_t i = 0; i < a.size(); i++) {
        if (pred(i)) {
            mass += a[i] * a[i];
        } else {
            a[i] = 0;
        }
    }
    if (mass < kPostselectionZero) {
        throw PostselectionImpossible("postselected outcome has probability " + std::to_string(mass));
    }
    double inv = 1.0 / std::sqrt(mass);
    for (double &v : a) {
        v *= inv;
    }
    assert_normalized(s, "postselect");
    return mass;
}

PureState tensor(const PureState &left, const PureState &right) {
    int n = left.num_qubits() + right.num_qubits();
    if (n > kMaxQubits) {
        throw CapacityError("tensor product needs " + std::to_string(n) + " qubits");
    }
    std::vector<double> amps;
    amps.reserve(left.dim() * right.dim());
    for (double l : left.amplitudes()) {
        for (double r : right.amplitudes()) {
            amps.push_back(l * r);
        }
    }
    return PureState::from_amplitudes(n, std::move(amps));
}

double Distribution::probability(uint64_t value) const {
    auto it = std::lower_bound(outcomes.begin(), outcomes.end(), value,
                               [](const auto &o, uint64_t v) { return o.first < v; });
    return it != outcomes.end() && it->first == value ? it->second : 0.0;
}

Distribution measure_distribution(const PureState &s, Register reg) {
    check_register(s, reg);
    std::vector<double> probs(size_t{1} << reg.width, 0.0);
    auto amps = s.amplitudes();
    for (uint64_t i = 0; i < amps.size(); i++) {
        probs[s.register_value(i, reg)] += amps[i] * amps[i];
    }
    Distribution d;
    for (uint64_t v = 0; v < probs.size(); v++) {
        if (probs[v] > 0) {
            d.outcomes.emplace_back(v, probs[v]);
        }
    }
    return d;
}

SampledOutcome measure_sample(const PureState &s, Register reg, std::mt19937_64 &rng) {
    Distribution d = measure_distribution(s, reg);
    double u = uniform01(rng);
    double acc = 0;
    uint64_t chosen = d.outcomes.back().first;
    for (const auto &[v, p] : d.outcomes) {
        acc += p;
        if (u < acc) {
            chosen = v;
            break;
        }
    }
    PureState collapsed = s;
    postselect(collapsed, register_equals(s.num_qubits(), reg, chosen));
    return {chosen, std::move(collapsed)};
}

}  // namespace postsel::qsim
