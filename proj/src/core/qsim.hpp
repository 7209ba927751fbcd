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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace postsel {

/// Input bit string x_1..x_N stored at positions 0..N-1.
using Bits = std::vector<uint8_t>;

size_t hamming_weight(const Bits &x);

/// Parses a string of '0'/'1' characters. Throws DomainError on anything else.
Bits parse_bits(std::string_view text);
std::string format_bits(const Bits &x);

/// Bits of `value` read as an N-bit string with x_1 the most significant bit.
Bits bits_from_index(uint64_t value, int n);
uint64_t index_from_bits(const Bits &x);

}  // namespace postsel

namespace postsel::qsim {

constexpr int kMaxQubits = 24;
constexpr double kNormTolerance = 1e-9;
constexpr double kOrthogonalityTolerance = 1e-10;
constexpr double kSupportTolerance = 1e-12;
constexpr double kPostselectionZero = 1e-15;

/// Row-major 2x2 real matrix.
using Gate2 = std::array<double, 4>;

extern const Gate2 kHadamard;

/// Number of oracle queries charged so far. Only ever grows.
class QueryCounter {
   public:
    void charge(uint64_t queries) {
        count_ += queries;
    }
    uint64_t count() const {
        return count_;
    }

   private:
    uint64_t count_ = 0;
};

/// Contiguous run of qubits. `first` holds the most significant bit of the
/// register value.
struct Register {
    int first = 0;
    int width = 0;
};

/// How an index register value addresses input positions.
enum class Addressing {
    /// Values 1..N address x_1..x_N; every other value is an idle branch.
    OneBased,
    /// Values 0..N-1 address x_1..x_N; values >= N are idle.
    ZeroBased,
};

/// Dense real state vector. Qubit 0 is the most significant bit of the basis
/// index, so basis index b has qubit q equal to (b >> (n - 1 - q)) & 1.
class PureState {
   public:
    static PureState basis(int num_qubits, uint64_t index);
    /// Takes ownership of an already-normalized vector (norm checked to 1e-9).
    static PureState from_amplitudes(int num_qubits, std::vector<double> amplitudes);
    /// Normalizes an arbitrary nonzero vector.
    static PureState normalized(int num_qubits, std::vector<double> amplitudes);

    int num_qubits() const {
        return num_qubits_;
    }
    size_t dim() const {
        return amplitudes_.size();
    }
    std::span<const double> amplitudes() const {
        return amplitudes_;
    }
    double amplitude(uint64_t index) const {
        return amplitudes_[index];
    }
    double norm() const;
    uint64_t qubit_mask(int q) const {
        return uint64_t{1} << (num_qubits_ - 1 - q);
    }
    uint64_t register_value(uint64_t index, Register reg) const;

    std::string to_json() const;

   private:
    PureState(int num_qubits, std::vector<double> amplitudes);
    friend void apply_1q_gate(PureState &, int, const Gate2 &, std::optional<int>);
    friend void apply_bit_query(PureState &, const Bits &, Register, int, QueryCounter &, Addressing);
    friend void apply_subset_phase_query(PureState &, const Bits &, Register, int, QueryCounter &);
    friend double postselect(PureState &, const std::function<bool(uint64_t)> &);

    int num_qubits_;
    std::vector<double> amplitudes_;
};

using BasisPredicate = std::function<bool(uint64_t)>;

/// Predicate "qubit q of an n-qubit basis index equals value".
BasisPredicate qubit_equals(int num_qubits, int q, int value);
/// Predicate "register of an n-qubit basis index holds value".
BasisPredicate register_equals(int num_qubits, Register reg, uint64_t value);

/// Applies G to qubit q, restricted to the control=1 subspace when a control is given.
void apply_1q_gate(PureState &s, int q, const Gate2 &gate, std::optional<int> control = std::nullopt);
void apply_hadamards(PureState &s, Register reg);

/// |i>|b> -> |i>|b xor x_i>, charging one query.
void apply_bit_query(
    PureState &s,
    const Bits &x,
    Register index,
    int target,
    QueryCounter &counter,
    Addressing addressing = Addressing::OneBased);

/// |S> -> (-1)^{x.S} |S> on an N-qubit subset register, charging `degree`
/// queries. Throws DegreeOverflowError if any supported |S| exceeds `degree`.
void apply_subset_phase_query(PureState &s, const Bits &x, Register subset, int degree, QueryCounter &counter);

/// Projects onto the predicate-true subspace and renormalizes. Returns the
/// probability mass of the projection.
double postselect(PureState &s, const BasisPredicate &pred);

/// left (x) right, with `left` occupying the most significant qubits.
PureState tensor(const PureState &left, const PureState &right);

struct Distribution {
    /// (register value, probability) for every outcome of nonzero probability,
    /// ascending by value.
    std::vector<std::pair<uint64_t, double>> outcomes;

    double probability(uint64_t value) const;
};

Distribution measure_distribution(const PureState &s, Register reg);

struct SampledOutcome {
    uint64_t value;
    PureState collapsed;
};

/// Draws one outcome of `reg`; `collapsed` is `s` projected onto it.
SampledOutcome measure_sample(const PureState &s, Register reg, std::mt19937_64 &rng);

}  // namespace postsel::qsim
