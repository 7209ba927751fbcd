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

#include <optional>
#include <random>

#include "boolfn.hpp"
#include "qsim.hpp"

namespace postsel::constructions {

/// Real single-qubit state amp0|0> + amp1|1>.
struct QubitState {
    double amp0 = 1;
    double amp1 = 0;

    /// Flips the global sign so that the first nonzero amplitude is positive.
    QubitState sign_normalized() const;
};

/// The (alpha, beta) weights of the one-query postselected qubit. Both are
/// strictly positive with alpha^2 + beta^2 = 1.
class ABPair {
   public:
    ABPair(double alpha, double beta);
    /// alpha = rho / sqrt(1 + rho^2), beta = 1 / sqrt(1 + rho^2).
    static ABPair from_ratio(double rho);

    double alpha() const {
        return alpha_;
    }
    double beta() const {
        return beta_;
    }

   private:
    double alpha_;
    double beta_;
};

/// Normalization of (alpha z, beta (N - 2z)/sqrt2) for a real weight z in [0, N].
QubitState aaronson_qubit(int n, double weight, const ABPair &ab);

/// Squared overlap with |+>: (amp0 + amp1)^2 / 2.
double plus_overlap_sq(const QubitState &q);

struct CircuitQubit {
    /// Resulting qubit, global sign normalized.
    QubitState qubit;
    /// Last qubit after the first postselection, before the ancilla is added.
    /// Proportional to (N - |x|)|0> + |x||1>.
    QubitState psi;
    /// Product of the two postselection success probabilities.
    double cumulative_postselect_prob = 0;
};

/// Gate-level simulation of the one-query construction: Hadamards on the
/// index register, one bit query, Hadamards, postselect index = 0, prepend
/// an ancilla alpha|0> + beta|1>, controlled-H onto the query qubit,
/// postselect the query qubit on 1. Requires N = |x| a power of two.
CircuitQubit aaronson_qubit_circuit(const Bits &x, const ABPair &ab, qsim::QueryCounter &counter);

enum class DemoMode { Exact, Sample };

struct OrDemoResult {
    double success_prob = 0;
    /// Pr[b != OR(x) | a = 1].
    double conditional_error = 0;
    /// Sample mode: the drawn output bit. Exact mode: the more likely bit.
    int output = 0;
    uint64_t queries = 0;
};

/// The one-query postselected OR algorithm. The (N+1)-valued first register
/// uses ceil(log2(N+1)) qubits; value 0 is the eps0 branch and value i
/// addresses x_i. Output b = 1 iff the register value is at least 1.
OrDemoResult or_postselect_demo(const Bits &x, double eps0, DemoMode mode, std::mt19937_64 *rng = nullptr);

/// Qubit count of the OR demo's index register.
int or_demo_register_width(size_t n);

/// State of the OR demo just after the query (before postselection), with
/// the target as the last qubit.
qsim::PureState or_demo_state(const Bits &x, double eps0, qsim::QueryCounter &counter);

/// The OR demo as a coherent algorithm: a = target qubit, b = (register value >= 1).
class OrDemoAlgorithm : public boolfn::CoherentAlgorithm {
   public:
    OrDemoAlgorithm(int n, double eps0);

    int num_inputs() const override {
        return n_;
    }
    int query_count() const override {
        return 1;
    }
    qsim::PureState final_state(const Bits &x, qsim::QueryCounter &counter) const override;
    boolfn::OutputConvention output_convention() const override;

   private:
    int n_;
    double eps0_;
};

}  // namespace postsel::constructions
