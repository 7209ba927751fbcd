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

#include "constructions.hpp"

#include <bit>
#include <cmath>

#include "errors.hpp"

namespace postsel::constructions {

using qsim::PureState;
using qsim::Register;

QubitState QubitState::sign_normalized() const {
    double lead = amp0 != 0 ? amp0 : amp1;
    return lead < 0 ? QubitState{-amp0, -amp1} : *this;
}

ABPair::ABPair(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0) || !(beta > 0)) {
        throw DomainError("alpha and beta must both be strictly positive");
    }
    if (std::abs(alpha * alpha + beta * beta - 1) > 1e-10) {
        throw DomainError("alpha^2 + beta^2 must equal 1");
    }
}

ABPair ABPair::from_ratio(double rho) {
    if (!(rho > 0) || !std::isfinite(rho)) {
        throw DomainError("alpha/beta ratio must be positive and finite");
    }
    double inv = 1.0 / std::sqrt(1 + rho * rho);
    return ABPair(rho * inv, inv);
}

QubitState aaronson_qubit(int n, double weight, const ABPair &ab) {
    if (n < 1) {
        throw DomainError("N must be positive");
    }
    if (!(weight >= 0 && weight <= n)) {
        throw DomainError("weight " + std::to_string(weight) + " outside [0, " + std::to_string(n) + "]");
    }
    double a0 = ab.alpha() * weight;
    double a1 = ab.beta() * (n - 2 * weight) * M_SQRT1_2;
    // a0 = 0 forces weight = 0, where a1 = beta N / sqrt2 > 0.
    double c = 1.0 / std::sqrt(a0 * a0 + a1 * a1);
    return {a0 * c, a1 * c};
}

double plus_overlap_sq(const QubitState &q) {
    double s = q.amp0 + q.amp1;
    return s * s / 2;
}

CircuitQubit aaronson_qubit_circuit(const Bits &x, const ABPair &ab, qsim::QueryCounter &counter) {
    size_t n_inputs = x.size();
    if (n_inputs < 2 || !std::has_single_bit(n_inputs)) {
        throw DomainError("circuit construction needs N a power of two (N >= 2), got " + std::to_string(n_inputs));
    }
    int n = std::countr_zero(n_inputs);
    Register index{0, n};
    int query_qubit = n;

    PureState s = PureState::basis(n + 1, 0);
    qsim::apply_hadamards(s, index);
    qsim::apply_bit_query(s, x, index, query_qubit, counter, qsim::Addressing::ZeroBased);
    qsim::apply_hadamards(s, index);
    double p1 = qsim::postselect(s, qsim::register_equals(n + 1, index, 0));

    CircuitQubit out;
    out.psi = {s.amplitude(0), s.amplitude(1)};

    PureState anc = PureState::from_amplitudes(1, {ab.alpha(), ab.beta()});
    PureState t = qsim::tensor(anc, s);
    int total = n + 2;
    int target = total - 1;
    qsim::apply_1q_gate(t, target, qsim::kHadamard, 0);
    double p2 = qsim::postselect(t, qsim::qubit_equals(total, target, 1));

    // Every surviving basis state is |anc>|0^n>|1>.
    uint64_t anc_mask = t.qubit_mask(0);
    uint64_t rest = t.qubit_mask(target);
    out.qubit = QubitState{t.amplitude(rest), t.amplitude(rest | anc_mask)}.sign_normalized();
    out.cumulative_postselect_prob = p1 * p2;
    return out;
}

int or_demo_register_width(size_t n) {
    return static_cast<int>(std::bit_width(n));
}

PureState or_demo_state(const Bits &x, double eps0, qsim::QueryCounter &counter) {
    if (!(eps0 > 0 && eps0 < 1)) {
        throw DomainError("eps0 must lie in (0, 1)");
    }
    size_t n = x.size();
    if (n < 1) {
        throw DomainError("empty input");
    }
    int width = or_demo_register_width(n);
    int total = width + 1;
    if (total > qsim::kMaxQubits) {
        throw CapacityError("OR demo needs " + std::to_string(total) + " qubits");
    }
    std::vector<double> amps(size_t{1} << total, 0.0);
    // |0>|1> carries eps0; |i>|0> for i = 1..N carries sqrt((1 - eps0^2)/N).
    amps[1] = eps0;
    double branch = std::sqrt((1 - eps0 * eps0) / static_cast<double>(n));
    for (uint64_t i = 1; i <= n; i++) {
        amps[i << 1] = branch;
    }
    PureState s = PureState::normalized(total, std::move(amps));
    qsim::apply_bit_query(s, x, Register{0, width}, width, counter, qsim::Addressing::OneBased);
    return s;
}

OrDemoResult or_postselect_demo(const Bits &x, double eps0, DemoMode mode, std::mt19937_64 *rng) {
    qsim::QueryCounter counter;
    PureState s = or_demo_state(x, eps0, counter);
    int width = or_demo_register_width(x.size());
    int total = width + 1;
    OrDemoResult r;
    r.success_prob = qsim::postselect(s, qsim::qubit_equals(total, width, 1));
    r.queries = counter.count();

    auto dist = qsim::measure_distribution(s, Register{0, width});
    double p_b1 = 1 - dist.probability(0);
    int truth = hamming_weight(x) > 0 ? 1 : 0;
    r.conditional_error = truth ? 1 - p_b1 : p_b1;
    if (mode == DemoMode::Sample) {
        if (rng == nullptr) {
            throw DomainError("sample mode needs a generator");
        }
        auto drawn = qsim::measure_sample(s, Register{0, width}, *rng);
        r.output = drawn.value >= 1 ? 1 : 0;
    } else {
        r.output = p_b1 >= 0.5 ? 1 : 0;
    }
    return r;
}

OrDemoAlgorithm::OrDemoAlgorithm(int n, double eps0) : n_(n), eps0_(eps0) {
    if (n < 1) {
        throw DomainError("N must be positive");
    }
    if (!(eps0 > 0 && eps0 < 1)) {
        throw DomainError("eps0 must lie in (0, 1)");
    }
}

PureState OrDemoAlgorithm::final_state(const Bits &x, qsim::QueryCounter &counter) const {
    if (x.size() != static_cast<size_t>(n_)) {
        throw DomainError("input length differs from N");
    }
    return or_demo_state(x, eps0_, counter);
}

boolfn::OutputConvention OrDemoAlgorithm::output_convention() const {
    int width = or_demo_register_width(static_cast<size_t>(n_));
    int total = width + 1;
    return {qsim::qubit_equals(total, width, 1), [](uint64_t idx) { return (idx >> 1) >= 1; }};
}

}  // namespace postsel::constructions
