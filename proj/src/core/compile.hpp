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
#include <string>
#include <vector>

#include "boolfn.hpp"
#include "qsim.hpp"

namespace postsel::compile {

constexpr double kSpectralTolerance = 1e-10;
constexpr double kFormulaTolerance = 1e-10;

/// A d-query postselection algorithm built from a rational approximation P/Q.
///
/// Qubit 0 selects between the Q and R branches; qubits 1..N hold a subset
/// register. The initial state is proportional to
///   |0> sum_S Qhat(S) |S> + |1> sum_S Rhat(S) |S>,   R = Q - 2P.
/// One subset-phase query of degree d, Hadamards on the register and a
/// postselection on register = 0^N leave c (Q(x)|0> + R(x)|1>) in qubit 0;
/// a final Hadamard maps the sign of R(x)/Q(x) to the output bit b.
struct CompiledAlgorithm {
    int n = 0;
    int d = 0;
    double eps = 0;
    boolfn::FourierSpectrum spec_q;
    boolfn::FourierSpectrum spec_r;
    /// Q(x) and R(x) on the cube.
    boolfn::TruthTable q_values;
    boolfn::TruthTable r_values;
    /// Normalized initial amplitudes over N + 1 qubits.
    std::vector<double> recipe;

    qsim::PureState initial_state() const;
};

/// Builds the algorithm from spectra directly. Throws DegreeOverflowError if
/// either spectrum has mass above 1e-10 on |S| > d, DomainError if Q vanishes
/// somewhere on the cube.
CompiledAlgorithm compile_spectra(boolfn::FourierSpectrum spec_q, boolfn::FourierSpectrum spec_r, int d, double eps);

/// R = Q - 2P, d = max(deg P, deg Q).
CompiledAlgorithm compile_rational(const boolfn::MultilinearPoly &p, const boolfn::MultilinearPoly &q, double eps);

/// Error of the final Hadamard-and-measure step when the postselected qubit is
/// proportional to |0> + ratio |1> and the correct sign is F:
///   F = +1: (1 - ratio)^2 / (2 (1 + ratio^2))
///   F = -1: (1 + ratio)^2 / (2 (1 + ratio^2))
double error_formula(double ratio, int sign_f);

struct CompileRow {
    uint64_t x = 0;
    double success_prob = 0;
    double conditional_error = 0;
    /// R(x)/Q(x)
    double ratio = 0;
    /// f(x) the run was scored against.
    int f_value = 0;
    uint64_t queries = 0;
};

/// Simulates the algorithm on one input. The row is scored against
/// `f_value` when given, otherwise against f(x) = [ratio < 0]. Throws
/// TheoremViolation if the simulated error departs from error_formula by
/// more than 1e-10.
CompileRow run_compiled(const CompiledAlgorithm &alg, const Bits &x, std::optional<int> f_value = std::nullopt);

struct CompileReport {
    std::vector<CompileRow> rows;
    uint64_t queries_charged = 0;
    double max_error = 0;
};

CompileReport run_all(const CompiledAlgorithm &alg, const boolfn::TruthTable *f = nullptr);

/// The compiled algorithm viewed as a coherent algorithm, for extraction:
/// a = (register = 0^N), b = qubit 0 after the final Hadamard.
class CompiledCoherent : public boolfn::CoherentAlgorithm {
   public:
    explicit CompiledCoherent(const CompiledAlgorithm &alg) : alg_(alg) {
    }
    int num_inputs() const override {
        return alg_.n;
    }
    int query_count() const override {
        return alg_.d;
    }
    qsim::PureState final_state(const Bits &x, qsim::QueryCounter &counter) const override;
    boolfn::OutputConvention output_convention() const override;

   private:
    const CompiledAlgorithm &alg_;
};

struct RoundtripReport {
    boolfn::RatioCheck input_check;
    CompileReport compiled;
    int d = 0;
    boolfn::ExtractedPQ extracted;
    int extracted_degree = 0;
    boolfn::RatioCheck extracted_check;
};

/// compile -> run on every input -> extract (P', Q') -> ratio_check at eps.
/// Failures are rethrown as StageError tagged "pre", "compile", "run",
/// "extract" or "check".
RoundtripReport roundtrip(const boolfn::TruthTable &f, const boolfn::MultilinearPoly &p,
                          const boolfn::MultilinearPoly &q, double eps);

}  // namespace postsel::compile
