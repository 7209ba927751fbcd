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

#include "compile.hpp"

#include <bit>
#include <cmath>

#include "errors.hpp"

namespace postsel::compile {

using boolfn::FourierSpectrum;
using boolfn::MultilinearPoly;
using boolfn::TruthTable;
using qsim::PureState;
using qsim::Register;

qsim::PureState CompiledAlgorithm::initial_state() const {
    return PureState::from_amplitudes(n + 1, recipe);
}

CompiledAlgorithm compile_spectra(FourierSpectrum spec_q, FourierSpectrum spec_r, int d, double eps) {
    if (spec_q.n != spec_r.n) {
        throw DomainError("Q and R spectra over different variable counts");
    }
    int n = spec_q.n;
    if (n + 1 > qsim::kMaxQubits) {
        throw CapacityError("compiled algorithm needs " + std::to_string(n + 1) + " qubits");
    }
    if (d < 0 || d > n) {
        throw DomainError("degree " + std::to_string(d) + " outside [0, N]");
    }
    for (const auto *spec : {&spec_q, &spec_r}) {
        int sd = spec->support_degree(kSpectralTolerance);
        if (sd > d) {
            throw DegreeOverflowError("spectrum has mass on a subset of size " + std::to_string(sd) + " > d = " +
                                      std::to_string(d));
        }
    }
    for (auto *spec : {&spec_q, &spec_r}) {
        for (uint64_t s = 0; s < spec->coeffs.size(); s++) {
            if (std::popcount(s) > d) {
                spec->coeffs[s] = 0;
            }
        }
    }

    CompiledAlgorithm alg;
    alg.n = n;
    alg.d = d;
    alg.eps = eps;
    alg.q_values = boolfn::inverse_fourier(spec_q);
    alg.r_values = boolfn::inverse_fourier(spec_r);
    for (uint64_t x = 0; x < alg.q_values.values.size(); x++) {
        if (std::abs(alg.q_values.values[x]) < 1e-12) {
            throw DomainError("Q vanishes at cube point " + format_bits(bits_from_index(x, n)));
        }
    }
    double mass = spec_q.squared_mass() + spec_r.squared_mass();
    if (!(mass > 0)) {
        throw DomainError("recipe state has zero mass");
    }
    double inv = 1.0 / std::sqrt(mass);
    size_t half = size_t{1} << n;
    alg.recipe.assign(2 * half, 0.0);
    for (size_t s = 0; s < half; s++) {
        alg.recipe[s] = spec_q.coeffs[s] * inv;
        alg.recipe[half + s] = spec_r.coeffs[s] * inv;
    }
    alg.spec_q = std::move(spec_q);
    alg.spec_r = std::move(spec_r);
    return alg;
}

CompiledAlgorithm compile_rational(const MultilinearPoly &p, const MultilinearPoly &q, double eps) {
    if (p.n != q.n) {
        throw DomainError("P and Q over different variable counts");
    }
    TruthTable qv = boolfn::evaluate_on_cube(q);
    for (uint64_t x = 0; x < qv.values.size(); x++) {
        if (std::abs(qv.values[x]) < 1e-12) {
            throw DomainError("Q vanishes at cube point " + format_bits(bits_from_index(x, q.n)));
        }
    }
    TruthTable pv = boolfn::evaluate_on_cube(p);
    TruthTable rv = qv;
    for (size_t x = 0; x < rv.values.size(); x++) {
        rv.values[x] = qv.values[x] - 2 * pv.values[x];
    }
    int d = std::max(p.degree(), q.degree());
    CompiledAlgorithm alg = compile_spectra(boolfn::fourier(qv), boolfn::fourier(rv), d, eps);
    // Direct cube values avoid the rounding of a Fourier round trip.
    alg.q_values = std::move(qv);
    alg.r_values = std::move(rv);
    return alg;
}

double error_formula(double ratio, int sign_f) {
    double num = sign_f >= 0 ? (1 - ratio) : (1 + ratio);
    return num * num / (2 * (1 + ratio * ratio));
}

namespace {

/// Runs the circuit up to (not including) the postselection.
PureState run_to_measurement(const CompiledAlgorithm &alg, const Bits &x, qsim::QueryCounter &counter) {
    if (x.size() != static_cast<size_t>(alg.n)) {
        throw DomainError("input length differs from N");
    }
    PureState s = alg.initial_state();
    Register subset{1, alg.n};
    qsim::apply_subset_phase_query(s, x, subset, alg.d, counter);
    qsim::apply_hadamards(s, subset);
    return s;
}

}  // namespace

CompileRow run_compiled(const CompiledAlgorithm &alg, const Bits &x, std::optional<int> f_value) {
    qsim::QueryCounter counter;
    PureState s = run_to_measurement(alg, x, counter);
    int total = alg.n + 1;
    CompileRow row;
    row.x = index_from_bits(x);
    row.success_prob = qsim::postselect(s, qsim::register_equals(total, Register{1, alg.n}, 0));
    qsim::apply_1q_gate(s, 0, qsim::kHadamard);
    double p_b1 = qsim::measure_distribution(s, Register{0, 1}).probability(1);

    row.ratio = alg.r_values.values[row.x] / alg.q_values.values[row.x];
    row.f_value = f_value ? *f_value : (row.ratio < 0 ? 1 : 0);
    int sign_f = 1 - 2 * row.f_value;
    row.conditional_error = row.f_value == 1 ? 1 - p_b1 : p_b1;
    row.queries = counter.count();
    double predicted = error_formula(row.ratio, sign_f);
    if (std::abs(row.conditional_error - predicted) > kFormulaTolerance) {
        throw TheoremViolation("simulated error " + std::to_string(row.conditional_error) +
                               " departs from the closed form " + std::to_string(predicted));
    }
    return row;
}

CompileReport run_all(const CompiledAlgorithm &alg, const TruthTable *f) {
    CompileReport rep;
    for (uint64_t x = 0; x < (uint64_t{1} << alg.n); x++) {
        std::optional<int> fx;
        if (f) {
            fx = f->values[x] != 0 ? 1 : 0;
        }
        CompileRow row = run_compiled(alg, bits_from_index(x, alg.n), fx);
        rep.max_error = std::max(rep.max_error, row.conditional_error);
        rep.queries_charged = std::max(rep.queries_charged, row.queries);
        rep.rows.push_back(row);
    }
    return rep;
}

qsim::PureState CompiledCoherent::final_state(const Bits &x, qsim::QueryCounter &counter) const {
    PureState s = run_to_measurement(alg_, x, counter);
    qsim::apply_1q_gate(s, 0, qsim::kHadamard);
    return s;
}

boolfn::OutputConvention CompiledCoherent::output_convention() const {
    int total = alg_.n + 1;
    return {qsim::register_equals(total, Register{1, alg_.n}, 0), qsim::qubit_equals(total, 0, 1)};
}

RoundtripReport roundtrip(const TruthTable &f, const MultilinearPoly &p, const MultilinearPoly &q, double eps) {
    RoundtripReport rep;
    auto stage = [](const char *name, auto &&fn) {
        try {
            return fn();
        } catch (const StageError &) {
            throw;
        } catch (const Error &e) {
            throw StageError(name, e.what());
        }
    };
    rep.input_check = stage("pre", [&] { return boolfn::ratio_check(p, q, f, eps); });
    if (!rep.input_check.ok) {
        throw StageError("pre", "P/Q deviates from f by " + std::to_string(rep.input_check.max_deviation) +
                                    " > eps = " + std::to_string(eps));
    }
    CompiledAlgorithm alg = stage("compile", [&] { return compile_rational(p, q, eps); });
    rep.d = alg.d;
    rep.compiled = stage("run", [&] { return run_all(alg, &f); });
    if (rep.compiled.max_error > eps + 1e-12) {
        throw StageError("run", "compiled error " + std::to_string(rep.compiled.max_error) + " exceeds eps");
    }
    CompiledCoherent coherent(alg);
    rep.extracted = stage("extract", [&] { return boolfn::extract_pq(coherent); });
    rep.extracted_degree = std::max(rep.extracted.p.degree(), rep.extracted.q.degree());
    if (rep.extracted_degree > 2 * alg.d) {
        throw StageError("extract", "extracted degree exceeds 2d");
    }
    rep.extracted_check = stage("check", [&] { return boolfn::ratio_check(rep.extracted.p, rep.extracted.q, f, eps); });
    if (!rep.extracted_check.ok) {
        throw StageError("check", "extracted pair deviates by " + std::to_string(rep.extracted_check.max_deviation));
    }
    return rep;
}

}  // namespace postsel::compile
