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

#include <gtest/gtest.h>

#include <cmath>

#include "boolfn.hpp"
#include "compile.hpp"
#include "errors.hpp"

using namespace postsel;
using namespace postsel::boolfn;
using namespace postsel::compile;

namespace {

/// The degree-1 OR_2 witness P = x1 + x2, Q = eps + x1 + x2.
std::pair<MultilinearPoly, MultilinearPoly> or2_witness(double eps) {
    MultilinearPoly p, q;
    p.n = q.n = 2;
    q.coeffs[0] = eps;
    for (Subset s : {Subset{0b10}, Subset{0b01}}) {
        p.coeffs[s] = 1;
        q.coeffs[s] = 1;
    }
    return {p, q};
}

MultilinearPoly constant(int n, double c) {
    MultilinearPoly p;
    p.n = n;
    p.coeffs[0] = c;
    return p;
}

}  // namespace

TEST(ErrorFormula, Values) {
    EXPECT_DOUBLE_EQ(error_formula(1, 1), 0);
    EXPECT_NEAR(error_formula(0.8, 1), 0.04 / 3.28, 1e-15);
    EXPECT_NEAR(error_formula(0.8, 1), 0.0121951, 1e-7);
    EXPECT_DOUBLE_EQ(error_formula(-1, -1), 0);
    // Symmetry under (ratio, F) -> (-ratio, -F).
    for (double r : {-3.0, -0.5, 0.0, 0.2, 7.0}) {
        EXPECT_NEAR(error_formula(r, 1), error_formula(-r, -1), 1e-15);
    }
}

TEST(Compile, Or2WitnessRunsWithinEps) {
    auto [p, q] = or2_witness(0.05);
    CompiledAlgorithm alg = compile_rational(p, q, 0.05);
    EXPECT_EQ(alg.d, 1);
    TruthTable f = or_table(2);
    CompileReport rep = run_all(alg, &f);
    ASSERT_EQ(rep.rows.size(), 4u);
    EXPECT_LE(rep.max_error, 0.05);
    for (const auto &row : rep.rows) {
        EXPECT_EQ(row.queries, 1u);
        EXPECT_NEAR(row.conditional_error, error_formula(row.ratio, row.f_value ? -1 : 1), 1e-10);
        EXPECT_GT(row.success_prob, 0);
    }
    // x = 00: R/Q = (Q - 2P)/Q = 1 exactly.
    EXPECT_DOUBLE_EQ(rep.rows[0].ratio, 1);
    EXPECT_NEAR(rep.rows[0].conditional_error, 0, 1e-15);
}

TEST(Compile, RecipeIsNormalizedAndMatchesSpectra) {
    auto [p, q] = or2_witness(0.1);
    CompiledAlgorithm alg = compile_rational(p, q, 0.1);
    double norm = 0;
    for (double a : alg.recipe) {
        norm += a * a;
    }
    EXPECT_NEAR(norm, 1, 1e-12);
    // Qubit 0 = 0 half is proportional to Qhat, qubit 0 = 1 half to Rhat.
    size_t half = alg.recipe.size() / 2;
    double scale = alg.recipe[0] / alg.spec_q.at(0);
    for (Subset s = 0; s < half; s++) {
        EXPECT_NEAR(alg.recipe[s], scale * alg.spec_q.at(s), 1e-12);
        EXPECT_NEAR(alg.recipe[half + s], scale * alg.spec_r.at(s), 1e-12);
    }
}

TEST(Compile, SpectrumBeyondDegreeOverflows) {
    FourierSpectrum q = fourier(TruthTable::from_function(2, [](uint64_t) { return 1.0; }));
    FourierSpectrum r = q;
    r.coeffs[0b11] = 0.25;
    EXPECT_THROW(compile_spectra(q, r, 1, 0.1), DegreeOverflowError);
    EXPECT_NO_THROW(compile_spectra(q, r, 2, 0.1));
}

TEST(Compile, VanishingDenominatorRejected) {
    MultilinearPoly q;
    q.n = 2;
    q.coeffs[0b10] = 1;
    EXPECT_THROW(compile_rational(constant(2, 0), q, 0.1), DomainError);
}

TEST(Compile, InfersSignWhenUnscored) {
    auto [p, q] = or2_witness(0.05);
    CompiledAlgorithm alg = compile_rational(p, q, 0.05);
    for (uint64_t x = 0; x < 4; x++) {
        CompileRow row = run_compiled(alg, bits_from_index(x, 2));
        EXPECT_EQ(row.f_value, row.ratio < 0 ? 1 : 0);
    }
}

TEST(Roundtrip, Or2WitnessPassesAllStages) {
    auto [p, q] = or2_witness(0.05);
    RoundtripReport rep = roundtrip(or_table(2), p, q, 0.05);
    EXPECT_TRUE(rep.input_check.ok);
    EXPECT_TRUE(rep.extracted_check.ok);
    EXPECT_EQ(rep.d, 1);
    EXPECT_LE(rep.extracted_degree, 2);
    EXPECT_LE(rep.compiled.max_error, 0.05);
}

TEST(Roundtrip, ConstantFunction) {
    TruthTable one = TruthTable::from_function(2, [](uint64_t) { return 1.0; });
    RoundtripReport rep = roundtrip(one, constant(2, 1), constant(2, 1), 0.01);
    EXPECT_TRUE(rep.extracted_check.ok);
    EXPECT_EQ(rep.d, 0);
}

TEST(Roundtrip, BrokenWitnessFailsAtPre) {
    auto [p, q] = or2_witness(0.05);
    try {
        roundtrip(or_table(2), p, q, 0.001);
        FAIL() << "expected StageError";
    } catch (const StageError &e) {
        EXPECT_EQ(e.stage, "pre");
    }
}

TEST(Roundtrip, ExactInterpolantAtFullDegree) {
    TruthTable f = majority_table(3);
    RoundtripReport rep = roundtrip(f, mobius_interpolate(f), constant(3, 1), 0.01);
    EXPECT_EQ(rep.d, 3);
    EXPECT_LE(rep.extracted_degree, 6);
    EXPECT_TRUE(rep.extracted_check.ok);
}
