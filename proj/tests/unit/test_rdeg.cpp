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

#include "boolfn.hpp"
#include "errors.hpp"
#include "experiments_internal.hpp"
#include "rdeg.hpp"

using namespace postsel;
using namespace postsel::boolfn;
using namespace postsel::rdeg;

namespace {

Rational q(const char *text) {
    return parse_rational(text);
}

TruthTable constant_table(int n, double v) {
    return TruthTable::from_function(n, [v](uint64_t) { return v; });
}

Witness or_witness(int n) {
    Witness w;
    w.n = n;
    w.d = 1;
    w.q_multi[0] = q("1/10");
    for (int i = 1; i <= n; i++) {
        w.p_multi[variable_bit(n, i)] = 1;
        w.q_multi[variable_bit(n, i)] = 1;
    }
    return w;
}

}  // namespace

TEST(Simplex, SmallSystems) {
    // x >= 1, -x >= -3  -> feasible.
    LinearSystem sys{{{Rational(1)}, {Rational(-1)}}, {Rational(1), Rational(-3)}};
    SimplexResult r = find_feasible_point(sys);
    ASSERT_TRUE(r.feasible);
    EXPECT_GE(r.x[0], 1);
    EXPECT_LE(r.x[0], 3);
    // x >= 2, -x >= -1  -> infeasible.
    LinearSystem bad{{{Rational(1)}, {Rational(-1)}}, {Rational(2), Rational(-1)}};
    EXPECT_FALSE(find_feasible_point(bad).feasible);
    // Free variable: x >= -5 with -x >= 2 needs x <= -2.
    LinearSystem neg{{{Rational(1)}, {Rational(-1)}}, {Rational(-5), Rational(2)}};
    SimplexResult rn = find_feasible_point(neg);
    ASSERT_TRUE(rn.feasible);
    EXPECT_LE(rn.x[0], -2);
}

TEST(Rdeg, NonConstantInfeasibleAtDegreeZero) {
    for (const char *spec : {"or:2", "and:3", "parity:2", "dict:3:2", "maj:3"}) {
        TruthTable f = experiments::parse_function(spec);
        FeasibilityResult r = rdeg_feasible(f, 0, q("2/5"), false);
        EXPECT_FALSE(r.feasible) << spec;
        EXPECT_TRUE(r.infeasibility_is_bound);
    }
}

TEST(Rdeg, ConstantFeasibleAtDegreeZero) {
    FeasibilityResult r = rdeg_feasible(constant_table(3, 0), 0, q("1/10"), false);
    EXPECT_TRUE(r.feasible);
}

TEST(Rdeg, OrFourDegreeOne) {
    TruthTable f = or_table(4);
    FeasibilityResult r = rdeg_feasible(f, 1, q("1/10"), false);
    ASSERT_TRUE(r.feasible);
    ASSERT_TRUE(r.witness);
    EXPECT_TRUE(verify_witness(*r.witness, f, q("1/10")).ok);
    EXPECT_TRUE(r.completeness_caveat);
}

TEST(Rdeg, DictatorExact) {
    TruthTable f = dictator_table(2, 1);
    FeasibilityResult r = rdeg_feasible(f, 1, Rational(0), false);
    ASSERT_TRUE(r.feasible);
    VerifyResult v = verify_witness(*r.witness, f, Rational(0));
    EXPECT_TRUE(v.ok);
    EXPECT_EQ(v.max_deviation, 0);
}

TEST(Rdeg, CapacityAndSymmetryErrors) {
    EXPECT_THROW(rdeg_feasible(or_table(5), 1, q("1/10"), false), CapacityError);
    EXPECT_THROW(rdeg_feasible(or_table(3), kMaxFullDegree + 1, q("1/10"), false), CapacityError);
    EXPECT_THROW(rdeg_feasible(dictator_table(3, 1), 1, q("1/10"), true), DomainError);
    EXPECT_THROW(weight_profile(dictator_table(2, 2)), DomainError);
}

TEST(Verify, HandWitnesses) {
    TruthTable f = or_table(4);
    VerifyResult v = verify_witness(or_witness(4), f, q("1/10"));
    EXPECT_TRUE(v.ok);
    EXPECT_EQ(v.max_deviation, q("1/11"));

    Witness one;
    one.n = 2;
    one.p_multi[0] = 1;
    one.q_multi[0] = 1;
    EXPECT_TRUE(verify_witness(one, constant_table(2, 1), Rational(0)).ok);

    Witness zero;
    zero.n = 2;
    zero.q_multi[0] = 1;
    EXPECT_FALSE(verify_witness(zero, constant_table(2, 1), q("1/4")).ok);

    Witness negative;
    negative.n = 1;
    negative.q_multi[0] = -1;
    VerifyResult nv = verify_witness(negative, constant_table(1, 0), q("1/4"));
    EXPECT_FALSE(nv.ok);
    EXPECT_FALSE(nv.detail.empty());
}

TEST(Scan, Degrees) {
    ScanResult zero = scan_degree(constant_table(2, 0), q("1/10"), 3);
    ASSERT_TRUE(zero.degree);
    EXPECT_EQ(*zero.degree, 0);

    ScanResult orf = scan_degree(or_table(4), q("1/10"), 4);
    ASSERT_TRUE(orf.degree);
    EXPECT_EQ(*orf.degree, 1);
    EXPECT_EQ(orf.steps.size(), 2u);
    EXPECT_TRUE(verify_witness(*orf.witness, or_table(4), q("1/10")).ok);

    ScanResult maj = scan_degree(majority_table(4), q("1/10"), 4);
    ASSERT_TRUE(maj.degree);
    EXPECT_TRUE(verify_witness(*maj.witness, majority_table(4), q("1/10")).ok);
}

TEST(Scan, MonotoneInDegree) {
    // Once feasible at d, every larger degree is feasible too.
    for (const char *spec : {"or:3", "maj:3", "parity:2"}) {
        TruthTable f = experiments::parse_function(spec);
        bool seen = false;
        for (int d = 0; d <= 3; d++) {
            bool feasible = rdeg_feasible(f, d, q("1/5"), false).feasible;
            if (seen) {
                EXPECT_TRUE(feasible) << spec << " d=" << d;
            }
            seen = seen || feasible;
        }
        EXPECT_TRUE(seen) << spec;
    }
}

TEST(Symmetric, WitnessExpandsToValidMultilinear) {
    TruthTable f = majority_table(4);
    FeasibilityResult r = rdeg_feasible(f, 2, q("1/10"), true);
    ASSERT_TRUE(r.feasible);
    EXPECT_FALSE(r.infeasibility_is_bound);
    const Witness &w = *r.witness;
    EXPECT_TRUE(w.symmetric);
    for (uint64_t x = 0; x < 16; x++) {
        int weight = __builtin_popcountll(x);
        EXPECT_EQ(w.p_at(x), w.p_at_weight(weight));
        EXPECT_EQ(w.q_at(x), w.q_at_weight(weight));
    }
    auto [p, qq] = w.to_multilinear();
    EXPECT_TRUE(ratio_check(p, qq, f, 0.1 + 1e-9).ok);
}

TEST(Symmetric, LargeProfile) {
    WeightProfile prof;
    prof.n = 40;
    for (int w = 0; w <= 40; w++) {
        prof.values.push_back(w > 0 ? 1 : 0);
    }
    FeasibilityResult r = rdeg_feasible_profile(prof, 1, q("1/10"));
    ASSERT_TRUE(r.feasible);
    EXPECT_TRUE(verify_witness(*r.witness, prof, q("1/10")).ok);
}

TEST(Witness, JsonShape) {
    FeasibilityResult r = rdeg_feasible(or_table(2), 1, q("1/10"), false);
    ASSERT_TRUE(r.feasible);
    auto j = nlohmann::json::parse(r.witness->to_json());
    EXPECT_EQ(j["mode"], "multilinear");
    EXPECT_EQ(j["n"], 2);
    EXPECT_TRUE(j["P"].contains("terms"));
    for (const auto &t : j["Q"]["terms"]) {
        EXPECT_TRUE(t["coeff"].is_string());
    }
}
