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
#include <random>

#include "boolfn.hpp"
#include "constructions.hpp"
#include "errors.hpp"

using namespace postsel;
using namespace postsel::boolfn;

namespace {

/// Brute-force Fourier coefficient 2^-N sum_x g(x) (-1)^{x.S}.
double fourier_oracle(const TruthTable &t, Subset s) {
    double sum = 0;
    for (uint64_t x = 0; x < t.values.size(); x++) {
        sum += t.values[x] * ((__builtin_popcountll(x & s) & 1) ? -1.0 : 1.0);
    }
    return sum / static_cast<double>(t.values.size());
}

TruthTable random_table(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    TruthTable t = TruthTable::zeros(n);
    for (auto &v : t.values) {
        v = u(rng);
    }
    return t;
}

}  // namespace

TEST(Subsets, Convention) {
    EXPECT_EQ(variable_bit(3, 1), 4u);
    EXPECT_EQ(variable_bit(3, 3), 1u);
    std::vector<int> members = {1, 3};
    Subset s = subset_from_members(3, members);
    EXPECT_EQ(s, 5u);
    EXPECT_EQ(subset_members(3, s), members);
}

TEST(TruthTable, ParseForms) {
    TruthTable bits = TruthTable::parse("0111");
    EXPECT_EQ(bits.n, 2);
    EXPECT_TRUE(bits.is_boolean());
    EXPECT_EQ(bits.values, or_table(2).values);
    TruthTable reals = TruthTable::parse("0.5 -1 2 3");
    EXPECT_EQ(reals.n, 2);
    EXPECT_FALSE(reals.is_boolean());
    EXPECT_DOUBLE_EQ(reals.at(1), -1);
    EXPECT_THROW(TruthTable::parse("011"), DomainError);
}

TEST(TruthTable, Symmetry) {
    EXPECT_TRUE(majority_table(4).is_symmetric());
    EXPECT_TRUE(or_table(3).is_symmetric());
    EXPECT_FALSE(dictator_table(3, 2).is_symmetric());
    // MAJ_4 is 1 from weight 2 upward.
    EXPECT_DOUBLE_EQ(majority_table(4).at(0b0011), 1);
    EXPECT_DOUBLE_EQ(majority_table(4).at(0b0100), 0);
}

TEST(Mobius, AndAndOr) {
    MultilinearPoly a = mobius_interpolate(and_table(2));
    ASSERT_EQ(a.coeffs.size(), 1u);
    EXPECT_DOUBLE_EQ(a.coeffs.at(0b11), 1);

    MultilinearPoly o = mobius_interpolate(or_table(2));
    EXPECT_DOUBLE_EQ(o.coeffs.at(0b10), 1);
    EXPECT_DOUBLE_EQ(o.coeffs.at(0b01), 1);
    EXPECT_DOUBLE_EQ(o.coeffs.at(0b11), -1);
    for (uint64_t x = 0; x < 4; x++) {
        EXPECT_DOUBLE_EQ(o.evaluate_cube(x), or_table(2).at(x));
    }
}

TEST(Mobius, RoundTripProperty) {
    std::mt19937_64 rng(41);
    for (int n = 1; n <= 6; n++) {
        TruthTable t = random_table(n, rng);
        TruthTable back = evaluate_on_cube(mobius_interpolate(t));
        for (size_t x = 0; x < t.values.size(); x++) {
            EXPECT_NEAR(back.values[x], t.values[x], 1e-12);
        }
    }
}

TEST(Evaluate, Examples) {
    MultilinearPoly o = mobius_interpolate(or_table(2));
    std::vector<double> one = {1, 1}, half = {0.5, 0.5};
    EXPECT_DOUBLE_EQ(eval_multilinear(o, one), 1);
    EXPECT_DOUBLE_EQ(eval_multilinear(o, half), 0.75);
    MultilinearPoly empty;
    empty.n = 2;
    EXPECT_DOUBLE_EQ(eval_multilinear(empty, half), 0);
    EXPECT_EQ(empty.degree(), 0);
}

TEST(Polynomial, JsonRoundTrip) {
    MultilinearPoly p = mobius_interpolate(majority_table(3));
    MultilinearPoly q = MultilinearPoly::from_json(p.to_json());
    EXPECT_EQ(q.n, p.n);
    EXPECT_EQ(q.coeffs, p.coeffs);
    EXPECT_THROW(MultilinearPoly::from_json("{\"n\":2,\"terms\":[{\"subset\":[3],\"coeff\":1}]}"), DomainError);
}

TEST(Fourier, FootnoteExamples) {
    FourierSpectrum x1 = fourier(dictator_table(1, 1));
    EXPECT_DOUBLE_EQ(x1.at(0), 0.5);
    EXPECT_DOUBLE_EQ(x1.at(1), -0.5);

    FourierSpectrum one = fourier(TruthTable::from_function(3, [](uint64_t) { return 1.0; }));
    EXPECT_DOUBLE_EQ(one.at(0), 1);
    for (Subset s = 1; s < 8; s++) {
        EXPECT_DOUBLE_EQ(one.at(s), 0);
    }

    FourierSpectrum chi = fourier(
        TruthTable::from_function(2, [](uint64_t x) { return (__builtin_popcountll(x) & 1) ? -1.0 : 1.0; }));
    EXPECT_DOUBLE_EQ(chi.at(0b11), 1);
    EXPECT_DOUBLE_EQ(chi.at(0b01), 0);
    EXPECT_EQ(chi.support_degree(1e-12), 2);
}

TEST(Fourier, MatchesBruteForceOracle) {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 7; n++) {
        TruthTable t = random_table(n, rng);
        FourierSpectrum f = fourier(t);
        for (Subset s = 0; s < t.values.size(); s++) {
            EXPECT_NEAR(f.at(s), fourier_oracle(t, s), 1e-12);
        }
        // Parseval: sum of squared coefficients is the mean square value.
        double mean_sq = 0;
        for (double v : t.values) {
            mean_sq += v * v;
        }
        EXPECT_NEAR(f.squared_mass(), mean_sq / t.values.size(), 1e-12);
        TruthTable back = inverse_fourier(f);
        for (size_t x = 0; x < t.values.size(); x++) {
            EXPECT_NEAR(back.values[x], t.values[x], 1e-12);
        }
    }
}

TEST(Univariate, Interpolation) {
    std::vector<std::pair<double, double>> constant = {{0, 1}, {1, 1}};
    UnivariatePoly c = interpolate_univariate(constant);
    EXPECT_EQ(c.degree(), 0);
    EXPECT_DOUBLE_EQ(c.evaluate(5), 1);

    std::vector<std::pair<double, double>> square = {{0, 0}, {1, 1}, {2, 4}};
    UnivariatePoly sq = interpolate_univariate(square);
    ASSERT_EQ(sq.coeffs.size(), 3u);
    EXPECT_NEAR(sq.coeffs[0], 0, 1e-15);
    EXPECT_NEAR(sq.coeffs[1], 0, 1e-15);
    EXPECT_NEAR(sq.coeffs[2], 1, 1e-15);

    std::vector<std::pair<double, double>> single = {{3, 7}};
    EXPECT_DOUBLE_EQ(interpolate_univariate(single).evaluate(-2), 7);

    std::vector<std::pair<double, double>> dup = {{1, 1}, {1, 2}};
    EXPECT_THROW(interpolate_univariate(dup), DomainError);
}

TEST(Extract, OrDemoClosedForms) {
    const double e = 0.1;
    constructions::OrDemoAlgorithm alg(2, e);
    ExtractedPQ pq = extract_pq(alg);
    double w = (1 - e * e) / 2;
    EXPECT_NEAR(pq.q.coeffs[0], e * e, 1e-12);
    EXPECT_NEAR(pq.q.coeffs[0b10], w, 1e-12);
    EXPECT_NEAR(pq.q.coeffs[0b01], w, 1e-12);
    EXPECT_NEAR(pq.p.coeffs[0b10], w, 1e-12);
    EXPECT_NEAR(pq.p.coeffs[0b01], w, 1e-12);
    EXPECT_NEAR(std::abs(pq.p.coeffs[0]), 0, 1e-12);
    EXPECT_LE(pq.p.degree(), 2);
    EXPECT_LE(pq.q.degree(), 2);
    EXPECT_EQ(pq.queries, 1);
}

TEST(Extract, DegreeAtMostTwiceQueries) {
    for (int n : {1, 3, 4}) {
        constructions::OrDemoAlgorithm alg(n, 0.2);
        ExtractedPQ pq = extract_pq(alg);
        EXPECT_LE(pq.p.degree(), 2 * pq.queries);
        EXPECT_LE(pq.q.degree(), 2 * pq.queries);
        RatioCheck rc = ratio_check(pq.p, pq.q, or_table(n), 0.04 * n / (0.04 * n + 0.96));
        EXPECT_TRUE(rc.ok) << "n=" << n << " deviation " << rc.max_deviation;
    }
}

TEST(RatioCheck, OrWitness) {
    MultilinearPoly p;
    p.n = 4;
    MultilinearPoly q;
    q.n = 4;
    q.coeffs[0] = 0.1;
    for (int i = 1; i <= 4; i++) {
        p.coeffs[variable_bit(4, i)] = 1;
        q.coeffs[variable_bit(4, i)] = 1;
    }
    RatioCheck rc = ratio_check(p, q, or_table(4), 0.1);
    EXPECT_TRUE(rc.ok);
    EXPECT_NEAR(rc.max_deviation, 0.1 / 1.1, 1e-12);
    EXPECT_EQ(__builtin_popcountll(rc.argmax), 1);
}

TEST(RatioCheck, ExactAndFailing) {
    TruthTable f = majority_table(3);
    MultilinearPoly p = mobius_interpolate(f);
    MultilinearPoly one;
    one.n = 3;
    one.coeffs[0] = 1;
    RatioCheck exact = ratio_check(p, one, f, 0);
    EXPECT_TRUE(exact.ok);
    EXPECT_DOUBLE_EQ(exact.max_deviation, 0);

    MultilinearPoly half;
    half.n = 3;
    half.coeffs[0] = 0.5;
    EXPECT_FALSE(ratio_check(half, one, f, 0.4).ok);

    MultilinearPoly zero;
    zero.n = 3;
    EXPECT_THROW(ratio_check(p, zero, f, 0.1), DomainError);
}
