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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boolfn.hpp"
#include "rational.hpp"

namespace postsel::rdeg {

constexpr int kMaxFullVars = 4;
constexpr int kMaxFullDegree = 4;
constexpr int kMaxSymmetricVars = 64;
constexpr int kMaxSymmetricDegree = 16;
constexpr int kSimplexIterationBound = 200000;

/// Rows of A x >= b over free variables x.
struct LinearSystem {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
};

struct SimplexResult {
    bool feasible = false;
    /// A feasible point when `feasible`.
    std::vector<Rational> x;
    int iterations = 0;
};

/// Phase-I simplex in exact arithmetic with Bland's rule. Free variables are
/// split as x+ - x-. Exceeding the iteration bound throws TheoremViolation.
SimplexResult find_feasible_point(const LinearSystem &sys, int iteration_bound = kSimplexIterationBound);

/// A (P, Q) pair certifying rdeg_eps(f) <= d. Multilinear witnesses carry
/// subset-indexed coefficients; symmetric witnesses carry coefficients of
/// powers of the Hamming weight w, ascending.
struct Witness {
    bool symmetric = false;
    int n = 0;
    int d = 0;
    std::map<boolfn::Subset, Rational> p_multi;
    std::map<boolfn::Subset, Rational> q_multi;
    std::vector<Rational> p_uni;
    std::vector<Rational> q_uni;

    Rational p_at(uint64_t x) const;
    Rational q_at(uint64_t x) const;
    /// Values at weight w; symmetric witnesses only.
    Rational p_at_weight(int w) const;
    Rational q_at_weight(int w) const;

    /// Multilinear forms in floating point (symmetric witnesses are expanded
    /// exactly first). Requires n <= 20.
    std::pair<boolfn::MultilinearPoly, boolfn::MultilinearPoly> to_multilinear() const;

    /// {"mode", "n", "d", "P", "Q"}; coefficients are exact "num/den" strings.
    /// Multilinear P and Q use the polynomial {"n", "terms"} format.
    std::string to_json() const;
};

/// Symmetric target: value at each weight 0..N.
struct WeightProfile {
    int n = 0;
    std::vector<Rational> values;
};

/// Fails with DomainError if f is not symmetric.
WeightProfile weight_profile(const boolfn::TruthTable &f);

struct FeasibilityResult {
    bool feasible = false;
    std::optional<Witness> witness;
    bool symmetric = false;
    /// Always set: Q >= 1 may exclude sign-changing denominators, so full-mode
    /// infeasibility at d only gives rdeg_eps(f) > d/2.
    bool completeness_caveat = true;
    /// False in symmetric mode, where infeasibility proves nothing.
    bool infeasibility_is_bound = true;
    int constraints = 0;
    int iterations = 0;
};

/// LP over all multilinear P, Q of degree <= d with, for every x,
/// Q(x) >= 1 and (f(x) - eps) Q(x) <= P(x) <= (f(x) + eps) Q(x).
/// With `symmetric`, P and Q are polynomials in |x| (witness-only mode).
/// Full mode needs N <= 4, d <= 4; symmetric mode N <= 64, d <= 16;
/// otherwise CapacityError.
FeasibilityResult rdeg_feasible(const boolfn::TruthTable &f, int d, const Rational &eps, bool symmetric);

/// Symmetric mode from a weight profile, for N past the truth-table limit.
FeasibilityResult rdeg_feasible_profile(const WeightProfile &f, int d, const Rational &eps);

struct VerifyResult {
    bool ok = false;
    /// max_x |P(x)/Q(x) - f(x)| when Q > 0 everywhere.
    Rational max_deviation;
    std::string detail;
};

/// Exact check of the LP constraints (Q(x) > 0 and |P/Q - f| <= eps).
VerifyResult verify_witness(const Witness &w, const boolfn::TruthTable &f, const Rational &eps);
VerifyResult verify_witness(const Witness &w, const WeightProfile &f, const Rational &eps);

struct ScanResult {
    std::optional<int> degree;
    std::optional<Witness> witness;
    /// One entry per degree tried, in order.
    std::vector<FeasibilityResult> steps;
};

/// First feasible d in 0..d_max.
ScanResult scan_degree(const boolfn::TruthTable &f, const Rational &eps, int d_max, bool symmetric = false);

}  // namespace postsel::rdeg
