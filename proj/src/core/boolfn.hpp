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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsim.hpp"

namespace postsel::boolfn {

/// Coefficients with magnitude at or below this count as zero for degree purposes.
constexpr double kZeroTolerance = 1e-12;
constexpr int kMaxTableVars = 20;
constexpr int kMaxExtractVars = 12;

/// Variable subsets are bitmasks in the same convention as cube points:
/// variable i (1-based) is bit N - i, so x_1 is the most significant bit.
using Subset = uint64_t;

uint64_t variable_bit(int n, int i);
/// Ascending 1-based variable indices of `s`.
std::vector<int> subset_members(int n, Subset s);
Subset subset_from_members(int n, std::span<const int> members);

/// Real function on {0,1}^N; values[x] with x read as a bitmask as above.
struct TruthTable {
    int n = 0;
    std::vector<double> values;

    static TruthTable zeros(int n);
    static TruthTable from_function(int n, const std::function<double(uint64_t)> &f);
    /// Either 2^N '0'/'1' characters (whitespace ignored), or 2^N
    /// whitespace-separated reals. N is inferred from the count.
    static TruthTable parse(const std::string &text);
    std::string to_text() const;

    double at(uint64_t x) const {
        return values[x];
    }
    bool is_boolean() const;
    /// True iff the value depends only on the Hamming weight.
    bool is_symmetric() const;
};

TruthTable or_table(int n);
TruthTable and_table(int n);
/// MAJ_N(x) = 1 iff |x| >= N/2.
TruthTable majority_table(int n);
TruthTable dictator_table(int n, int i);

struct MultilinearPoly {
    int n = 0;
    std::map<Subset, double> coeffs;

    int degree() const;
    double evaluate(std::span<const double> point) const;
    /// Value at a cube point.
    double evaluate_cube(uint64_t x) const;

    std::string to_json() const;
    static MultilinearPoly from_json(const std::string &text);
};

MultilinearPoly operator-(const MultilinearPoly &a, const MultilinearPoly &b);
MultilinearPoly operator*(double c, const MultilinearPoly &p);

/// Unique multilinear polynomial agreeing with the table on the cube.
MultilinearPoly mobius_interpolate(const TruthTable &tt);
double eval_multilinear(const MultilinearPoly &p, std::span<const double> point);
TruthTable evaluate_on_cube(const MultilinearPoly &p);

/// coeffs[S] = 2^-N sum_x g(x) (-1)^{x.S}.
struct FourierSpectrum {
    int n = 0;
    std::vector<double> coeffs;

    double at(Subset s) const {
        return coeffs[s];
    }
    /// Largest |S| with |coeff| above `tolerance`; -1 for the zero spectrum.
    int support_degree(double tolerance) const;
    double squared_mass() const;
};

FourierSpectrum fourier(const TruthTable &tt);
TruthTable inverse_fourier(const FourierSpectrum &spec);

/// Coefficients by ascending power, trailing zeros trimmed.
struct UnivariatePoly {
    std::vector<double> coeffs;

    double evaluate(double z) const;
    int degree() const {
        return static_cast<int>(coeffs.size()) - 1;
    }
};

/// Newton divided-difference interpolant through all samples, returned in
/// monomial form. Throws DomainError on duplicate nodes.
UnivariatePoly interpolate_univariate(std::span<const std::pair<double, double>> samples);

/// Which basis states of the final measurement set each output bit.
struct OutputConvention {
    qsim::BasisPredicate a;
    qsim::BasisPredicate b;
};

/// A postselection algorithm with no classical control between queries: its
/// final state is a fixed circuit applied to the input oracle.
class CoherentAlgorithm {
   public:
    virtual ~CoherentAlgorithm() = default;
    virtual int num_inputs() const = 0;
    virtual int query_count() const = 0;
    /// State right before the final measurement of (a, b).
    virtual qsim::PureState final_state(const Bits &x, qsim::QueryCounter &counter) const = 0;
    virtual OutputConvention output_convention() const = 0;
};

struct ExtractedPQ {
    /// P(x) = Pr[a = 1 and b = 1]
    MultilinearPoly p;
    /// Q(x) = Pr[a = 1]
    MultilinearPoly q;
    int queries = 0;
};

/// Simulates `alg` on every input and interpolates P and Q. Throws
/// TheoremViolation if either degree exceeds twice the query count, or if the
/// algorithm charges a different number of queries than it declares.
ExtractedPQ extract_pq(const CoherentAlgorithm &alg);

struct RatioCheck {
    bool ok = false;
    double max_deviation = 0;
    uint64_t argmax = 0;
};

/// Checks |P(x)/Q(x) - f(x)| <= eps on the whole cube (with 1e-12 slack for
/// rounding). Throws DomainError if |Q(x)| < 1e-12 anywhere.
RatioCheck ratio_check(const MultilinearPoly &p, const MultilinearPoly &q, const TruthTable &f, double eps);

}  // namespace postsel::boolfn
