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

#include <functional>
#include <string>
#include <vector>

namespace postsel::newman {

/// Above this degree the product is evaluated as a ratio of factors rather
/// than as two separate products; p(0) = a^{d(d-1)/2} underflows near d = 125.
constexpr int kRatioFormThreshold = 100;

/// a = e^{-1/sqrt(d)}.
double newman_a(int d);

/// The d nodes a^k, k = 0..d-1, in decreasing order.
std::vector<double> newman_nodes(int d);

/// r(x) = (p(x) - p(-x)) / (p(x) + p(-x)),  p(x) = prod_{k<d} (a^k + x).
/// Requires d >= 2 and x in [-1, 1].
double newman_r(int d, double x);

/// x * r(x).
double newman_abs(int d, double x);

enum class DomainTag { Assert, Report, Gap };

const char *tag_name(DomainTag tag);

/// s(z) = 2 Pr[majority algorithm outputs 1 at weight N(z+1)/2] - 1 with
/// N = ceil(2/eps), using the single-straddle variant of the algorithm
/// amplified to error eps.
class SignApproximant {
   public:
    /// Throws DomainError unless eps is in (0, 1/2), CapacityError if the
    /// resulting index family is past exact-DP capacity.
    explicit SignApproximant(double eps);

    double eps() const {
        return eps_;
    }
    int n() const {
        return n_;
    }

    /// Requires z in [-1, 1]. Result lies in [-1, 1].
    double evaluate(double z) const;

    /// Assert on [-1+2/N, -2/N] and [0, 1]; Report on [-1, -1+2/N); Gap
    /// on (-2/N, 0).
    DomainTag tag(double z) const;

   private:
    double eps_;
    int n_;
};

/// z * s(z).
double quantum_abs(const SignApproximant &s, double z);

struct Interval {
    double lo = 0;
    double hi = 0;
    DomainTag tag = DomainTag::Assert;
};

/// Closed intervals sampled by an error grid, plus extra points (e.g. the
/// Newman nodes). Extra points outside every interval are dropped.
struct DomainSpec {
    std::vector<Interval> intervals;
    std::vector<double> extra_points;
};

/// [-1, 1] with the nodes +-a^k.
DomainSpec newman_domain(int d);

/// The sign approximant's assertable intervals only.
DomainSpec sign_assert_domain(const SignApproximant &s);

/// The sign approximant's reported-only interval.
DomainSpec sign_report_domain(const SignApproximant &s);

struct GridRow {
    double z = 0;
    double value = 0;
    double reference = 0;
    double abs_error = 0;
    DomainTag tag = DomainTag::Assert;
};

struct GridReport {
    std::vector<GridRow> rows;
    double max_error = 0;
    double argmax = 0;

    std::string to_csv() const;
};

/// Evaluates `evaluator` against `reference` at `grid_size` points spread
/// over the intervals in proportion to their length (both endpoints of each
/// interval included), plus the extra points. Rows are sorted by z with
/// duplicates removed. `threads` > 1 splits the points across workers;
/// results do not depend on it.
GridReport error_grid(const std::function<double(double)> &evaluator, const std::function<double(double)> &reference,
                      const DomainSpec &domain, int grid_size, int threads = 1);

struct DecayFit {
    double slope = 0;
    double intercept = 0;
    /// Root-mean-square residual of the fit.
    double residual = 0;
};

/// Least-squares fit of ln(error) against sqrt(d). Needs at least 3 points,
/// all errors > 0; otherwise DomainError.
DecayFit fit_decay(const std::vector<std::pair<int, double>> &points);

}  // namespace postsel::newman
