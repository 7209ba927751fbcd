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

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "qsim.hpp"
#include "rational.hpp"

namespace postsel::majority {

/// Worst-case squared overlap with |+> of a family-A qubit when |+> sits
/// halfway between two neighbours: ((1 + sqrt2)/sqrt6)^2.
inline const double kLambdaSq = (3 + 2 * M_SQRT2) / 6;

/// Largest family A the exact eliminate-A evaluator accepts.
constexpr size_t kMaxExactFamily = 15;

/// Smallest L >= 0 with t * 2^L >= n, i.e. ceil(log2(n / t)).
int ceil_log2_ratio(int64_t n, int64_t t);

struct MajorityParams {
    int n = 0;
    int t = 1;
    int budget_constant = 180;
    int copies_factor = 5;
    int b_trials_factor = 8;
    int amplification_reps = 1;

    /// Throws DomainError unless 1 <= t <= n/4, every constant is positive and
    /// amplification_reps is odd.
    void validate() const;
    int log_ratio() const {
        return ceil_log2_ratio(n, t);
    }
    /// budget_constant * ceil(log2(n/t)).
    uint64_t query_budget() const {
        return static_cast<uint64_t>(budget_constant) * static_cast<uint64_t>(log_ratio());
    }
    /// Number of eliminate-B trials, b_trials_factor * t.
    int b_trials() const {
        return b_trials_factor * t;
    }
};

struct FamilyEntry {
    int i;
    constructions::ABPair ab;
};

/// i in {-L..L}, L = ceil(log2(N/t)), alpha/beta = 2^i.
struct IndexFamilyA {
    std::vector<FamilyEntry> entries;
};

/// i in {1..t-1} then {N/2-t+1..N/2-1}, alpha/beta = (N - 2i)/(sqrt2 i).
/// i = 0 has no valid (alpha, beta) and is left out.
struct IndexFamilyB {
    std::vector<FamilyEntry> entries;
};

IndexFamilyA build_family_a(int n, int t);
IndexFamilyB build_family_b(int n, int t);

/// Probability that the one-query qubit at weight z, measured in the +/-
/// basis, gives +.
double rho_plus(int n, double z, const constructions::ABPair &ab);

/// rho_plus for family-B entry i, evaluated exactly. With
/// u = (N - 2i) z / i and v = N - 2z it equals (u + v)^2 / (2 (u^2 + v^2)).
Rational rho_plus_b_exact(int n, int i, const Rational &z);

struct Trial {
    int k = 0;
    /// Indices (family labels i) alive at the start of the trial.
    std::vector<int> surviving;
    /// Number of + outcomes for each entry of `surviving`, in order.
    std::vector<int> plus_counts;
};

struct ElimTranscript {
    std::vector<Trial> trials;
    uint64_t queries_used = 0;
    /// Number of the last executed trial; 0 if none ran.
    int stopped_at_trial = 0;
    int output = 0;

    std::string to_json() const;
};

/// Eliminate-A procedure at a fixed (params, z). Construction precomputes the
/// per-index, per-trial outcome distributions, so one instance may be shared
/// by concurrent runs that each bring their own generator.
class EliminateA {
   public:
    EliminateA(const MajorityParams &params, double z);

    /// One sampled execution. Returns the output bit.
    int sample(std::mt19937_64 &rng, qsim::QueryCounter &counter, ElimTranscript *transcript = nullptr) const;

    /// Exact Pr[output = 1]. Throws CapacityError if the family exceeds kMaxExactFamily.
    double exact_output1() const;

    /// Pr[index `pos` survives trial k] = Pr[Bin(c k, rho) > c k / 2].
    double survival(size_t pos, int k) const;
    /// Upper bound on the number of trials any run can execute.
    int max_trials() const {
        return max_trials_;
    }
    const IndexFamilyA &family() const {
        return family_;
    }
    const std::vector<double> &rho() const {
        return rho_;
    }

   private:
    MajorityParams params_;
    IndexFamilyA family_;
    std::vector<double> rho_;
    int max_trials_ = 0;
    /// cdf_[pos][k-1][j] = Pr[Bin(c k, rho_pos) <= j].
    std::vector<std::vector<std::vector<double>>> cdf_;
    /// survive_[pos][k-1]
    std::vector<std::vector<double>> survive_;
};

std::pair<int, ElimTranscript> eliminate_a_sample(const MajorityParams &params, double z, std::mt19937_64 &rng,
                                                  qsim::QueryCounter &counter);
double eliminate_a_exact(const MajorityParams &params, double z);

/// Eliminate-B procedure at a fixed (params, z).
class EliminateB {
   public:
    EliminateB(const MajorityParams &params, double z);

    int sample(std::mt19937_64 &rng, qsim::QueryCounter &counter, ElimTranscript *transcript = nullptr) const;
    double exact_output1() const;

    const IndexFamilyB &family() const {
        return family_;
    }

   private:
    MajorityParams params_;
    IndexFamilyB family_;
    std::vector<double> rho_;
};

std::pair<int, ElimTranscript> eliminate_b_sample(const MajorityParams &params, double z, std::mt19937_64 &rng,
                                                  qsim::QueryCounter &counter);
double eliminate_b_exact(const MajorityParams &params, double z);
/// Same DP carried out in exact rational arithmetic; z must be rational.
Rational eliminate_b_exact_rational(const MajorityParams &params, const Rational &z);

/// Pr[front-removal process over `rho` (in order) empties within `trials` steps].
template <class Scalar>
Scalar front_removal_empty_probability(const std::vector<Scalar> &rho, int trials) {
    size_t m = rho.size();
    // dist[p] = Pr[first p entries removed so far].
    std::vector<Scalar> dist(m + 1, Scalar(0));
    dist[0] = Scalar(1);
    for (int step = 0; step < trials; step++) {
        std::vector<Scalar> next(m + 1, Scalar(0));
        next[m] = dist[m];
        for (size_t p = 0; p < m; p++) {
            if (dist[p] == Scalar(0)) {
                continue;
            }
            Scalar minus = Scalar(1) - rho[p];
            next[p] += dist[p] * rho[p];
            next[p + 1] += dist[p] * minus;
        }
        dist = std::move(next);
    }
    return dist[m];
}

/// Resolved execution plan for the combined algorithm at (N, eps).
struct MajorityPlan {
    /// eps at or below 2^-Omega(N): read all N bits.
    bool classical = false;
    MajorityParams params;
};

/// t = ceil(log2(2/eps)) (or `t_override`), r = smallest odd integer >= 18 ln(2/eps).
/// Throws DomainError unless eps is in (2^-N, 1/2).
MajorityPlan plan_majority(int n, double eps, std::optional<int> t_override = std::nullopt);

/// Smallest odd integer >= 18 ln(2/eps).
int amplification_reps_for(double eps);

/// Pr[Bin(reps, p) > reps/2].
double majority_vote_probability(int reps, double p);

struct MajorityRun {
    int output = 0;
    uint64_t queries = 0;
};

/// The combined algorithm prepared for one (N, eps, z): eliminate-A amplified
/// by an r-fold majority vote, AND eliminate-B. Immutable after construction.
class CombinedMajority {
   public:
    CombinedMajority(int n, double eps, double z, std::optional<int> t_override = std::nullopt);

    MajorityRun sample(std::mt19937_64 &rng) const;
    double exact_output1() const;

    const MajorityPlan &plan() const {
        return plan_;
    }

   private:
    MajorityPlan plan_;
    double z_;
    std::optional<EliminateA> elim_a_;
    std::optional<EliminateB> elim_b_;
};

/// Combined algorithm on a real weight z (no prefix guard).
MajorityRun majority_sample_weight(int n, double eps, double z, std::mt19937_64 &rng,
                                   std::optional<int> t_override = std::nullopt);

/// The combined algorithm prepared for MAJ_{N+2}(01 x), which equals MAJ_N(x)
/// and never sees weight 0.
CombinedMajority guarded_majority(const Bits &x, double eps);

/// Combined algorithm on a bit string. Computes MAJ_N(x) as MAJ_{N+2}(01 x),
/// so the input seen by the eliminations always has nonzero weight.
MajorityRun majority_sample_bits(const Bits &x, double eps, std::mt19937_64 &rng);

/// Exact Pr[output 1] of the combined algorithm at real weight z.
double majority_exact(int n, double eps, double z, std::optional<int> t_override = std::nullopt);

}  // namespace postsel::majority
