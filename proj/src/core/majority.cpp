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

#include "majority.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "json.hpp"
#include "random.hpp"

namespace postsel::majority {

using constructions::ABPair;

int ceil_log2_ratio(int64_t n, int64_t t) {
    if (t < 1 || n < 1) {
        throw DomainError("ceil_log2_ratio needs positive arguments");
    }
    int l = 0;
    while ((t << l) < n) {
        l++;
    }
    return l;
}

void MajorityParams::validate() const {
    if (n < 4) {
        throw DomainError("N must be at least 4, got " + std::to_string(n));
    }
    if (t < 1 || 4 * static_cast<int64_t>(t) > n) {
        throw DomainError("t = " + std::to_string(t) + " outside [1, N/4] for N = " + std::to_string(n));
    }
    if (budget_constant < 1 || copies_factor < 1 || b_trials_factor < 1) {
        throw DomainError("algorithm constants must be positive");
    }
    if (amplification_reps < 1 || amplification_reps % 2 == 0) {
        throw DomainError("amplification_reps must be a positive odd integer");
    }
}

IndexFamilyA build_family_a(int n, int t) {
    MajorityParams p{.n = n, .t = t};
    p.validate();
    int l = p.log_ratio();
    IndexFamilyA fam;
    for (int i = -l; i <= l; i++) {
        fam.entries.push_back({i, ABPair::from_ratio(std::ldexp(1.0, i))});
    }
    return fam;
}

IndexFamilyB build_family_b(int n, int t) {
    MajorityParams p{.n = n, .t = t};
    p.validate();
    if (n % 2 != 0) {
        throw DomainError("family B needs even N, got " + std::to_string(n));
    }
    IndexFamilyB fam;
    if (t == 1) {
        return fam;
    }
    auto add = [&](int i) {
        fam.entries.push_back({i, ABPair::from_ratio((n - 2.0 * i) / (M_SQRT2 * i))});
    };
    for (int i = 1; i <= t - 1; i++) {
        add(i);
    }
    for (int i = n / 2 - t + 1; i <= n / 2 - 1; i++) {
        add(i);
    }
    return fam;
}

double rho_plus(int n, double z, const ABPair &ab) {
    if (!(z >= 0 && z <= n)) {
        throw DomainError("weight " + std::to_string(z) + " outside [0, " + std::to_string(n) + "]");
    }
    double a0 = ab.alpha() * z;
    double a1 = ab.beta() * (n - 2 * z) * M_SQRT1_2;
    double s = a0 + a1;
    // Rounding can push the exact value 1 (the |+> case) just past it.
    return std::min(1.0, s * s / (2 * (a0 * a0 + a1 * a1)));
}

Rational rho_plus_b_exact(int n, int i, const Rational &z) {
    if (z < 0 || z > n) {
        throw DomainError("weight outside [0, N]");
    }
    if (i < 1 || 2 * i >= n) {
        throw DomainError("family-B label " + std::to_string(i) + " outside [1, N/2)");
    }
    Rational u = Rational(n - 2 * i) * z / i;
    Rational v = Rational(n) - 2 * z;
    Rational s = u + v;
    return s * s / (2 * (u * u + v * v));
}

std::string ElimTranscript::to_json() const {
    nlohmann::json j;
    j["trials"] = nlohmann::json::array();
    for (const auto &t : trials) {
        j["trials"].push_back({{"k", t.k}, {"surviving", t.surviving}, {"plus_counts", t.plus_counts}});
    }
    j["queries"] = queries_used;
    j["stopped_at_trial"] = stopped_at_trial;
    j["output"] = output;
    return j.dump();
}

namespace {

/// Binomial(n, p) pmf for j = 0..n.
std::vector<double> binomial_pmf(int n, double p) {
    std::vector<double> pmf(static_cast<size_t>(n) + 1, 0.0);
    if (p <= 0) {
        pmf[0] = 1;
        return pmf;
    }
    if (p >= 1) {
        pmf[n] = 1;
        return pmf;
    }
    double lp = std::log(p);
    double lq = std::log1p(-p);
    double lnf = std::lgamma(n + 1.0);
    for (int j = 0; j <= n; j++) {
        pmf[j] = std::exp(lnf - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) + j * lp + (n - j) * lq);
    }
    return pmf;
}

uint64_t triangular(uint64_t k) {
    return k * (k + 1) / 2;
}

int draw_from_cdf(const std::vector<double> &cdf, std::mt19937_64 &rng) {
    double u = uniform01(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
        return static_cast<int>(cdf.size()) - 1;
    }
    return static_cast<int>(it - cdf.begin());
}

}  // namespace

EliminateA::EliminateA(const MajorityParams &params, double z) : params_(params) {
    params_.validate();
    family_ = build_family_a(params.n, params.t);
    for (const auto &e : family_.entries) {
        rho_.push_back(rho_plus(params.n, z, e.ab));
    }
    uint64_t budget = params_.query_budget();
    uint64_t c = static_cast<uint64_t>(params_.copies_factor);
    // Trial k can only start if c * (1 + 2 + ... + (k-1)) < budget.
    max_trials_ = 1;
    while (c * triangular(static_cast<uint64_t>(max_trials_)) < budget) {
        max_trials_++;
    }
    cdf_.resize(rho_.size());
    survive_.resize(rho_.size());
    for (size_t pos = 0; pos < rho_.size(); pos++) {
        for (int k = 1; k <= max_trials_; k++) {
            int copies = params_.copies_factor * k;
            auto pmf = binomial_pmf(copies, rho_[pos]);
            std::vector<double> cdf(pmf.size());
            double acc = 0;
            double low = 0;
            double high = 0;
            for (size_t j = 0; j < pmf.size(); j++) {
                acc += pmf[j];
                cdf[j] = acc;
                // Survival needs a strict majority of + outcomes; ties eliminate.
                (2 * static_cast<int>(j) > copies ? high : low) += pmf[j];
            }
            for (double &v : cdf) {
                v /= acc;
            }
            cdf_[pos].push_back(std::move(cdf));
            survive_[pos].push_back(high / (low + high));
        }
    }
}

double EliminateA::survival(size_t pos, int k) const {
    return survive_.at(pos).at(static_cast<size_t>(k - 1));
}

int EliminateA::sample(std::mt19937_64 &rng, qsim::QueryCounter &counter, ElimTranscript *transcript) const {
    uint64_t budget = params_.query_budget();
    std::vector<size_t> alive(rho_.size());
    for (size_t p = 0; p < alive.size(); p++) {
        alive[p] = p;
    }
    uint64_t queries = 0;
    int k = 1;
    while (!alive.empty() && queries < budget) {
        if (k > max_trials_) {
            throw TheoremViolation("eliminate-A exceeded its trial bound");
        }
        int copies = params_.copies_factor * k;
        Trial trial;
        trial.k = k;
        std::vector<size_t> next;
        for (size_t pos : alive) {
            int plus = draw_from_cdf(cdf_[pos][static_cast<size_t>(k - 1)], rng);
            if (transcript) {
                trial.surviving.push_back(family_.entries[pos].i);
                trial.plus_counts.push_back(plus);
            }
            if (2 * plus > copies) {
                next.push_back(pos);
            }
        }
        uint64_t used = static_cast<uint64_t>(copies) * alive.size();
        queries += used;
        counter.charge(used);
        if (transcript) {
            transcript->trials.push_back(std::move(trial));
        }
        alive = std::move(next);
        k++;
    }
    int output = alive.empty() ? 1 : 0;
    if (transcript) {
        transcript->queries_used = queries;
        transcript->stopped_at_trial = k - 1;
        transcript->output = output;
    }
    return output;
}

double EliminateA::exact_output1() const {
    if (rho_.size() > kMaxExactFamily) {
        throw CapacityError("family A has " + std::to_string(rho_.size()) + " entries; exact evaluation supports at most " +
                            std::to_string(kMaxExactFamily));
    }
    // Each index dies in the first trial where it fails to reach a strict
    // majority; deaths are independent across indices. With T_i the death
    // trial and m = max_i T_i, the run outputs 1 iff trial m starts, i.e.
    // c * sum_i tri(min(T_i, m - 1)) < budget.
    const int kmax = max_trials_;
    uint64_t budget = params_.query_budget();
    uint64_t c = static_cast<uint64_t>(params_.copies_factor);
    const size_t smax = static_cast<size_t>((budget - 1) / c);

    std::vector<std::vector<double>> death(rho_.size(), std::vector<double>(static_cast<size_t>(kmax) + 1, 0.0));
    for (size_t pos = 0; pos < rho_.size(); pos++) {
        double alive = 1;
        for (int k = 1; k <= kmax; k++) {
            double s = survive_[pos][static_cast<size_t>(k - 1)];
            death[pos][k] = alive * (1 - s);
            alive *= s;
        }
    }

    double total = 0;
    for (int m = 1; m <= kmax; m++) {
        // dp[flag][S]: flag = some index dies exactly at trial m.
        std::vector<double> dp0(smax + 1, 0.0);
        std::vector<double> dp1(smax + 1, 0.0);
        dp0[0] = 1;
        for (size_t pos = 0; pos < rho_.size(); pos++) {
            std::vector<double> n0(smax + 1, 0.0);
            std::vector<double> n1(smax + 1, 0.0);
            for (int tdeath = 1; tdeath <= m; tdeath++) {
                double pr = death[pos][tdeath];
                if (pr == 0) {
                    continue;
                }
                size_t w = static_cast<size_t>(triangular(static_cast<uint64_t>(std::min(tdeath, m - 1))));
                bool hit = tdeath == m;
                for (size_t s = 0; s + w <= smax; s++) {
                    if (hit) {
                        n1[s + w] += (dp0[s] + dp1[s]) * pr;
                    } else {
                        n0[s + w] += dp0[s] * pr;
                        n1[s + w] += dp1[s] * pr;
                    }
                }
            }
            dp0 = std::move(n0);
            dp1 = std::move(n1);
        }
        for (double v : dp1) {
            total += v;
        }
    }
    return std::clamp(total, 0.0, 1.0);
}

std::pair<int, ElimTranscript> eliminate_a_sample(const MajorityParams &params, double z, std::mt19937_64 &rng,
                                                  qsim::QueryCounter &counter) {
    EliminateA elim(params, z);
    ElimTranscript tr;
    int out = elim.sample(rng, counter, &tr);
    return {out, std::move(tr)};
}

double eliminate_a_exact(const MajorityParams &params, double z) {
    params.validate();
    int l = params.log_ratio();
    if (static_cast<size_t>(2 * l + 1) > kMaxExactFamily) {
        throw CapacityError("family A has " + std::to_string(2 * l + 1) + " entries; exact evaluation supports at most " +
                            std::to_string(kMaxExactFamily));
    }
    return EliminateA(params, z).exact_output1();
}

EliminateB::EliminateB(const MajorityParams &params, double z) : params_(params) {
    params_.validate();
    family_ = build_family_b(params.n, params.t);
    for (const auto &e : family_.entries) {
        rho_.push_back(rho_plus(params.n, z, e.ab));
    }
}

int EliminateB::sample(std::mt19937_64 &rng, qsim::QueryCounter &counter, ElimTranscript *transcript) const {
    size_t front = 0;
    size_t m = rho_.size();
    int trials = params_.b_trials();
    int executed = 0;
    for (int k = 1; k <= trials && front < m; k++) {
        bool plus = bernoulli(rng, rho_[front]);
        counter.charge(1);
        executed = k;
        if (transcript) {
            Trial trial;
            trial.k = k;
            for (size_t p = front; p < m; p++) {
                trial.surviving.push_back(family_.entries[p].i);
            }
            trial.plus_counts.push_back(plus ? 1 : 0);
            transcript->trials.push_back(std::move(trial));
        }
        if (!plus) {
            front++;
        }
    }
    int output = front < m ? 0 : 1;
    if (transcript) {
        transcript->queries_used = static_cast<uint64_t>(executed);
        transcript->stopped_at_trial = executed;
        transcript->output = output;
    }
    return output;
}

double EliminateB::exact_output1() const {
    return front_removal_empty_probability(rho_, params_.b_trials());
}

std::pair<int, ElimTranscript> eliminate_b_sample(const MajorityParams &params, double z, std::mt19937_64 &rng,
                                                  qsim::QueryCounter &counter) {
    EliminateB elim(params, z);
    ElimTranscript tr;
    int out = elim.sample(rng, counter, &tr);
    return {out, std::move(tr)};
}

double eliminate_b_exact(const MajorityParams &params, double z) {
    return EliminateB(params, z).exact_output1();
}

Rational eliminate_b_exact_rational(const MajorityParams &params, const Rational &z) {
    IndexFamilyB fam = build_family_b(params.n, params.t);
    params.validate();
    std::vector<Rational> rho;
    for (const auto &e : fam.entries) {
        rho.push_back(rho_plus_b_exact(params.n, e.i, z));
    }
    return front_removal_empty_probability(rho, params.b_trials());
}

int amplification_reps_for(double eps) {
    int r = static_cast<int>(std::ceil(18 * std::log(2 / eps)));
    if (r < 1) {
        r = 1;
    }
    return r % 2 == 0 ? r + 1 : r;
}

MajorityPlan plan_majority(int n, double eps, std::optional<int> t_override) {
    if (n < 1) {
        throw DomainError("N must be positive");
    }
    if (!(eps > std::ldexp(1.0, -n) && eps < 0.5)) {
        throw DomainError("eps = " + std::to_string(eps) + " outside (2^-N, 1/2) for N = " + std::to_string(n));
    }
    int t;
    if (t_override) {
        t = *t_override;
    } else {
        t = 0;
        while (std::ldexp(eps, t) < 2) {
            t++;
        }
    }
    MajorityPlan plan;
    plan.params.n = n;
    plan.params.t = t;
    plan.params.amplification_reps = amplification_reps_for(eps);
    if (4 * static_cast<int64_t>(t) > n) {
        if (t_override) {
            throw DomainError("t override " + std::to_string(t) + " exceeds N/4");
        }
        plan.classical = true;
        return plan;
    }
    plan.params.validate();
    return plan;
}

double majority_vote_probability(int reps, double p) {
    auto pmf = binomial_pmf(reps, p);
    double win = 0;
    for (int j = 0; j <= reps; j++) {
        if (2 * j > reps) {
            win += pmf[j];
        }
    }
    return std::clamp(win, 0.0, 1.0);
}

CombinedMajority::CombinedMajority(int n, double eps, double z, std::optional<int> t_override)
    : plan_(plan_majority(n, eps, t_override)), z_(z) {
    if (!(z >= 0 && z <= n)) {
        throw DomainError("weight " + std::to_string(z) + " outside [0, " + std::to_string(n) + "]");
    }
    if (!plan_.classical) {
        elim_a_.emplace(plan_.params, z);
        if (plan_.params.t >= 2) {
            elim_b_.emplace(plan_.params, z);
        }
    }
}

MajorityRun CombinedMajority::sample(std::mt19937_64 &rng) const {
    MajorityRun run;
    if (plan_.classical) {
        run.output = 2 * z_ >= plan_.params.n ? 1 : 0;
        run.queries = static_cast<uint64_t>(plan_.params.n);
        return run;
    }
    qsim::QueryCounter counter;
    int ones = 0;
    int reps = plan_.params.amplification_reps;
    for (int r = 0; r < reps; r++) {
        ones += elim_a_->sample(rng, counter);
    }
    int a_out = 2 * ones > reps ? 1 : 0;
    int b_out = elim_b_ ? elim_b_->sample(rng, counter) : 1;
    run.output = a_out & b_out;
    run.queries = counter.count();
    return run;
}

double CombinedMajority::exact_output1() const {
    if (plan_.classical) {
        return 2 * z_ >= plan_.params.n ? 1.0 : 0.0;
    }
    if (elim_a_->rho().size() > kMaxExactFamily) {
        throw CapacityError("family A too large for exact evaluation");
    }
    double pa = majority_vote_probability(plan_.params.amplification_reps, elim_a_->exact_output1());
    double pb = elim_b_ ? elim_b_->exact_output1() : 1.0;
    return pa * pb;
}

MajorityRun majority_sample_weight(int n, double eps, double z, std::mt19937_64 &rng,
                                   std::optional<int> t_override) {
    return CombinedMajority(n, eps, z, t_override).sample(rng);
}

CombinedMajority guarded_majority(const Bits &x, double eps) {
    int n = static_cast<int>(x.size());
    // MAJ_N(x) = MAJ_{N+2}(01 x): weight 1 + |x| against threshold N/2 + 1.
    int guarded_n = n + 2;
    double guarded_weight = 1.0 + static_cast<double>(hamming_weight(x));
    return CombinedMajority(guarded_n, eps, guarded_weight);
}

MajorityRun majority_sample_bits(const Bits &x, double eps, std::mt19937_64 &rng) {
    return guarded_majority(x, eps).sample(rng);
}

double majority_exact(int n, double eps, double z, std::optional<int> t_override) {
    return CombinedMajority(n, eps, z, t_override).exact_output1();
}

}  // namespace postsel::majority
