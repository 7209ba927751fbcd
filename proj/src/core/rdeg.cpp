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

#include "rdeg.hpp"

#include <bit>
#include <json.hpp>

#include "errors.hpp"

namespace postsel::rdeg {

using boolfn::Subset;
using boolfn::TruthTable;

namespace {

/// Dense Phase-I tableau. Columns: split structural variables, one surplus
/// per row, one artificial per row. The objective sum(artificials) is kept as
/// value + sum_j cost[j] * x_j over the nonbasic columns.
class Tableau {
   public:
    Tableau(const LinearSystem &sys) : m_(sys.b.size()) {
        nfree_ = m_ ? sys.a[0].size() : 0;
        nstruct_ = 2 * nfree_;
        ncols_ = nstruct_ + 2 * m_;
        rows_.assign(m_, std::vector<Rational>(ncols_));
        rhs_.resize(m_);
        basis_.resize(m_);
        cost_.assign(ncols_, Rational(0));
        for (size_t i = 0; i < m_; i++) {
            if (sys.a[i].size() != nfree_) {
                throw DomainError("ragged constraint matrix");
            }
            int sign = sys.b[i] < 0 ? -1 : 1;
            for (size_t j = 0; j < nfree_; j++) {
                if (sys.a[i][j] != 0) {
                    rows_[i][2 * j] = sign * sys.a[i][j];
                    rows_[i][2 * j + 1] = -sign * sys.a[i][j];
                }
            }
            rows_[i][nstruct_ + i] = -sign;
            rows_[i][nstruct_ + m_ + i] = 1;
            rhs_[i] = sign * sys.b[i];
            basis_[i] = nstruct_ + m_ + i;
            value_ += rhs_[i];
            for (size_t j = 0; j < nstruct_ + m_; j++) {
                if (rows_[i][j] != 0) {
                    cost_[j] -= rows_[i][j];
                }
            }
        }
    }

    /// Runs to optimality; returns the iteration count.
    int solve(int bound) {
        int iter = 0;
        while (true) {
            size_t enter = ncols_;
            for (size_t j = 0; j < ncols_; j++) {
                if (cost_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols_) {
                return iter;
            }
            if (++iter > bound) {
                throw TheoremViolation("simplex exceeded its iteration bound");
            }
            size_t leave = m_;
            Rational best;
            for (size_t i = 0; i < m_; i++) {
                if (rows_[i][enter] > 0) {
                    Rational ratio = rhs_[i] / rows_[i][enter];
                    if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
            }
            if (leave == m_) {
                // Phase-I objective is bounded below by 0.
                throw TheoremViolation("phase-I simplex reported an unbounded direction");
            }
            pivot(leave, enter);
        }
    }

    bool feasible() const {
        return value_ == 0;
    }

    std::vector<Rational> point() const {
        std::vector<Rational> col(ncols_);
        for (size_t i = 0; i < m_; i++) {
            col[basis_[i]] = rhs_[i];
        }
        std::vector<Rational> x(nfree_);
        for (size_t j = 0; j < nfree_; j++) {
            x[j] = col[2 * j] - col[2 * j + 1];
        }
        return x;
    }

   private:
    void pivot(size_t r, size_t c) {
        Rational inv = 1 / rows_[r][c];
        for (auto &v : rows_[r]) {
            if (v != 0) {
                v *= inv;
            }
        }
        rhs_[r] *= inv;
        for (size_t i = 0; i < m_; i++) {
            if (i == r || rows_[i][c] == 0) {
                continue;
            }
            Rational f = rows_[i][c];
            for (size_t j = 0; j < ncols_; j++) {
                if (rows_[r][j] != 0) {
                    rows_[i][j] -= f * rows_[r][j];
                }
            }
            rhs_[i] -= f * rhs_[r];
        }
        Rational f = cost_[c];
        for (size_t j = 0; j < ncols_; j++) {
            if (rows_[r][j] != 0) {
                cost_[j] -= f * rows_[r][j];
            }
        }
        value_ += f * rhs_[r];
        basis_[r] = c;
    }

    size_t m_;
    size_t nfree_ = 0;
    size_t nstruct_ = 0;
    size_t ncols_ = 0;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<size_t> basis_;
    std::vector<Rational> cost_;
    Rational value_ = 0;
};

Rational rational_value(double v) {
    return rational_from_double(v);
}

std::vector<Subset> monomials(int n, int d) {
    std::vector<Subset> out;
    for (Subset s = 0; s < (Subset{1} << n); s++) {
        if (std::popcount(s) <= d) {
            out.push_back(s);
        }
    }
    return out;
}

/// Appends the three constraints for one input, given the basis values
/// there (shared by P and Q) and the target value.
void add_point(LinearSystem &sys, const std::vector<Rational> &basis_vals, const Rational &fx, const Rational &eps) {
    size_t k = basis_vals.size();
    std::vector<Rational> q_ge1(2 * k), lower(2 * k), upper(2 * k);
    for (size_t j = 0; j < k; j++) {
        const Rational &v = basis_vals[j];
        // Variables: P coefficients [0, k), Q coefficients [k, 2k).
        q_ge1[k + j] = v;
        lower[j] = v;
        lower[k + j] = -(fx - eps) * v;
        upper[j] = -v;
        upper[k + j] = (fx + eps) * v;
    }
    sys.a.push_back(std::move(q_ge1));
    sys.b.push_back(1);
    sys.a.push_back(std::move(lower));
    sys.b.push_back(0);
    sys.a.push_back(std::move(upper));
    sys.b.push_back(0);
}

Rational power(int base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; i++) {
        r *= base;
    }
    return r;
}

Rational eval_uni(const std::vector<Rational> &c, int w) {
    Rational acc = 0;
    for (size_t k = c.size(); k-- > 0;) {
        acc = acc * w + c[k];
    }
    return acc;
}

Rational eval_multi(const std::map<Subset, Rational> &c, uint64_t x) {
    Rational acc = 0;
    for (const auto &[s, v] : c) {
        if ((s & x) == s) {
            acc += v;
        }
    }
    return acc;
}

void check_eps(const Rational &eps) {
    if (eps < 0) {
        throw DomainError("eps must be non-negative");
    }
}

VerifyResult verify_values(int n_inputs, const std::function<Rational(int)> &p, const std::function<Rational(int)> &q,
                           const std::function<Rational(int)> &f, const Rational &eps,
                           const std::function<std::string(int)> &label) {
    VerifyResult res;
    res.ok = true;
    for (int x = 0; x < n_inputs; x++) {
        Rational qx = q(x);
        if (qx <= 0) {
            res.ok = false;
            res.detail = "Q(" + label(x) + ") = " + format_rational(qx) + " is not positive";
            return res;
        }
        Rational dev = p(x) / qx - f(x);
        if (dev < 0) {
            dev = -dev;
        }
        if (dev > res.max_deviation) {
            res.max_deviation = dev;
        }
        if (dev > eps && res.detail.empty()) {
            res.ok = false;
            res.detail = "|P/Q - f| = " + format_rational(dev) + " at " + label(x) + " exceeds eps";
        }
    }
    return res;
}

}  // namespace

SimplexResult find_feasible_point(const LinearSystem &sys, int iteration_bound) {
    if (sys.a.size() != sys.b.size()) {
        throw DomainError("row count mismatch");
    }
    SimplexResult res;
    if (sys.a.empty()) {
        res.feasible = true;
        return res;
    }
    Tableau tab(sys);
    res.iterations = tab.solve(iteration_bound);
    res.feasible = tab.feasible();
    if (res.feasible) {
        res.x = tab.point();
    }
    return res;
}

Rational Witness::p_at(uint64_t x) const {
    return symmetric ? eval_uni(p_uni, std::popcount(x)) : eval_multi(p_multi, x);
}

Rational Witness::q_at(uint64_t x) const {
    return symmetric ? eval_uni(q_uni, std::popcount(x)) : eval_multi(q_multi, x);
}

Rational Witness::p_at_weight(int w) const {
    if (!symmetric) {
        throw DomainError("weight evaluation needs a symmetric witness");
    }
    return eval_uni(p_uni, w);
}

Rational Witness::q_at_weight(int w) const {
    if (!symmetric) {
        throw DomainError("weight evaluation needs a symmetric witness");
    }
    return eval_uni(q_uni, w);
}

std::pair<boolfn::MultilinearPoly, boolfn::MultilinearPoly> Witness::to_multilinear() const {
    if (n > boolfn::kMaxTableVars) {
        throw CapacityError("multilinear expansion limited to N <= 20");
    }
    auto expand = [&](bool is_p) {
        std::map<Subset, Rational> coeffs;
        if (!symmetric) {
            coeffs = is_p ? p_multi : q_multi;
        } else {
            // Exact Mobius transform of the cube values.
            std::vector<Rational> v(size_t{1} << n);
            for (uint64_t x = 0; x < v.size(); x++) {
                v[x] = is_p ? p_at(x) : q_at(x);
            }
            for (int b = 0; b < n; b++) {
                for (uint64_t x = 0; x < v.size(); x++) {
                    if (x >> b & 1) {
                        v[x] -= v[x ^ (uint64_t{1} << b)];
                    }
                }
            }
            for (uint64_t s = 0; s < v.size(); s++) {
                if (v[s] != 0) {
                    coeffs[s] = v[s];
                }
            }
        }
        boolfn::MultilinearPoly poly;
        poly.n = n;
        for (const auto &[s, c] : coeffs) {
            if (c != 0) {
                poly.coeffs[s] = to_double(c);
            }
        }
        return poly;
    };
    return {expand(true), expand(false)};
}

std::string Witness::to_json() const {
    nlohmann::json j;
    j["mode"] = symmetric ? "symmetric" : "multilinear";
    j["n"] = n;
    j["d"] = d;
    auto multi = [&](const std::map<Subset, Rational> &c) {
        nlohmann::json pj;
        pj["n"] = n;
        pj["terms"] = nlohmann::json::array();
        for (const auto &[s, v] : c) {
            if (v != 0) {
                pj["terms"].push_back({{"subset", boolfn::subset_members(n, s)}, {"coeff", format_rational(v)}});
            }
        }
        return pj;
    };
    auto uni = [&](const std::vector<Rational> &c) {
        nlohmann::json pj;
        pj["coeffs"] = nlohmann::json::array();
        for (const auto &v : c) {
            pj["coeffs"].push_back(format_rational(v));
        }
        return pj;
    };
    j["P"] = symmetric ? uni(p_uni) : multi(p_multi);
    j["Q"] = symmetric ? uni(q_uni) : multi(q_multi);
    return j.dump();
}

WeightProfile weight_profile(const TruthTable &f) {
    if (!f.is_symmetric()) {
        throw DomainError("symmetric mode needs a symmetric function");
    }
    WeightProfile prof;
    prof.n = f.n;
    prof.values.resize(f.n + 1);
    for (int w = 0; w <= f.n; w++) {
        uint64_t x = w == 0 ? 0 : (uint64_t{1} << w) - 1;
        prof.values[w] = rational_value(f.at(x));
    }
    return prof;
}

FeasibilityResult rdeg_feasible_profile(const WeightProfile &f, int d, const Rational &eps) {
    check_eps(eps);
    if (f.n < 0 || f.n > kMaxSymmetricVars || static_cast<int>(f.values.size()) != f.n + 1) {
        throw CapacityError("symmetric mode needs 0 <= N <= 64 with one value per weight");
    }
    if (d < 0 || d > kMaxSymmetricDegree) {
        throw CapacityError("symmetric mode needs 0 <= d <= 16");
    }
    int k = std::min(d, f.n) + 1;
    LinearSystem sys;
    for (int w = 0; w <= f.n; w++) {
        std::vector<Rational> basis_vals(k);
        for (int e = 0; e < k; e++) {
            basis_vals[e] = power(w, e);
        }
        add_point(sys, basis_vals, f.values[w], eps);
    }
    FeasibilityResult res;
    res.symmetric = true;
    res.infeasibility_is_bound = false;
    res.constraints = static_cast<int>(sys.b.size());
    SimplexResult lp = find_feasible_point(sys);
    res.iterations = lp.iterations;
    res.feasible = lp.feasible;
    if (lp.feasible) {
        Witness w;
        w.symmetric = true;
        w.n = f.n;
        w.d = d;
        w.p_uni.assign(lp.x.begin(), lp.x.begin() + k);
        w.q_uni.assign(lp.x.begin() + k, lp.x.end());
        VerifyResult v = verify_witness(w, f, eps);
        if (!v.ok) {
            throw TheoremViolation("LP witness fails exact verification: " + v.detail);
        }
        res.witness = std::move(w);
    }
    return res;
}

FeasibilityResult rdeg_feasible(const TruthTable &f, int d, const Rational &eps, bool symmetric) {
    if (symmetric) {
        return rdeg_feasible_profile(weight_profile(f), d, eps);
    }
    check_eps(eps);
    if (f.n < 0 || f.n > kMaxFullVars) {
        throw CapacityError("full mode needs N <= 4");
    }
    if (d < 0 || d > kMaxFullDegree) {
        throw CapacityError("full mode needs 0 <= d <= 4");
    }
    std::vector<Subset> mons = monomials(f.n, d);
    LinearSystem sys;
    for (uint64_t x = 0; x < (uint64_t{1} << f.n); x++) {
        std::vector<Rational> basis_vals(mons.size());
        for (size_t j = 0; j < mons.size(); j++) {
            basis_vals[j] = (mons[j] & x) == mons[j] ? 1 : 0;
        }
        add_point(sys, basis_vals, rational_value(f.at(x)), eps);
    }
    FeasibilityResult res;
    res.constraints = static_cast<int>(sys.b.size());
    SimplexResult lp = find_feasible_point(sys);
    res.iterations = lp.iterations;
    res.feasible = lp.feasible;
    if (lp.feasible) {
        Witness w;
        w.n = f.n;
        w.d = d;
        size_t k = mons.size();
        for (size_t j = 0; j < k; j++) {
            if (lp.x[j] != 0) {
                w.p_multi[mons[j]] = lp.x[j];
            }
            if (lp.x[k + j] != 0) {
                w.q_multi[mons[j]] = lp.x[k + j];
            }
        }
        VerifyResult v = verify_witness(w, f, eps);
        if (!v.ok) {
            throw TheoremViolation("LP witness fails exact verification: " + v.detail);
        }
        res.witness = std::move(w);
    }
    return res;
}

VerifyResult verify_witness(const Witness &w, const TruthTable &f, const Rational &eps) {
    if (w.n != f.n) {
        VerifyResult res;
        res.detail = "witness and function have different N";
        return res;
    }
    return verify_values(
        1 << f.n, [&](int x) { return w.p_at(x); }, [&](int x) { return w.q_at(x); },
        [&](int x) { return rational_value(f.at(x)); }, eps,
        [&](int x) { return format_bits(bits_from_index(x, f.n)); });
}

VerifyResult verify_witness(const Witness &w, const WeightProfile &f, const Rational &eps) {
    if (!w.symmetric || w.n != f.n) {
        VerifyResult res;
        res.detail = "profile verification needs a symmetric witness of the same N";
        return res;
    }
    return verify_values(
        f.n + 1, [&](int x) { return w.p_at_weight(x); }, [&](int x) { return w.q_at_weight(x); },
        [&](int x) { return f.values[x]; }, eps, [](int x) { return "weight " + std::to_string(x); });
}

ScanResult scan_degree(const TruthTable &f, const Rational &eps, int d_max, bool symmetric) {
    ScanResult scan;
    for (int d = 0; d <= d_max; d++) {
        FeasibilityResult r = rdeg_feasible(f, d, eps, symmetric);
        scan.steps.push_back(r);
        if (r.feasible) {
            scan.degree = d;
            scan.witness = r.witness;
            break;
        }
    }
    return scan;
}

}  // namespace postsel::rdeg
