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

#include "newman.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "format.hpp"
#include "majority.hpp"

namespace postsel::newman {

namespace {

void check_newman_args(int d, double x) {
    if (d < 2) {
        throw DomainError("Newman degree must be at least 2");
    }
    if (!(x >= -1 && x <= 1)) {
        throw DomainError("x outside [-1, 1]");
    }
}

/// Ratio form for x >= 0: rho = prod (a^k - x)/(a^k + x) has |rho| <= 1, and
/// r = (1 - rho)/(1 + rho).
double newman_r_ratio_form(const std::vector<double> &nodes, double x) {
    double rho = 1;
    for (double node : nodes) {
        rho *= (node - x) / (node + x);
    }
    return (1 - rho) / (1 + rho);
}

}  // namespace

double newman_a(int d) {
    if (d < 1) {
        throw DomainError("Newman degree must be positive");
    }
    return std::exp(-1 / std::sqrt(static_cast<double>(d)));
}

std::vector<double> newman_nodes(int d) {
    double a = newman_a(d);
    std::vector<double> nodes(d);
    for (int k = 0; k < d; k++) {
        nodes[k] = std::pow(a, k);
    }
    return nodes;
}

double newman_r(int d, double x) {
    check_newman_args(d, x);
    std::vector<double> nodes = newman_nodes(d);
    if (d > kRatioFormThreshold) {
        if (x == 0) {
            return 0;
        }
        double r = newman_r_ratio_form(nodes, std::abs(x));
        return x < 0 ? -r : r;
    }
    double p_pos = 1;
    double p_neg = 1;
    for (double node : nodes) {
        p_pos *= node + x;
        p_neg *= node - x;
    }
    double den = p_pos + p_neg;
    if (std::abs(den) < 1e-300) {
        throw NumericalUnderflow("Newman denominator underflows at d = " + std::to_string(d));
    }
    return (p_pos - p_neg) / den;
}

double newman_abs(int d, double x) {
    return x * newman_r(d, x);
}

const char *tag_name(DomainTag tag) {
    switch (tag) {
        case DomainTag::Assert:
            return "assert";
        case DomainTag::Report:
            return "report";
        case DomainTag::Gap:
            return "gap";
    }
    return "unknown";
}

SignApproximant::SignApproximant(double eps) : eps_(eps) {
    if (!(eps > 0 && eps < 0.5)) {
        throw DomainError("eps must lie in (0, 1/2)");
    }
    double n = std::ceil(2 / eps);
    if (n > 1 << 20) {
        throw CapacityError("N = ceil(2/eps) too large");
    }
    n_ = static_cast<int>(n);
    auto plan = majority::plan_majority(n_, eps, 1);
    auto family = majority::build_family_a(n_, plan.params.t);
    if (family.entries.size() > static_cast<size_t>(majority::kMaxExactFamily)) {
        throw CapacityError("index family of size " + std::to_string(family.entries.size()) +
                            " exceeds exact-DP capacity");
    }
}

double SignApproximant::evaluate(double z) const {
    if (!(z >= -1 && z <= 1)) {
        throw DomainError("z outside [-1, 1]");
    }
    double w = n_ * (z + 1) / 2;
    double p = majority::majority_exact(n_, eps_, w, 1);
    return std::clamp(2 * p - 1, -1.0, 1.0);
}

DomainTag SignApproximant::tag(double z) const {
    constexpr double kEdge = 1e-12;
    double step = 2.0 / n_;
    if (z >= -kEdge) {
        return DomainTag::Assert;
    }
    if (z < -1 + step - kEdge) {
        return DomainTag::Report;
    }
    if (z > -step + kEdge) {
        return DomainTag::Gap;
    }
    return DomainTag::Assert;
}

double quantum_abs(const SignApproximant &s, double z) {
    return z * s.evaluate(z);
}

DomainSpec newman_domain(int d) {
    DomainSpec spec;
    spec.intervals.push_back({-1, 1, DomainTag::Assert});
    for (double node : newman_nodes(d)) {
        spec.extra_points.push_back(node);
        spec.extra_points.push_back(-node);
    }
    return spec;
}

DomainSpec sign_assert_domain(const SignApproximant &s) {
    double step = 2.0 / s.n();
    DomainSpec spec;
    spec.intervals.push_back({-1 + step, -step, DomainTag::Assert});
    spec.intervals.push_back({0, 1, DomainTag::Assert});
    return spec;
}

DomainSpec sign_report_domain(const SignApproximant &s) {
    double step = 2.0 / s.n();
    DomainSpec spec;
    spec.intervals.push_back({-1, -1 + step, DomainTag::Report});
    return spec;
}

std::string GridReport::to_csv() const {
    std::ostringstream out;
    out << "z,value,reference,abs_error,domain_tag\n";
    for (const auto &row : rows) {
        out << shortest_repr(row.z) << ',' << shortest_repr(row.value) << ',' << shortest_repr(row.reference) << ','
            << shortest_repr(row.abs_error) << ',' << tag_name(row.tag) << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::pair<double, DomainTag>> grid_points(const DomainSpec &domain, int grid_size) {
    if (domain.intervals.empty()) {
        throw DomainError("domain has no intervals");
    }
    double total = 0;
    for (const auto &iv : domain.intervals) {
        if (!(iv.hi >= iv.lo)) {
            throw DomainError("interval with hi < lo");
        }
        total += iv.hi - iv.lo;
    }
    size_t m = domain.intervals.size();
    std::vector<int> counts(m, 0);
    if (total > 0) {
        // Largest-remainder apportionment of grid_size by interval length.
        std::vector<std::pair<double, size_t>> remainders;
        int assigned = 0;
        for (size_t j = 0; j < m; j++) {
            const auto &iv = domain.intervals[j];
            double share = grid_size * (iv.hi - iv.lo) / total;
            counts[j] = static_cast<int>(std::floor(share));
            assigned += counts[j];
            remainders.push_back({share - counts[j], j});
        }
        std::stable_sort(remainders.begin(), remainders.end(),
                         [](const auto &a, const auto &b) { return a.first > b.first; });
        for (size_t k = 0; assigned < grid_size; k = (k + 1) % m) {
            counts[remainders[k].second]++;
            assigned++;
        }
    }
    std::vector<std::pair<double, DomainTag>> pts;
    for (size_t j = 0; j < m; j++) {
        const auto &iv = domain.intervals[j];
        int c = iv.hi > iv.lo ? std::max(counts[j], 2) : 1;
        for (int i = 0; i < c; i++) {
            double z = c == 1 ? iv.lo : iv.lo + (iv.hi - iv.lo) * i / (c - 1);
            if (i == c - 1) {
                z = iv.hi;
            }
            pts.push_back({z, iv.tag});
        }
    }
    for (double z : domain.extra_points) {
        for (const auto &iv : domain.intervals) {
            if (z >= iv.lo && z <= iv.hi) {
                pts.push_back({z, iv.tag});
                break;
            }
        }
    }
    std::stable_sort(pts.begin(), pts.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    pts.erase(std::unique(pts.begin(), pts.end(), [](const auto &a, const auto &b) { return a.first == b.first; }),
              pts.end());
    return pts;
}

}  // namespace

GridReport error_grid(const std::function<double(double)> &evaluator, const std::function<double(double)> &reference,
                      const DomainSpec &domain, int grid_size, int threads) {
    if (grid_size < 2) {
        throw DomainError("grid size must be at least 2");
    }
    if (threads < 1) {
        throw DomainError("thread count must be positive");
    }
    auto pts = grid_points(domain, grid_size);
    GridReport rep;
    rep.rows.resize(pts.size());
    auto work = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; i++) {
            GridRow &row = rep.rows[i];
            row.z = pts[i].first;
            row.tag = pts[i].second;
            row.value = evaluator(row.z);
            row.reference = reference(row.z);
            row.abs_error = std::abs(row.value - row.reference);
        }
    };
    size_t workers = std::min<size_t>(static_cast<size_t>(threads), pts.size());
    if (workers <= 1) {
        work(0, pts.size());
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        size_t chunk = (pts.size() + workers - 1) / workers;
        for (size_t w = 0; w < workers; w++) {
            size_t begin = w * chunk;
            size_t end = std::min(pts.size(), begin + chunk);
            pool.emplace_back([&, w, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    rep.argmax = rep.rows.front().z;
    for (const auto &row : rep.rows) {
        if (row.abs_error > rep.max_error) {
            rep.max_error = row.abs_error;
            rep.argmax = row.z;
        }
    }
    return rep;
}

DecayFit fit_decay(const std::vector<std::pair<int, double>> &points) {
    if (points.size() < 3) {
        throw DomainError("decay fit needs at least 3 points");
    }
    std::vector<double> xs, ys;
    for (auto [d, err] : points) {
        if (!(err > 0)) {
            throw DomainError("decay fit needs strictly positive errors");
        }
        if (d < 1) {
            throw DomainError("degree must be positive");
        }
        xs.push_back(std::sqrt(static_cast<double>(d)));
        ys.push_back(std::log(err));
    }
    double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0) {
        throw DomainError("decay fit needs at least two distinct degrees");
    }
    DecayFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace postsel::newman
