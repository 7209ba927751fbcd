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

#include "experiments.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "compile.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "experiments_internal.hpp"
#include "format.hpp"
#include "majority.hpp"
#include "newman.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "rdeg.hpp"

namespace postsel::experiments {

Params::Params(Json raw) : raw_(std::move(raw)) {
    if (raw_.is_null()) {
        raw_ = Json::object();
    }
    if (!raw_.is_object()) {
        throw DomainError("parameters must be a JSON object");
    }
}

const Json *Params::find(const std::string &key) const {
    auto it = raw_.find(key);
    if (it == raw_.end() || it->is_null()) {
        return nullptr;
    }
    return &*it;
}

bool Params::has(const std::string &key) const {
    return find(key) != nullptr;
}

double Params::real(const std::string &key, std::optional<double> fallback) {
    const Json *v = find(key);
    double out;
    if (!v) {
        if (!fallback) {
            throw DomainError("missing parameter '" + key + "'");
        }
        out = *fallback;
    } else if (v->is_number()) {
        out = v->get<double>();
    } else if (v->is_string()) {
        try {
            out = to_double(parse_rational(v->get<std::string>()));
        } catch (const Error &) {
            throw DomainError("parameter '" + key + "' is not a number");
        }
    } else {
        throw DomainError("parameter '" + key + "' is not a number");
    }
    echo_[key] = out;
    return out;
}

int64_t Params::integer(const std::string &key, std::optional<int64_t> fallback) {
    const Json *v = find(key);
    int64_t out;
    if (!v) {
        if (!fallback) {
            throw DomainError("missing parameter '" + key + "'");
        }
        out = *fallback;
    } else if (v->is_number_integer()) {
        out = v->get<int64_t>();
    } else if (v->is_string()) {
        const std::string s = v->get<std::string>();
        auto res = std::from_chars(s.data(), s.data() + s.size(), out);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw DomainError("parameter '" + key + "' is not an integer");
        }
    } else {
        throw DomainError("parameter '" + key + "' is not an integer");
    }
    echo_[key] = out;
    return out;
}

std::string Params::text(const std::string &key, std::optional<std::string> fallback) {
    const Json *v = find(key);
    std::string out;
    if (!v) {
        if (!fallback) {
            throw DomainError("missing parameter '" + key + "'");
        }
        out = *fallback;
    } else if (v->is_string()) {
        out = v->get<std::string>();
    } else {
        out = v->dump();
    }
    echo_[key] = out;
    return out;
}

bool Params::flag(const std::string &key, bool fallback) {
    const Json *v = find(key);
    bool out = fallback;
    if (v) {
        if (v->is_boolean()) {
            out = v->get<bool>();
        } else if (v->is_string()) {
            std::string s = v->get<std::string>();
            if (s == "true" || s == "1" || s == "yes") {
                out = true;
            } else if (s == "false" || s == "0" || s == "no") {
                out = false;
            } else {
                throw DomainError("parameter '" + key + "' is not a boolean");
            }
        } else {
            throw DomainError("parameter '" + key + "' is not a boolean");
        }
    }
    echo_[key] = out;
    return out;
}

std::vector<int64_t> Params::integer_list(const std::string &key, const std::string &fallback) {
    std::string s = text(key, fallback);
    std::vector<int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        item = first == std::string::npos ? "" : item.substr(first, last - first + 1);
        int64_t v;
        auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
            throw DomainError("parameter '" + key + "' must be a comma-separated integer list");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw DomainError("parameter '" + key + "' is empty");
    }
    return out;
}

Json make_report(const std::string &experiment, const Json &config, Json metrics, Json rows) {
    Json r = Json::object();
    r["version"] = kArtifactVersion;
    r["experiment"] = experiment;
    r["config"] = config;
    r["metrics"] = std::move(metrics);
    if (!rows.is_null()) {
        r["rows"] = std::move(rows);
    }
    return r;
}

namespace {

std::string csv_cell(const Json &v) {
    if (v.is_number_float()) {
        return shortest_repr(v.get<double>());
    }
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string q = "\"";
        for (char c : s) {
            q += c;
            if (c == '"') {
                q += '"';
            }
        }
        return q + "\"";
    }
    return v.dump();
}

}  // namespace

std::string rows_to_csv(const Json &report) {
    auto it = report.find("rows");
    if (it == report.end() || !it->is_array() || it->empty()) {
        return "";
    }
    std::ostringstream out;
    const Json &first = it->front();
    bool lead = true;
    for (auto kv = first.begin(); kv != first.end(); ++kv) {
        out << (lead ? "" : ",") << kv.key();
        lead = false;
    }
    out << '\n';
    for (const auto &row : *it) {
        lead = true;
        for (auto kv = first.begin(); kv != first.end(); ++kv) {
            out << (lead ? "" : ",");
            auto cell = row.find(kv.key());
            if (cell != row.end()) {
                out << csv_cell(*cell);
            }
            lead = false;
        }
        out << '\n';
    }
    return out.str();
}

uint64_t task_id(const std::string &name, uint64_t point) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : name) {
        h = (h ^ c) * 0x100000001b3ull;
    }
    return mix64(h) + point;
}

boolfn::TruthTable parse_function(const std::string &spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        return boolfn::TruthTable::parse(spec);
    }
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    int a = 0, b = 0;
    auto second = rest.find(':');
    auto parse_int = [](const std::string &s) {
        int v;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw DomainError("bad integer '" + s + "' in function spec");
        }
        return v;
    };
    a = parse_int(rest.substr(0, second));
    if (second != std::string::npos) {
        b = parse_int(rest.substr(second + 1));
    }
    if (kind == "or") {
        return boolfn::or_table(a);
    }
    if (kind == "and") {
        return boolfn::and_table(a);
    }
    if (kind == "maj") {
        return boolfn::majority_table(a);
    }
    if (kind == "dict") {
        return boolfn::dictator_table(a, b);
    }
    if (kind == "parity") {
        return boolfn::TruthTable::from_function(a, [](uint64_t x) { return std::popcount(x) % 2 ? 1.0 : 0.0; });
    }
    throw DomainError("unknown function family '" + kind + "' (or, and, maj, dict, parity)");
}

Json poly_json(const boolfn::MultilinearPoly &p) {
    return Json::parse(p.to_json());
}

namespace {

using Fn = Experiment (*)(Params &, const RunOptions &);

Experiment maj_run(Params &p, const RunOptions &opt) {
    std::optional<majority::CombinedMajority> algo;
    double eps;
    int n;
    double weight;
    bool guarded = p.has("bits");
    int64_t t = 0;
    if (guarded) {
        Bits x = parse_bits(p.text("bits"));
        eps = p.real("eps", 0.2);
        n = static_cast<int>(x.size());
        weight = static_cast<double>(hamming_weight(x));
        algo.emplace(majority::guarded_majority(x, eps));
    } else {
        n = static_cast<int>(p.integer("n", 32));
        eps = p.real("eps", 0.2);
        weight = p.real("weight");
        t = p.integer("t", 0);
        algo.emplace(n, eps, weight, t > 0 ? std::optional<int>(static_cast<int>(t)) : std::nullopt);
    }
    std::string mode = p.text("mode", "sample");
    int truth = 2 * weight >= n ? 1 : 0;
    const auto &plan = algo->plan();
    Json m = Json::object();
    m["n"] = n;
    m["weight"] = weight;
    m["truth"] = truth;
    m["guarded"] = guarded;
    m["classical"] = plan.classical;
    m["t"] = plan.params.t;
    m["amplification_reps"] = plan.params.amplification_reps;
    m["query_budget_per_run"] = plan.classical ? static_cast<uint64_t>(n) : plan.params.query_budget();
    if (mode == "exact") {
        double p1 = algo->exact_output1();
        m["p_output1"] = p1;
        m["error"] = truth ? 1 - p1 : p1;
        return {m, nullptr};
    }
    if (mode != "sample") {
        throw DomainError("mode must be 'sample' or 'exact'");
    }
    int64_t samples = p.integer("samples", 10000);
    if (samples < 1) {
        throw DomainError("samples must be positive");
    }
    auto runs = sample_replicas<majority::MajorityRun>(
        static_cast<size_t>(samples), opt, task_id("maj-run", 0),
        [&](std::mt19937_64 &rng, size_t) { return algo->sample(rng); });
    uint64_t errors = 0, max_q = 0, sum_q = 0;
    for (const auto &r : runs) {
        errors += r.output != truth;
        max_q = std::max(max_q, r.queries);
        sum_q += r.queries;
    }
    double e = static_cast<double>(errors) / static_cast<double>(samples);
    m["samples"] = samples;
    m["errors"] = errors;
    m["empirical_error"] = e;
    m["sigma_eps"] = std::sqrt(eps * (1 - eps) / static_cast<double>(samples));
    m["max_queries"] = max_q;
    m["mean_queries"] = static_cast<double>(sum_q) / static_cast<double>(samples);
    return {m, nullptr};
}

Experiment maj_curve(Params &p, const RunOptions &opt) {
    int n = static_cast<int>(p.integer("n", 32));
    double eps = p.real("eps", 0.2);
    int64_t t = p.integer("t", 0);
    int64_t points = p.integer("points", 2 * static_cast<int64_t>(n) + 1);
    if (points < 2) {
        throw DomainError("points must be at least 2");
    }
    std::optional<int> tov = t > 0 ? std::optional<int>(static_cast<int>(t)) : std::nullopt;
    majority::plan_majority(n, eps, tov);
    auto vals = parallel_map<double>(static_cast<size_t>(points), opt.threads, [&](size_t i) {
        double z = n * static_cast<double>(i) / static_cast<double>(points - 1);
        return majority::majority_exact(n, eps, z, tov);
    });
    Json rows = Json::array();
    double worst = 0, worst_z = 0;
    for (size_t i = 0; i < vals.size(); i++) {
        double z = n * static_cast<double>(i) / static_cast<double>(points - 1);
        double err = 2 * z >= n ? 1 - vals[i] : vals[i];
        rows.push_back({{"weight", z}, {"p_output1", vals[i]}, {"error", err}});
        if (err > worst) {
            worst = err;
            worst_z = z;
        }
    }
    Json m = {{"max_error", worst}, {"argmax_weight", worst_z}};
    return {m, rows};
}

double or_error_bound(int n, double eps0) {
    double e2 = eps0 * eps0;
    return e2 * n / (e2 * n + (1 - e2));
}

Experiment or_demo(Params &p, const RunOptions &opt) {
    std::vector<Bits> inputs;
    int n;
    if (p.has("x")) {
        inputs.push_back(parse_bits(p.text("x")));
        n = static_cast<int>(inputs[0].size());
    } else {
        n = static_cast<int>(p.integer("n", 4));
        if (n < 1 || n > 12) {
            throw DomainError("n must lie in [1, 12] when enumerating all inputs");
        }
        for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
            inputs.push_back(bits_from_index(x, n));
        }
    }
    double eps0 = p.real("eps0", 0.1);
    std::string mode = p.text("mode", "exact");
    int64_t samples = mode == "sample" ? p.integer("samples", 10000) : 0;
    if (mode != "exact" && mode != "sample") {
        throw DomainError("mode must be 'sample' or 'exact'");
    }
    if (mode == "sample" && samples < 1) {
        throw DomainError("samples must be positive");
    }
    Json rows = Json::array();
    double worst = 0;
    uint64_t queries = 0;
    for (size_t k = 0; k < inputs.size(); k++) {
        const Bits &x = inputs[k];
        auto r = constructions::or_postselect_demo(x, eps0, constructions::DemoMode::Exact);
        int truth = hamming_weight(x) > 0 ? 1 : 0;
        Json row = {{"x", format_bits(x)},
                    {"or", truth},
                    {"success_prob", r.success_prob},
                    {"conditional_error", r.conditional_error},
                    {"output", r.output}};
        if (mode == "sample") {
            auto outs = sample_replicas<int>(static_cast<size_t>(samples), opt, task_id("or-demo", k),
                                             [&](std::mt19937_64 &rng, size_t) {
                                                 return constructions::or_postselect_demo(
                                                            x, eps0, constructions::DemoMode::Sample, &rng)
                                                     .output;
                                             });
            uint64_t wrong = 0;
            for (int o : outs) {
                wrong += o != truth;
            }
            row["empirical_error"] = static_cast<double>(wrong) / static_cast<double>(samples);
        }
        worst = std::max(worst, r.conditional_error);
        queries = std::max(queries, r.queries);
        rows.push_back(row);
    }
    Json m = {{"n", n},
              {"max_conditional_error", worst},
              {"error_bound", or_error_bound(n, eps0)},
              {"queries", queries}};
    return {m, rows};
}

Experiment extract(Params &p, const RunOptions &) {
    std::string algorithm = p.text("algorithm", "or-demo");
    if (algorithm != "or-demo") {
        throw DomainError("only the 'or-demo' algorithm is built in; use 'roundtrip' for compiled pairs");
    }
    int n = static_cast<int>(p.integer("n", 2));
    double eps0 = p.real("eps0", 0.1);
    constructions::OrDemoAlgorithm alg(n, eps0);
    auto pq = boolfn::extract_pq(alg);
    double bound = or_error_bound(n, eps0);
    auto check = boolfn::ratio_check(pq.p, pq.q, boolfn::or_table(n), bound);
    Json m = {{"n", n},
              {"queries", pq.queries},
              {"p", poly_json(pq.p)},
              {"q", poly_json(pq.q)},
              {"degree_p", pq.p.degree()},
              {"degree_q", pq.q.degree()},
              {"eps", bound},
              {"ratio_ok", check.ok},
              {"max_deviation", check.max_deviation},
              {"argmax", format_bits(bits_from_index(check.argmax, n))}};
    return {m, nullptr};
}

Json spectrum_json(const boolfn::FourierSpectrum &s) {
    Json out = Json::array();
    for (uint64_t S = 0; S < s.coeffs.size(); S++) {
        if (std::abs(s.coeffs[S]) > boolfn::kZeroTolerance) {
            out.push_back({{"subset", boolfn::subset_members(s.n, S)}, {"coeff", s.coeffs[S]}});
        }
    }
    return out;
}

Experiment compile_exp(Params &p, const RunOptions &) {
    auto P = boolfn::MultilinearPoly::from_json(p.text("p"));
    auto Q = boolfn::MultilinearPoly::from_json(p.text("q"));
    double eps = p.real("eps", 0.05);
    std::optional<boolfn::TruthTable> f;
    if (p.has("f")) {
        f = parse_function(p.text("f"));
    }
    auto alg = compile::compile_rational(P, Q, eps);
    auto rep = compile::run_all(alg, f ? &*f : nullptr);
    Json rows = Json::array();
    for (const auto &r : rep.rows) {
        rows.push_back({{"x", format_bits(bits_from_index(r.x, alg.n))},
                        {"f", r.f_value},
                        {"ratio", r.ratio},
                        {"success_prob", r.success_prob},
                        {"conditional_error", r.conditional_error},
                        {"formula_error", compile::error_formula(r.ratio, 1 - 2 * r.f_value)},
                        {"queries", r.queries}});
    }
    Json m = {{"n", alg.n},
              {"d", alg.d},
              {"queries_charged", rep.queries_charged},
              {"max_error", rep.max_error},
              {"within_eps", rep.max_error <= eps + 1e-12},
              {"spectrum_q", spectrum_json(alg.spec_q)},
              {"spectrum_r", spectrum_json(alg.spec_r)}};
    return {m, rows};
}

Experiment roundtrip_exp(Params &p, const RunOptions &) {
    auto f = parse_function(p.text("f"));
    auto P = boolfn::MultilinearPoly::from_json(p.text("p"));
    auto Q = boolfn::MultilinearPoly::from_json(p.text("q"));
    double eps = p.real("eps", 0.05);
    auto rep = compile::roundtrip(f, P, Q, eps);
    Json m = {{"stages", {"pre", "compile", "run", "extract", "check"}},
              {"d", rep.d},
              {"input_max_deviation", rep.input_check.max_deviation},
              {"compiled_max_error", rep.compiled.max_error},
              {"queries_charged", rep.compiled.queries_charged},
              {"extracted_p", poly_json(rep.extracted.p)},
              {"extracted_q", poly_json(rep.extracted.q)},
              {"extracted_degree", rep.extracted_degree},
              {"extracted_max_deviation", rep.extracted_check.max_deviation},
              {"ok", true}};
    return {m, nullptr};
}

Experiment newman_exp(Params &p, const RunOptions &opt) {
    std::string mode = p.text("mode", "classic");
    int64_t grid = p.integer("grid", mode == "classic" ? 10000 : 200);
    if (mode == "classic") {
        auto degrees = p.integer_list("degrees", "16,36,64,100");
        bool refine = p.flag("refine", false);
        Json rows = Json::array();
        Json per = Json::array();
        std::vector<std::pair<int, double>> pts;
        for (int64_t d64 : degrees) {
            int d = static_cast<int>(d64);
            auto dom = refine ? refined_newman_domain(d) : newman::newman_domain(d);
            auto g = newman::error_grid([d](double x) { return newman::newman_abs(d, x); },
                                        [](double x) { return std::abs(x); }, dom, static_cast<int>(grid),
                                        opt.threads);
            for (const auto &r : g.rows) {
                rows.push_back({{"d", d},
                                {"z", r.z},
                                {"value", r.value},
                                {"reference", r.reference},
                                {"abs_error", r.abs_error},
                                {"domain_tag", newman::tag_name(r.tag)}});
            }
            per.push_back({{"d_or_eps", d},
                           {"max_error", g.max_error},
                           {"argmax", g.argmax},
                           {"bound", std::exp(-0.5 * std::sqrt(static_cast<double>(d)))}});
            pts.push_back({d, g.max_error});
        }
        Json m = {{"mode", "classic"}, {"degrees", per}};
        if (pts.size() >= 3) {
            auto fit = newman::fit_decay(pts);
            m["slope"] = fit.slope;
            m["intercept"] = fit.intercept;
            m["residual"] = fit.residual;
        }
        return {m, rows};
    }
    if (mode != "quantum") {
        throw DomainError("mode must be 'classic' or 'quantum'");
    }
    double eps = p.real("eps", 0.0625);
    newman::SignApproximant s(eps);
    auto sgn = [](double z) { return z >= 0 ? 1.0 : -1.0; };
    auto eval = [&s](double z) { return s.evaluate(z); };
    auto assert_grid = newman::error_grid(eval, sgn, newman::sign_assert_domain(s), static_cast<int>(grid), opt.threads);
    int report_points = std::max<int>(2, static_cast<int>(grid / 20));
    auto report_grid = newman::error_grid(eval, sgn, newman::sign_report_domain(s), report_points, opt.threads);
    newman::DomainSpec near_zero;
    near_zero.intervals.push_back({-eps, eps, newman::DomainTag::Assert});
    auto abs_grid = newman::error_grid([&s](double z) { return newman::quantum_abs(s, z); },
                                       [](double z) { return std::abs(z); }, near_zero, static_cast<int>(grid),
                                       opt.threads);
    Json rows = Json::array();
    std::vector<newman::GridRow> all = report_grid.rows;
    all.insert(all.end(), assert_grid.rows.begin(), assert_grid.rows.end());
    std::stable_sort(all.begin(), all.end(), [](const auto &a, const auto &b) { return a.z < b.z; });
    for (const auto &r : all) {
        rows.push_back({{"z", r.z},
                        {"value", r.value},
                        {"reference", r.reference},
                        {"abs_error", r.abs_error},
                        {"domain_tag", newman::tag_name(r.tag)}});
    }
    Json m = {{"mode", "quantum"},
              {"d_or_eps", eps},
              {"n", s.n()},
              {"max_error", assert_grid.max_error},
              {"argmax", assert_grid.argmax},
              {"assert_points", assert_grid.rows.size()},
              {"report_max_error", report_grid.max_error},
              {"report_argmax", report_grid.argmax},
              {"abs_max_error_near_zero", abs_grid.max_error},
              {"abs_bound_near_zero", 2 * eps}};
    return {m, rows};
}

Json rdeg_result_json(const rdeg::FeasibilityResult &r, int d) {
    Json j = {{"d", d},
              {"feasible", r.feasible},
              {"iterations", r.iterations},
              {"constraints", r.constraints}};
    return j;
}

Experiment rdeg_exp(Params &p, const RunOptions &) {
    auto f = parse_function(p.text("f"));
    Rational eps = parse_rational(p.text("eps", "1/10"));
    bool symmetric = p.flag("symmetric", false);
    Json m = Json::object();
    m["n"] = f.n;
    m["eps"] = format_rational(eps);
    m["mode"] = symmetric ? "symmetric" : "full";
    std::optional<rdeg::Witness> witness;
    if (p.has("d")) {
        int d = static_cast<int>(p.integer("d"));
        auto r = rdeg::rdeg_feasible(f, d, eps, symmetric);
        m["feasible"] = r.feasible;
        m["steps"] = Json::array({rdeg_result_json(r, d)});
        m["completeness_caveat"] = r.completeness_caveat;
        m["infeasibility_is_bound"] = r.infeasibility_is_bound;
        witness = r.witness;
    } else {
        int d_max = static_cast<int>(p.integer("d_max", 4));
        auto scan = rdeg::scan_degree(f, eps, d_max, symmetric);
        m["degree"] = scan.degree ? Json(*scan.degree) : Json(nullptr);
        Json steps = Json::array();
        for (size_t i = 0; i < scan.steps.size(); i++) {
            steps.push_back(rdeg_result_json(scan.steps[i], static_cast<int>(i)));
        }
        m["steps"] = steps;
        m["completeness_caveat"] = true;
        m["infeasibility_is_bound"] = !symmetric;
        witness = scan.witness;
    }
    if (witness) {
        auto v = rdeg::verify_witness(*witness, f, eps);
        m["witness"] = Json::parse(witness->to_json());
        m["witness_verified"] = v.ok;
        m["witness_max_deviation"] = format_rational(v.max_deviation);
    }
    return {m, nullptr};
}

Experiment report_exp(Params &p, const RunOptions &opt) {
    auto ids = p.integer_list("criteria", "1,2,3,4,5,6,7,8,9,10");
    Json rows = Json::array();
    Json crit = Json::array();
    bool all = true;
    for (int64_t id : ids) {
        auto c = run_criterion(static_cast<int>(id), opt);
        all = all && c.pass;
        crit.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}});
        for (const auto &ch : c.checks) {
            rows.push_back({{"criterion", c.id}, {"check", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
        }
    }
    Json m = {{"criteria", crit}, {"all_pass", all}};
    return {m, rows};
}

Experiment verify_exp(Params &p, const RunOptions &opt) {
    int id = static_cast<int>(p.integer("criterion"));
    auto c = run_criterion(id, opt);
    return {c.report.at("metrics"), c.report.contains("rows") ? c.report.at("rows") : Json(nullptr)};
}

const std::vector<std::pair<std::string, Fn>> &registry() {
    static const std::vector<std::pair<std::string, Fn>> table = {
        {"maj-run", maj_run},     {"maj-curve", maj_curve},         {"or-demo", or_demo},
        {"extract", extract},     {"compile", compile_exp},         {"roundtrip", roundtrip_exp},
        {"newman", newman_exp},   {"rdeg", rdeg_exp},               {"report", report_exp},
        {"verify", verify_exp},
    };
    return table;
}

}  // namespace

newman::DomainSpec refined_newman_domain(int d) {
    auto spec = newman::newman_domain(d);
    auto nodes = newman::newman_nodes(d);
    // Geometric points between consecutive nodes and below the smallest one,
    // where the uniform grid is too coarse to see the error.
    constexpr int kPerGap = 16;
    std::vector<double> extra;
    for (size_t k = 0; k + 1 < nodes.size(); k++) {
        double hi = nodes[k], lo = nodes[k + 1];
        for (int j = 1; j < kPerGap; j++) {
            extra.push_back(lo * std::pow(hi / lo, static_cast<double>(j) / kPerGap));
        }
    }
    double smallest = nodes.back();
    for (int j = 1; j <= 4 * kPerGap; j++) {
        extra.push_back(smallest * std::pow(1e-4, static_cast<double>(j) / (4 * kPerGap)));
    }
    for (double v : extra) {
        spec.extra_points.push_back(v);
        spec.extra_points.push_back(-v);
    }
    return spec;
}

const std::vector<std::string> &experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &[name, fn] : registry()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

Json run_experiment(const std::string &name, const Json &params, const RunOptions &opt) {
    if (opt.threads < 1) {
        throw DomainError("thread count must be positive");
    }
    for (const auto &[n, fn] : registry()) {
        if (n != name) {
            continue;
        }
        Params p(params);
        auto start = std::chrono::steady_clock::now();
        Experiment out = fn(p, opt);
        Json config = p.echo();
        config["seed"] = opt.seed;
        if (opt.timing) {
            out.metrics["wall_seconds"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        return make_report(name, config, std::move(out.metrics), std::move(out.rows));
    }
    throw DomainError("unknown experiment '" + name + "'");
}

}  // namespace postsel::experiments
