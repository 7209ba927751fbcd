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

#include "postsel/postsel.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "boolfn.hpp"
#include "compile.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "experiments_internal.hpp"
#include "majority.hpp"
#include "newman.hpp"
#include "qsim.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "rdeg.hpp"

struct postsel_state {
    postsel::qsim::PureState s;
};
struct postsel_poly {
    postsel::boolfn::MultilinearPoly p;
};
struct postsel_table {
    postsel::boolfn::TruthTable t;
};
struct postsel_compiled {
    postsel::compile::CompiledAlgorithm alg;
};
struct postsel_sign {
    postsel::newman::SignApproximant s;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_stage;

struct InvalidArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const char *what) {
    if (!cond) {
        throw InvalidArgument(what);
    }
}

postsel_status fail(postsel_status st, const char *what) {
    g_last_error = what;
    return st;
}

/// Runs fn, mapping every exception onto a status and recording its message.
template <class F>
postsel_status guarded(F &&fn) {
    g_last_error.clear();
    g_last_stage.clear();
    try {
        fn();
        return POSTSEL_OK;
    } catch (const postsel::StageError &e) {
        g_last_stage = e.stage;
        return fail(POSTSEL_ERR_STAGE, e.what());
    } catch (const postsel::DomainError &e) {
        return fail(POSTSEL_ERR_DOMAIN, e.what());
    } catch (const postsel::CapacityError &e) {
        return fail(POSTSEL_ERR_CAPACITY, e.what());
    } catch (const postsel::DegreeOverflowError &e) {
        return fail(POSTSEL_ERR_DEGREE_OVERFLOW, e.what());
    } catch (const postsel::PostselectionImpossible &e) {
        return fail(POSTSEL_ERR_POSTSELECTION_IMPOSSIBLE, e.what());
    } catch (const postsel::NumericalUnderflow &e) {
        return fail(POSTSEL_ERR_NUMERICAL_UNDERFLOW, e.what());
    } catch (const postsel::TheoremViolation &e) {
        return fail(POSTSEL_ERR_THEOREM_VIOLATION, e.what());
    } catch (const InvalidArgument &e) {
        return fail(POSTSEL_ERR_INVALID_ARGUMENT, e.what());
    } catch (const nlohmann::json::exception &e) {
        return fail(POSTSEL_ERR_DOMAIN, e.what());
    } catch (const std::exception &e) {
        return fail(POSTSEL_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(POSTSEL_ERR_INTERNAL, "unknown exception");
    }
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

postsel::Bits to_bits(const uint8_t *x, size_t n) {
    require(x != nullptr || n == 0, "null input bits");
    postsel::Bits b(x, x + n);
    for (auto v : b) {
        require(v <= 1, "input bits must be 0 or 1");
    }
    return b;
}

postsel::experiments::Json parse_params(const char *params_json) {
    if (params_json == nullptr || *params_json == '\0') {
        return postsel::experiments::Json::object();
    }
    try {
        return postsel::experiments::Json::parse(params_json);
    } catch (const nlohmann::json::exception &e) {
        throw postsel::DomainError(std::string("parameters are not valid JSON: ") + e.what());
    }
}

}  // namespace

extern "C" {

const char *postsel_version(void) {
    return postsel::experiments::kArtifactVersion;
}

const char *postsel_status_name(postsel_status status) {
    switch (status) {
        case POSTSEL_OK:
            return "ok";
        case POSTSEL_ERR_DOMAIN:
            return "domain";
        case POSTSEL_ERR_CAPACITY:
            return "capacity";
        case POSTSEL_ERR_DEGREE_OVERFLOW:
            return "degree_overflow";
        case POSTSEL_ERR_POSTSELECTION_IMPOSSIBLE:
            return "postselection_impossible";
        case POSTSEL_ERR_NUMERICAL_UNDERFLOW:
            return "numerical_underflow";
        case POSTSEL_ERR_THEOREM_VIOLATION:
            return "theorem_violation";
        case POSTSEL_ERR_STAGE:
            return "stage";
        case POSTSEL_ERR_IO:
            return "io";
        case POSTSEL_ERR_INVALID_ARGUMENT:
            return "invalid_argument";
        case POSTSEL_ERR_INTERNAL:
            return "internal";
    }
    return "unknown";
}

const char *postsel_last_error(void) {
    return g_last_error.c_str();
}

const char *postsel_last_error_stage(void) {
    return g_last_stage.c_str();
}

void postsel_string_free(char *s) {
    std::free(s);
}

uint64_t postsel_derive_stream(uint64_t master_seed, uint64_t task_id, uint64_t replica_index) {
    return postsel::derive_stream(master_seed, task_id, replica_index);
}

postsel_status postsel_run_experiment(const char *name, const char *params_json, uint64_t seed, int threads,
                                      int timing, char **report_out) {
    return guarded([&] {
        require(name != nullptr && report_out != nullptr, "null argument");
        require(threads >= 1, "threads must be positive");
        postsel::experiments::RunOptions opt{seed, threads, timing != 0};
        auto report = postsel::experiments::run_experiment(name, parse_params(params_json), opt);
        *report_out = dup_string(report.dump(2) + "\n");
    });
}

postsel_status postsel_experiment_names(char **json_out) {
    return guarded([&] {
        require(json_out != nullptr, "null argument");
        *json_out = dup_string(postsel::experiments::Json(postsel::experiments::experiment_names()).dump());
    });
}

postsel_status postsel_report_to_csv(const char *report_json, char **csv_out) {
    return guarded([&] {
        require(report_json != nullptr && csv_out != nullptr, "null argument");
        auto report = postsel::experiments::Json::parse(report_json);
        *csv_out = dup_string(postsel::experiments::rows_to_csv(report));
    });
}

int postsel_criterion_count(void) {
    return postsel::experiments::kCriterionCount;
}

postsel_status postsel_criterion_title(int id, char **title_out) {
    return guarded([&] {
        require(title_out != nullptr, "null argument");
        *title_out = dup_string(postsel::experiments::criterion_title(id));
    });
}

postsel_status postsel_run_criterion(int id, uint64_t seed, int threads, int *pass_out, char **report_out) {
    return guarded([&] {
        require(pass_out != nullptr && report_out != nullptr, "null argument");
        require(threads >= 1, "threads must be positive");
        postsel::experiments::RunOptions opt{seed, threads, false};
        auto res = postsel::experiments::run_criterion(id, opt);
        *pass_out = res.pass ? 1 : 0;
        *report_out = dup_string(res.report.dump(2) + "\n");
    });
}

postsel_status postsel_state_basis(int num_qubits, uint64_t index, postsel_state **out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = new postsel_state{postsel::qsim::PureState::basis(num_qubits, index)};
    });
}

postsel_status postsel_state_from_amplitudes(int num_qubits, const double *amps, size_t len, postsel_state **out) {
    return guarded([&] {
        require(out != nullptr && amps != nullptr, "null argument");
        *out = new postsel_state{
            postsel::qsim::PureState::from_amplitudes(num_qubits, std::vector<double>(amps, amps + len))};
    });
}

void postsel_state_free(postsel_state *s) {
    delete s;
}

int postsel_state_num_qubits(const postsel_state *s) {
    return s ? s->s.num_qubits() : -1;
}

postsel_status postsel_state_amplitudes(const postsel_state *s, double *out, size_t len) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        auto amps = s->s.amplitudes();
        require(len >= amps.size(), "output buffer too small");
        std::copy(amps.begin(), amps.end(), out);
    });
}

postsel_status postsel_state_apply_hadamards(postsel_state *s, int first, int width) {
    return guarded([&] {
        require(s != nullptr, "null argument");
        postsel::qsim::apply_hadamards(s->s, {first, width});
    });
}

postsel_status postsel_state_apply_bit_query(postsel_state *s, const uint8_t *x, size_t n, int first, int width,
                                             int target, int zero_based, uint64_t *queries) {
    return guarded([&] {
        require(s != nullptr, "null argument");
        postsel::qsim::QueryCounter counter;
        postsel::qsim::apply_bit_query(
            s->s, to_bits(x, n), {first, width}, target, counter,
            zero_based ? postsel::qsim::Addressing::ZeroBased : postsel::qsim::Addressing::OneBased);
        if (queries) {
            *queries += counter.count();
        }
    });
}

postsel_status postsel_state_postselect(postsel_state *s, int first, int width, uint64_t value, double *prob_out) {
    return guarded([&] {
        require(s != nullptr, "null argument");
        double p = postsel::qsim::postselect(
            s->s, postsel::qsim::register_equals(s->s.num_qubits(), {first, width}, value));
        if (prob_out) {
            *prob_out = p;
        }
    });
}

postsel_status postsel_state_probability(const postsel_state *s, int first, int width, uint64_t value,
                                         double *prob_out) {
    return guarded([&] {
        require(s != nullptr && prob_out != nullptr, "null argument");
        *prob_out = postsel::qsim::measure_distribution(s->s, {first, width}).probability(value);
    });
}

postsel_status postsel_table_parse(const char *text, postsel_table **out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = new postsel_table{postsel::experiments::parse_function(text)};
    });
}

void postsel_table_free(postsel_table *t) {
    delete t;
}

int postsel_table_num_vars(const postsel_table *t) {
    return t ? t->t.n : -1;
}

postsel_status postsel_table_value(const postsel_table *t, uint64_t x, double *out) {
    return guarded([&] {
        require(t != nullptr && out != nullptr, "null argument");
        require(x < t->t.values.size(), "cube point out of range");
        *out = t->t.at(x);
    });
}

postsel_status postsel_table_fourier(const postsel_table *t, double *out, size_t len) {
    return guarded([&] {
        require(t != nullptr && out != nullptr, "null argument");
        auto spec = postsel::boolfn::fourier(t->t);
        require(len >= spec.coeffs.size(), "output buffer too small");
        std::copy(spec.coeffs.begin(), spec.coeffs.end(), out);
    });
}

postsel_status postsel_table_interpolate(const postsel_table *t, postsel_poly **out) {
    return guarded([&] {
        require(t != nullptr && out != nullptr, "null argument");
        *out = new postsel_poly{postsel::boolfn::mobius_interpolate(t->t)};
    });
}

postsel_status postsel_poly_from_json(const char *json, postsel_poly **out) {
    return guarded([&] {
        require(json != nullptr && out != nullptr, "null argument");
        *out = new postsel_poly{postsel::boolfn::MultilinearPoly::from_json(json)};
    });
}

postsel_status postsel_poly_to_json(const postsel_poly *p, char **json_out) {
    return guarded([&] {
        require(p != nullptr && json_out != nullptr, "null argument");
        *json_out = dup_string(p->p.to_json());
    });
}

void postsel_poly_free(postsel_poly *p) {
    delete p;
}

int postsel_poly_degree(const postsel_poly *p) {
    return p ? p->p.degree() : -2;
}

postsel_status postsel_poly_evaluate(const postsel_poly *p, const double *point, size_t n, double *out) {
    return guarded([&] {
        require(p != nullptr && out != nullptr && (point != nullptr || n == 0), "null argument");
        require(n == static_cast<size_t>(p->p.n), "point length differs from the variable count");
        *out = p->p.evaluate(std::span<const double>(point, n));
    });
}

postsel_status postsel_compile(const postsel_poly *p, const postsel_poly *q, double eps, postsel_compiled **out) {
    return guarded([&] {
        require(p != nullptr && q != nullptr && out != nullptr, "null argument");
        *out = new postsel_compiled{postsel::compile::compile_rational(p->p, q->p, eps)};
    });
}

void postsel_compiled_free(postsel_compiled *c) {
    delete c;
}

int postsel_compiled_degree(const postsel_compiled *c) {
    return c ? c->alg.d : -1;
}

postsel_status postsel_compiled_run(const postsel_compiled *c, const uint8_t *x, size_t n, int f_value,
                                    postsel_compile_row *row_out) {
    return guarded([&] {
        require(c != nullptr && row_out != nullptr, "null argument");
        require(f_value <= 1, "f_value must be 0, 1 or negative");
        std::optional<int> fv;
        if (f_value >= 0) {
            fv = f_value;
        }
        auto row = postsel::compile::run_compiled(c->alg, to_bits(x, n), fv);
        *row_out = {row.success_prob, row.conditional_error, row.ratio, row.f_value, row.queries};
    });
}

postsel_status postsel_newman_r(int d, double x, double *out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = postsel::newman::newman_r(d, x);
    });
}

postsel_status postsel_newman_abs(int d, double x, double *out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = postsel::newman::newman_abs(d, x);
    });
}

postsel_status postsel_sign_create(double eps, postsel_sign **out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = new postsel_sign{postsel::newman::SignApproximant(eps)};
    });
}

void postsel_sign_free(postsel_sign *s) {
    delete s;
}

int postsel_sign_num_inputs(const postsel_sign *s) {
    return s ? s->s.n() : -1;
}

postsel_status postsel_sign_evaluate(const postsel_sign *s, double z, double *out) {
    return guarded([&] {
        require(s != nullptr && out != nullptr, "null argument");
        *out = s->s.evaluate(z);
    });
}

postsel_status postsel_majority_exact(int n, double eps, double z, int t, double *p1_out) {
    return guarded([&] {
        require(p1_out != nullptr, "null argument");
        *p1_out = postsel::majority::majority_exact(n, eps, z, t > 0 ? std::optional<int>(t) : std::nullopt);
    });
}

postsel_status postsel_rdeg_feasible(const postsel_table *f, int d, const char *eps, int symmetric,
                                     int *feasible_out, char **witness_out) {
    return guarded([&] {
        require(f != nullptr && eps != nullptr && feasible_out != nullptr, "null argument");
        auto res = postsel::rdeg::rdeg_feasible(f->t, d, postsel::parse_rational(eps), symmetric != 0);
        *feasible_out = res.feasible ? 1 : 0;
        if (witness_out) {
            *witness_out = res.witness ? dup_string(res.witness->to_json()) : nullptr;
        }
    });
}

}  // extern "C"
