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
#include <string>
#include <vector>

#include <json.hpp>

#include "postsel/postsel.h"

namespace {

std::string take(char *s) {
    std::string out = s ? s : "";
    postsel_string_free(s);
    return out;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STREQ(postsel_version(), "1.0.0");
    EXPECT_STREQ(postsel_status_name(POSTSEL_OK), "ok");
    EXPECT_STRNE(postsel_status_name(POSTSEL_ERR_DOMAIN), postsel_status_name(POSTSEL_ERR_CAPACITY));
}

TEST(CApi, StateLifecycle) {
    postsel_state *s = nullptr;
    ASSERT_EQ(postsel_state_basis(3, 0, &s), POSTSEL_OK);
    EXPECT_EQ(postsel_state_num_qubits(s), 3);
    ASSERT_EQ(postsel_state_apply_hadamards(s, 0, 2), POSTSEL_OK);
    uint8_t x[4] = {1, 0, 0, 0};
    uint64_t queries = 0;
    ASSERT_EQ(postsel_state_apply_bit_query(s, x, 4, 0, 2, 2, 1, &queries), POSTSEL_OK);
    EXPECT_EQ(queries, 1u);
    double p = 0;
    ASSERT_EQ(postsel_state_probability(s, 2, 1, 1, &p), POSTSEL_OK);
    EXPECT_NEAR(p, 0.25, 1e-12);
    ASSERT_EQ(postsel_state_postselect(s, 2, 1, 1, &p), POSTSEL_OK);
    std::vector<double> amps(8);
    ASSERT_EQ(postsel_state_amplitudes(s, amps.data(), amps.size()), POSTSEL_OK);
    EXPECT_NEAR(amps[1], 1, 1e-12);
    EXPECT_EQ(postsel_state_amplitudes(s, amps.data(), 4), POSTSEL_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(postsel_state_postselect(s, 2, 1, 0, &p), POSTSEL_ERR_POSTSELECTION_IMPOSSIBLE);
    EXPECT_STRNE(postsel_last_error(), "");
    postsel_state_free(s);
}

TEST(CApi, ErrorCodes) {
    postsel_state *s = nullptr;
    EXPECT_EQ(postsel_state_basis(40, 0, &s), POSTSEL_ERR_CAPACITY);
    EXPECT_EQ(postsel_state_basis(2, 9, &s), POSTSEL_ERR_DOMAIN);
    EXPECT_EQ(postsel_state_basis(2, 0, nullptr), POSTSEL_ERR_INVALID_ARGUMENT);
    double bad[2] = {1, 1};
    EXPECT_EQ(postsel_state_from_amplitudes(1, bad, 2, &s), POSTSEL_ERR_DOMAIN);
    double out = 0;
    EXPECT_EQ(postsel_majority_exact(32, 0.6, 16, 0, &out), POSTSEL_ERR_DOMAIN);
}

TEST(CApi, TablesAndPolynomials) {
    postsel_table *t = nullptr;
    ASSERT_EQ(postsel_table_parse("or:2", &t), POSTSEL_OK);
    EXPECT_EQ(postsel_table_num_vars(t), 2);
    std::vector<double> f(4);
    ASSERT_EQ(postsel_table_fourier(t, f.data(), f.size()), POSTSEL_OK);
    EXPECT_DOUBLE_EQ(f[0], 0.75);
    EXPECT_DOUBLE_EQ(f[3], -0.25);
    postsel_poly *p = nullptr;
    ASSERT_EQ(postsel_table_interpolate(t, &p), POSTSEL_OK);
    EXPECT_EQ(postsel_poly_degree(p), 2);
    double pt[2] = {0.5, 0.5}, v = 0;
    ASSERT_EQ(postsel_poly_evaluate(p, pt, 2, &v), POSTSEL_OK);
    EXPECT_DOUBLE_EQ(v, 0.75);
    char *json = nullptr;
    ASSERT_EQ(postsel_poly_to_json(p, &json), POSTSEL_OK);
    postsel_poly *back = nullptr;
    ASSERT_EQ(postsel_poly_from_json(json, &back), POSTSEL_OK);
    postsel_string_free(json);
    EXPECT_EQ(postsel_poly_degree(back), 2);
    EXPECT_EQ(postsel_poly_from_json("{not json", &back), POSTSEL_ERR_DOMAIN);
    postsel_poly_free(back);
    postsel_poly_free(p);
    postsel_table_free(t);
}

TEST(CApi, CompileAndRun) {
    postsel_poly *p = nullptr, *q = nullptr;
    ASSERT_EQ(postsel_poly_from_json(R"({"n":2,"terms":[{"subset":[1],"coeff":1},{"subset":[2],"coeff":1}]})", &p),
              POSTSEL_OK);
    ASSERT_EQ(postsel_poly_from_json(
                  R"({"n":2,"terms":[{"subset":[],"coeff":0.05},{"subset":[1],"coeff":1},{"subset":[2],"coeff":1}]})",
                  &q),
              POSTSEL_OK);
    postsel_compiled *c = nullptr;
    ASSERT_EQ(postsel_compile(p, q, 0.05, &c), POSTSEL_OK);
    EXPECT_EQ(postsel_compiled_degree(c), 1);
    uint8_t x[2] = {1, 0};
    postsel_compile_row row{};
    ASSERT_EQ(postsel_compiled_run(c, x, 2, 1, &row), POSTSEL_OK);
    EXPECT_LE(row.conditional_error, 0.05);
    EXPECT_EQ(row.queries, 1u);
    postsel_compiled_free(c);

    postsel_poly *zero = nullptr;
    ASSERT_EQ(postsel_poly_from_json(R"({"n":2,"terms":[]})", &zero), POSTSEL_OK);
    EXPECT_EQ(postsel_compile(p, zero, 0.05, &c), POSTSEL_ERR_DOMAIN);
    postsel_poly_free(zero);
    postsel_poly_free(p);
    postsel_poly_free(q);
}

TEST(CApi, Approximants) {
    double r = 0;
    ASSERT_EQ(postsel_newman_r(16, 1.0, &r), POSTSEL_OK);
    EXPECT_EQ(r, 1.0);
    EXPECT_EQ(postsel_newman_abs(16, 2.0, &r), POSTSEL_ERR_DOMAIN);
    postsel_sign *s = nullptr;
    ASSERT_EQ(postsel_sign_create(1.0 / 16, &s), POSTSEL_OK);
    EXPECT_EQ(postsel_sign_num_inputs(s), 32);
    ASSERT_EQ(postsel_sign_evaluate(s, 1.0, &r), POSTSEL_OK);
    EXPECT_NEAR(r, 1, 1.0 / 16);
    postsel_sign_free(s);
}

TEST(CApi, RdegWitness) {
    postsel_table *t = nullptr;
    ASSERT_EQ(postsel_table_parse("or:4", &t), POSTSEL_OK);
    int feasible = -1;
    char *w = nullptr;
    ASSERT_EQ(postsel_rdeg_feasible(t, 0, "1/10", 0, &feasible, &w), POSTSEL_OK);
    EXPECT_EQ(feasible, 0);
    EXPECT_EQ(w, nullptr);
    ASSERT_EQ(postsel_rdeg_feasible(t, 1, "1/10", 0, &feasible, &w), POSTSEL_OK);
    EXPECT_EQ(feasible, 1);
    auto j = nlohmann::json::parse(take(w));
    EXPECT_EQ(j["d"], 1);
    EXPECT_EQ(postsel_rdeg_feasible(t, 1, "abc", 0, &feasible, nullptr), POSTSEL_ERR_DOMAIN);
    postsel_table_free(t);
}

TEST(CApi, ExperimentsAndStageErrors) {
    char *names = nullptr;
    ASSERT_EQ(postsel_experiment_names(&names), POSTSEL_OK);
    auto list = nlohmann::json::parse(take(names));
    EXPECT_GE(list.size(), 10u);

    char *report = nullptr;
    ASSERT_EQ(postsel_run_experiment("maj-curve", R"({"n":16,"eps":0.2,"points":5})", 1, 2, 0, &report), POSTSEL_OK);
    std::string text = take(report);
    char *csv = nullptr;
    ASSERT_EQ(postsel_report_to_csv(text.c_str(), &csv), POSTSEL_OK);
    EXPECT_FALSE(take(csv).empty());

    const char *params = R"({"f":"or:2","p":"{\"n\":2,\"terms\":[]}","q":"{\"n\":2,\"terms\":[{\"subset\":[],\"coeff\":1}]}","eps":0.1})";
    EXPECT_EQ(postsel_run_experiment("roundtrip", params, 0, 1, 0, &report), POSTSEL_ERR_STAGE);
    EXPECT_STREQ(postsel_last_error_stage(), "pre");
    EXPECT_EQ(postsel_run_experiment("nope", "{}", 0, 1, 0, &report), POSTSEL_ERR_DOMAIN);
    EXPECT_STREQ(postsel_last_error_stage(), "");
    EXPECT_EQ(postsel_run_experiment("maj-run", "[1,2", 0, 1, 0, &report), POSTSEL_ERR_DOMAIN);
    EXPECT_EQ(postsel_run_experiment("maj-run", "{}", 0, 0, 0, &report), POSTSEL_ERR_INVALID_ARGUMENT);
}

TEST(CApi, Criterion) {
    EXPECT_EQ(postsel_criterion_count(), 11);
    int pass = 0;
    char *report = nullptr;
    ASSERT_EQ(postsel_run_criterion(4, 1, 1, &pass, &report), POSTSEL_OK);
    EXPECT_EQ(pass, 1);
    auto j = nlohmann::json::parse(take(report));
    EXPECT_TRUE(j["metrics"].contains("checks"));
    EXPECT_EQ(postsel_run_criterion(12, 1, 1, &pass, &report), POSTSEL_ERR_DOMAIN);
}

TEST(CApi, DeriveStreamStable) {
    EXPECT_EQ(postsel_derive_stream(1, 2, 3), postsel_derive_stream(1, 2, 3));
    EXPECT_NE(postsel_derive_stream(1, 2, 3), postsel_derive_stream(1, 2, 4));
}
