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

#include "errors.hpp"
#include "newman.hpp"

using namespace postsel;
using namespace postsel::newman;

namespace {

/// Textbook product form in long double, no ratio tricks.
long double product_form(int d, long double x) {
    long double a = std::exp(-1.0L / std::sqrt(static_cast<long double>(d)));
    long double p = 1, m = 1, ak = 1;
    for (int k = 0; k < d; k++) {
        p *= ak + x;
        m *= ak - x;
        ak *= a;
    }
    return (p - m) / (p + m);
}

}  // namespace

TEST(Newman, Parameter) {
    EXPECT_NEAR(newman_a(16), std::exp(-0.25), 1e-15);
    EXPECT_NEAR(newman_a(16), 0.778801, 1e-6);
    auto nodes = newman_nodes(5);
    ASSERT_EQ(nodes.size(), 5u);
    EXPECT_DOUBLE_EQ(nodes[0], 1);
    for (size_t k = 1; k < nodes.size(); k++) {
        EXPECT_LT(nodes[k], nodes[k - 1]);
    }
}

TEST(Newman, NodesGiveExactlyOne) {
    for (int d : {4, 16, 64, 150}) {
        for (double node : newman_nodes(d)) {
            EXPECT_EQ(newman_r(d, node), 1.0) << "d=" << d << " node=" << node;
            EXPECT_EQ(newman_r(d, -node), -1.0);
        }
    }
}

TEST(Newman, AntisymmetryAndSign) {
    for (int d : {9, 36, 120}) {
        for (int i = 0; i <= 200; i++) {
            double x = -1 + i / 100.0;
            double r = newman_r(d, x);
            EXPECT_EQ(r, -newman_r(d, -x));
            if (x > 0) {
                EXPECT_GT(r, 0);
            }
        }
    }
    EXPECT_EQ(newman_abs(16, 0), 0);
    EXPECT_EQ(newman_abs(16, 1), 1);
    EXPECT_THROW(newman_r(1, 0.5), DomainError);
    EXPECT_THROW(newman_r(16, 1.5), DomainError);
}

TEST(Newman, AgreesWithLongDoubleProductForm) {
    for (int d : {16, 36, 64, 100}) {
        for (int i = -100; i <= 100; i++) {
            double x = i / 100.0;
            EXPECT_NEAR(newman_r(d, x), static_cast<double>(product_form(d, x)), 1e-12) << "d=" << d << " x=" << x;
        }
    }
}

TEST(Newman, RatioFormContinuousAcrossThreshold) {
    // Evaluation switches form above the threshold; neighbouring degrees stay close.
    for (double x : {0.001, 0.05, 0.3, 0.9}) {
        double below = newman_abs(kRatioFormThreshold, x);
        double above = newman_abs(kRatioFormThreshold + 1, x);
        EXPECT_NEAR(below, above, 1e-3);
    }
}

TEST(Newman, ErrorBoundOnFineGrid) {
    for (int d : {16, 36, 64}) {
        GridReport rep = error_grid([d](double x) { return newman_abs(d, x); }, [](double x) { return std::abs(x); },
                                    newman_domain(d), 4000);
        EXPECT_LE(rep.max_error, std::exp(-0.5 * std::sqrt(d))) << "d=" << d;
    }
}

TEST(Sign, EndpointsAndRange) {
    SignApproximant s(1.0 / 16);
    EXPECT_EQ(s.n(), 32);
    EXPECT_LE(std::abs(s.evaluate(1) - 1), 1.0 / 16);
    EXPECT_NEAR(s.evaluate(0), 1, 1.0 / 16);
    EXPECT_LE(std::abs(s.evaluate(-1 + 2.0 / 32) + 1), 1.0 / 16);
    for (int i = 0; i <= 64; i++) {
        double z = -1 + i / 32.0;
        EXPECT_LE(std::abs(s.evaluate(z)), 1.0);
    }
    EXPECT_EQ(quantum_abs(s, 0), 0);
    EXPECT_NEAR(quantum_abs(s, 1), 1, 1.0 / 16);
    EXPECT_THROW(SignApproximant(0.5), DomainError);
    EXPECT_THROW(SignApproximant(0), DomainError);
}

TEST(Sign, Tags) {
    SignApproximant s(1.0 / 16);
    EXPECT_EQ(s.tag(0.5), DomainTag::Assert);
    EXPECT_EQ(s.tag(0), DomainTag::Assert);
    EXPECT_EQ(s.tag(-0.5), DomainTag::Assert);
    EXPECT_EQ(s.tag(-1.0 / 32), DomainTag::Gap);
    EXPECT_EQ(s.tag(-0.99), DomainTag::Report);
    EXPECT_STREQ(tag_name(DomainTag::Gap), "gap");
}

TEST(Grid, ConstantAgainstItself) {
    DomainSpec dom{{{-1, 1, DomainTag::Assert}}, {}};
    GridReport rep = error_grid([](double) { return 0.25; }, [](double) { return 0.25; }, dom, 101);
    EXPECT_EQ(rep.max_error, 0);
    EXPECT_EQ(rep.rows.size(), 101u);
    EXPECT_EQ(rep.rows.front().z, -1);
    EXPECT_EQ(rep.rows.back().z, 1);
}

TEST(Grid, IndependentOfThreadsAndRepeatable) {
    auto eval = [](double x) { return newman_abs(16, x); };
    auto ref = [](double x) { return std::abs(x); };
    GridReport a = error_grid(eval, ref, newman_domain(16), 1000, 1);
    GridReport b = error_grid(eval, ref, newman_domain(16), 1000, 4);
    EXPECT_EQ(a.to_csv(), b.to_csv());
    EXPECT_EQ(a.max_error, b.max_error);
}

TEST(Grid, SignRowsTaggedByDomain) {
    SignApproximant s(1.0 / 16);
    DomainSpec dom = sign_assert_domain(s);
    DomainSpec report = sign_report_domain(s);
    dom.intervals.insert(dom.intervals.end(), report.intervals.begin(), report.intervals.end());
    GridReport rep = error_grid([&](double z) { return s.evaluate(z); },
                                [](double z) { return z >= 0 ? 1.0 : -1.0; }, dom, 60);
    for (const auto &row : rep.rows) {
        EXPECT_EQ(row.tag, s.tag(row.z)) << "z=" << row.z;
    }
}

TEST(Grid, CsvHeader) {
    DomainSpec dom{{{0, 1, DomainTag::Assert}}, {}};
    GridReport rep = error_grid([](double x) { return x; }, [](double x) { return x; }, dom, 3);
    std::string csv = rep.to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "z,value,reference,abs_error,domain_tag");
}

TEST(Fit, RecoversExactSlope) {
    std::vector<std::pair<int, double>> pts;
    for (int d : {16, 36, 64, 100}) {
        pts.push_back({d, std::exp(-std::sqrt(d))});
    }
    DecayFit fit = fit_decay(pts);
    EXPECT_NEAR(fit.slope, -1, 1e-12);
    EXPECT_NEAR(fit.intercept, 0, 1e-12);
    EXPECT_NEAR(fit.residual, 0, 1e-12);
}

TEST(Fit, ErrorPaths) {
    EXPECT_THROW(fit_decay({{16, 0.1}, {36, 0.01}}), DomainError);
    EXPECT_THROW(fit_decay({{16, 0.1}, {36, 0.0}, {64, 0.001}}), DomainError);
}
