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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace postsel::experiments {

using Json = nlohmann::ordered_json;

constexpr const char *kArtifactVersion = "1.0.0";

struct RunOptions {
    uint64_t seed = 0;
    /// Worker count. Reports do not depend on it.
    int threads = 1;
    /// Adds wall-clock seconds to the metrics; such reports are no longer
    /// byte-reproducible.
    bool timing = false;
};

/// Reads experiment parameters from a JSON object whose values are numbers,
/// booleans or strings (strings are parsed on demand). Every value read,
/// including defaults, is recorded for the config echo.
class Params {
   public:
    explicit Params(Json raw);

    double real(const std::string &key, std::optional<double> fallback = std::nullopt);
    int64_t integer(const std::string &key, std::optional<int64_t> fallback = std::nullopt);
    std::string text(const std::string &key, std::optional<std::string> fallback = std::nullopt);
    bool flag(const std::string &key, bool fallback);
    bool has(const std::string &key) const;
    /// Comma-separated integers.
    std::vector<int64_t> integer_list(const std::string &key, const std::string &fallback);

    const Json &echo() const {
        return echo_;
    }

   private:
    const Json *find(const std::string &key) const;
    Json raw_;
    Json echo_ = Json::object();
};

/// {version, experiment, config, metrics, rows?}
Json make_report(const std::string &experiment, const Json &config, Json metrics, Json rows = nullptr);

/// Header from the first row's keys, one line per row, LF endings, floats in
/// shortest round-trip form. Empty when the report has no rows.
std::string rows_to_csv(const Json &report);

/// Subcommand names accepted by run_experiment.
const std::vector<std::string> &experiment_names();

/// Runs one experiment. Precondition failures surface as postsel::Error
/// subclasses; unknown names as DomainError.
Json run_experiment(const std::string &name, const Json &params, const RunOptions &opt);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<Check> checks;
    Json report;
};

constexpr int kCriterionCount = 11;

/// Runs acceptance criterion `id` (1..11). The report holds the checks and
/// every measured quantity; criterion 11 reruns 1..10 at 1 and `threads`
/// (at least 2) workers and compares the serialized reports.
CriterionResult run_criterion(int id, const RunOptions &opt);

std::string criterion_title(int id);

}  // namespace postsel::experiments
