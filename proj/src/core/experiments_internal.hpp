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

#include <random>

#include "boolfn.hpp"
#include "experiments.hpp"
#include "newman.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace postsel::experiments {

struct Experiment {
    Json metrics;
    Json rows;
};

/// Replicas are processed in fixed blocks; block b draws from the stream
/// derive_stream(seed, task, b). The result vector is therefore the same for
/// every thread count.
constexpr size_t kReplicaBlock = 256;

template <class R, class F>
std::vector<R> sample_replicas(size_t count, const RunOptions &opt, uint64_t task, F fn) {
    size_t blocks = (count + kReplicaBlock - 1) / kReplicaBlock;
    auto chunks = parallel_map<std::vector<R>>(blocks, opt.threads, [&](size_t b) {
        std::mt19937_64 rng(derive_stream(opt.seed, task, b));
        size_t begin = b * kReplicaBlock;
        size_t end = std::min(count, begin + kReplicaBlock);
        std::vector<R> out;
        out.reserve(end - begin);
        for (size_t i = begin; i < end; i++) {
            out.push_back(fn(rng, i));
        }
        return out;
    });
    std::vector<R> all;
    all.reserve(count);
    for (auto &c : chunks) {
        all.insert(all.end(), c.begin(), c.end());
    }
    return all;
}

/// Stable 64-bit id for (experiment name, point index).
uint64_t task_id(const std::string &name, uint64_t point);

/// A truth table, or a family spec: "or:N", "and:N", "maj:N", "parity:N",
/// "dict:N:i".
boolfn::TruthTable parse_function(const std::string &spec);

Json poly_json(const boolfn::MultilinearPoly &p);

/// newman_domain(d) plus geometric points between consecutive nodes and
/// below the smallest node.
newman::DomainSpec refined_newman_domain(int d);

}  // namespace postsel::experiments
