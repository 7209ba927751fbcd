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
#include <random>

namespace postsel {

/// splitmix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seed for replica `replica_index` of task `task_id`. The three words are
/// absorbed one at a time through the splitmix64 avalanche, so the result is a
/// deterministic function of the ordered triple.
constexpr uint64_t derive_stream(uint64_t master_seed, uint64_t task_id, uint64_t replica_index) {
    uint64_t h = mix64(master_seed);
    h = mix64(h ^ task_id);
    h = mix64(h ^ (replica_index + 0x632BE59BD9B4E019ull));
    return h;
}

/// Uniform double in [0, 1) from the top 53 bits of one engine draw. Used
/// instead of std::uniform_real_distribution so sampled transcripts do not
/// depend on the standard library implementation.
inline double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64 &rng, double p) {
    return uniform01(rng) < p;
}

}  // namespace postsel
