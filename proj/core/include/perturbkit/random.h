//
// Copyright 2026 The perturbkit Authors
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
//

#ifndef PERTURBKIT_RANDOM_H_
#define PERTURBKIT_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace perturbkit {

// mt19937_64 output is fully specified by the standard; the helpers below
// avoid the implementation-defined std:: distributions so that seeded
// streams are identical across standard libraries.
using Rng = std::mt19937_64;

uint64_t Fnv1a64(std::string_view data);
uint64_t SplitMix64(uint64_t x);

// Seed for the stream owned by (seed, record_id, salt). Work items derive
// their own streams so parallel scheduling cannot change outputs.
uint64_t DeriveSeed(uint64_t seed, std::string_view record_id, uint64_t salt);

// Uniform integer in [0, n); n must be positive.
uint64_t UniformIndex(Rng& rng, uint64_t n);

// Uniform real in (0, 1).
double UniformOpenUnit(Rng& rng);

}  // namespace perturbkit

#endif  // PERTURBKIT_RANDOM_H_
