// Copyright 2026 The fqp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace fqp {

/// Seedable, splittable 64-bit random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, so every draw below is reproducible across toolchains:
///   - uniform():  (next_u64() >> 11) * 2^-53, one engine draw, in [0, 1).
///   - normal():   Box-Muller from two uniform() draws (u1 first, then u2),
///                 returning sqrt(-2 ln(1 - u1)) * cos(2 pi u2). No caching.
///   - split():    consumes one engine draw and seeds a child stream with
///                 splitmix64 of it.
/// std::*_distribution is deliberately avoided because its output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for work unit `index` under a base seed.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi);
  double normal();
  Rng split();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fqp
