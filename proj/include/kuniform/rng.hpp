// Copyright 2026 The kuniform Authors
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

#include "kuniform/types.hpp"

namespace kuniform {

/// Identifies one reproducible random stream.
///
/// Streams are std::mt19937_64 engines seeded from a SplitMix64 mix of
/// (seed, stream_id). Normal variates come from Box-Muller on 53-bit
/// uniforms drawn from the raw engine output, so draws do not depend on the
/// standard library's distribution implementations. Changing any of this
/// changes every sampled number; kStreamAlgorithmVersion records it.
struct RngSpec {
  static constexpr int kStreamAlgorithmVersion = 1;

  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Independent sub-stream, e.g. for trial `index` of a Monte-Carlo run.
  RngSpec child(std::uint64_t index) const;

  bool operator==(const RngSpec&) const = default;
};

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(const RngSpec& spec);

  /// Uniform on (0, 1].
  double uniform();
  double normal();
  /// Standard complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace kuniform
