// Copyright 2026 The gradmarket Authors
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

#ifndef GRADMARKET_RANDOM_H_
#define GRADMARKET_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

#include "gradmarket/field.h"

namespace gradmarket {

/// Deterministic named random stream. Every actor draws from its own stream
/// ("mo", "do.3", "server.2", "contract", ...) derived from one session seed,
/// so a component can be replayed in isolation.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : name) {
      h ^= static_cast<std::uint8_t>(c);
      h *= 0x100000001b3ULL;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    engine_.seed(seq);
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform over F_q by rejection from 127 random bits.
  FieldElement UniformField() {
    for (;;) {
      const u128 hi = engine_();
      const u128 v = ((hi << 64) | engine_()) & FieldElement::kModulus;
      if (v != FieldElement::kModulus) return FieldElement::FromU128(v);
    }
  }
  FieldVector UniformFieldVector(std::size_t n) {
    FieldVector out(n);
    for (auto& v : out) v = UniformField();
    return out;
  }
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double Normal(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gradmarket

#endif  // GRADMARKET_RANDOM_H_
