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

#include "gradmarket/merkle.h"

#include <openssl/sha.h>

#include <bit>
#include <cstring>
#include <stdexcept>

namespace gradmarket {

Digest Sha256(std::span<const std::uint8_t> data) {
  Digest d;
  SHA256(data.data(), data.size(), d.data());
  return d;
}

std::string ToHex(const Digest& d) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  for (auto b : d) {
    s.push_back(kHex[b >> 4]);
    s.push_back(kHex[b & 15]);
  }
  return s;
}

Digest MerkleRoot(std::span<const std::uint8_t> data, std::size_t leaf_size) {
  if (leaf_size == 0) throw std::invalid_argument("leaf size must be positive");
  std::vector<Digest> level;
  for (std::size_t at = 0; at < data.size(); at += leaf_size) {
    level.push_back(Sha256(data.subspan(at, std::min(leaf_size, data.size() - at))));
  }
  if (level.empty()) level.push_back(Sha256({}));
  level.resize(std::bit_ceil(level.size()), level.back());
  while (level.size() > 1) {
    std::vector<Digest> next(level.size() / 2);
    for (std::size_t k = 0; k < next.size(); ++k) {
      std::uint8_t pair[64];
      std::memcpy(pair, level[2 * k].data(), 32);
      std::memcpy(pair + 32, level[2 * k + 1].data(), 32);
      next[k] = Sha256(pair);
    }
    level = std::move(next);
  }
  return level[0];
}

std::vector<std::uint8_t> EncodeDoubles(std::span<const double> values) {
  static_assert(std::endian::native == std::endian::little);
  std::vector<std::uint8_t> out(values.size() * sizeof(double));
  if (!values.empty()) std::memcpy(out.data(), values.data(), out.size());
  return out;
}

}  // namespace gradmarket
