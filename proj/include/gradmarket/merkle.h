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

#ifndef GRADMARKET_MERKLE_H_
#define GRADMARKET_MERKLE_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gradmarket {

using Digest = std::array<std::uint8_t, 32>;

Digest Sha256(std::span<const std::uint8_t> data);
std::string ToHex(const Digest& d);

/// SHA-256 Merkle root over fixed-size leaves. The last leaf may be short;
/// the leaf count is padded to a power of two by repeating the last leaf.
Digest MerkleRoot(std::span<const std::uint8_t> data, std::size_t leaf_size = 1024);

/// 64-bit little-endian IEEE doubles.
std::vector<std::uint8_t> EncodeDoubles(std::span<const double> values);

}  // namespace gradmarket

#endif  // GRADMARKET_MERKLE_H_
