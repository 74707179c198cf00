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

#ifndef GRADMARKET_SHAMIR_H_
#define GRADMARKET_SHAMIR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gradmarket/field.h"
#include "gradmarket/random.h"

namespace gradmarket {

/// Server `index`'s share of a length-m secret: values[k] = u_k(index).
struct ShareVector {
  std::uint32_t index = 0;
  FieldVector values;

  friend bool operator==(const ShareVector&, const ShareVector&) = default;

  /// 4-byte LE index, 4-byte LE length, then 16-byte LE elements.
  std::vector<std::uint8_t> Encode() const;
  static ShareVector Decode(std::span<const std::uint8_t> bytes);
};

/// The T random coefficient vectors Z^(1..T) of the sharing polynomials.
struct SharingMasks {
  std::vector<FieldVector> z;
};

struct Sharing {
  std::vector<ShareVector> shares;  // indices 1..K
  SharingMasks masks;
};

/// Number of share errors a robust reconstruction tolerates.
constexpr int CorrectionRadius(int num_shares, int threshold) {
  return (num_shares - threshold - 1) / 2;
}

/// (T, K) sharing with u_k(x) = secret[k] + sum_j z_j[k] x^j, evaluated at
/// x = 1..K. Throws std::invalid_argument unless 0 < T < K.
Sharing ShareSecret(std::span<const FieldElement> secret, int threshold,
                    int num_shares, RandomStream& rng);

/// Same as ShareSecret with caller-supplied masks.
Sharing ShareSecretWithMasks(std::span<const FieldElement> secret,
                             const SharingMasks& masks, int num_shares);

/// Interpolates u(0) coordinate-wise from the first T+1 shares. Performs no
/// consistency check on the remaining shares.
FieldVector Reconstruct(std::span<const ShareVector> shares, int threshold);

/// Reed-Solomon decoding of one coordinate from the K received values at
/// x = 1..K (Gao's algorithm). Returns nullopt when the received word is not
/// within CorrectionRadius(K, T) of a codeword.
std::optional<FieldElement> RobustDecode(std::span<const FieldElement> received,
                                         int threshold);

/// Coordinate-wise robust reconstruction from exactly K shares with indices
/// 1..K (any order). Fails if any coordinate fails to decode.
std::optional<FieldVector> RobustReconstruct(std::span<const ShareVector> shares,
                                             int threshold);

}  // namespace gradmarket

#endif  // GRADMARKET_SHAMIR_H_
