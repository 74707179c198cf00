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

#ifndef GRADMARKET_GROUP_H_
#define GRADMARKET_GROUP_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gradmarket/field.h"

namespace gradmarket {

/// Element of the order-q subgroup of Z_p^*, where q = 2^127 - 1 is the
/// sharing field modulus and p = kCofactor * q + 1 is prime. Exponents are
/// field elements, so exponent arithmetic matches share arithmetic.
///
/// kCofactor = 114 is the smallest even c with c*q + 1 prime; the generator is
/// 2^kCofactor mod p. Values are held in Montgomery form (R = 2^192).
class GroupElement {
 public:
  using Limbs = std::array<std::uint64_t, 3>;

  static constexpr std::uint64_t kCofactor = 114;
  /// ceil(bits(p) / 8); p has 134 bits.
  static constexpr std::size_t kEncodedSize = 17;

  /// The group identity.
  GroupElement();
  static GroupElement Identity() { return GroupElement(); }
  static GroupElement Generator();

  /// Canonical residue (not necessarily in the subgroup).
  static GroupElement FromResidue(const Limbs& value);
  Limbs ToResidue() const;
  static const Limbs& Modulus();

  GroupElement& operator*=(const GroupElement& o);
  friend GroupElement operator*(GroupElement a, const GroupElement& b) { return a *= b; }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  GroupElement Pow(FieldElement exponent) const;
  GroupElement Pow(u128 exponent) const;

  /// prod_k bases[k]^exponents[k] (bucket method).
  static GroupElement MultiExp(std::span<const GroupElement> bases,
                               std::span<const FieldElement> exponents);

  /// Fixed-width big-endian encoding of the canonical residue.
  std::array<std::uint8_t, kEncodedSize> Encode() const;
  static GroupElement Decode(std::span<const std::uint8_t> bytes);
  std::string ToHex() const;

 private:
  Limbs mont_{};
};

}  // namespace gradmarket

#endif  // GRADMARKET_GROUP_H_
