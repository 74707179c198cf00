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

#ifndef GRADMARKET_FIELD_H_
#define GRADMARKET_FIELD_H_

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradmarket {

using u128 = unsigned __int128;

/// Raised for arithmetic with no defined result (inverse of zero, duplicate
/// interpolation nodes, ...).
class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Element of the prime field F_q with q = 2^127 - 1.
///
/// The stored value is always canonical, i.e. in [0, q). Reduction uses the
/// Mersenne identity 2^127 = 1 (mod q).
class FieldElement {
 public:
  static constexpr u128 kModulus = (u128{1} << 127) - 1;
  static constexpr std::size_t kEncodedSize = 16;

  constexpr FieldElement() = default;
  constexpr FieldElement(std::uint64_t v) : value_(v) {}  // NOLINT

  /// Reduces an arbitrary 128-bit integer.
  static constexpr FieldElement FromU128(u128 v) {
    FieldElement r;
    r.value_ = Reduce(v);
    return r;
  }
  /// Signed embedding: negative values map to q - |v|.
  static constexpr FieldElement FromSigned(__int128 v) {
    if (v >= 0) return FromU128(static_cast<u128>(v));
    return -FromU128(static_cast<u128>(-(v + 1)) + 1);
  }
  /// Parses a non-negative decimal string and reduces it mod q.
  static FieldElement FromDecimal(const std::string& s);

  static constexpr FieldElement Zero() { return FieldElement(); }
  static constexpr FieldElement One() { return FieldElement(1); }

  constexpr u128 value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }
  std::string ToDecimal() const;

  constexpr FieldElement& operator+=(FieldElement o) {
    // Both operands < 2^127 so the sum cannot overflow 128 bits.
    value_ = Reduce(value_ + o.value_);
    return *this;
  }
  constexpr FieldElement& operator-=(FieldElement o) {
    value_ = value_ >= o.value_ ? value_ - o.value_
                                : value_ + (kModulus - o.value_);
    return *this;
  }
  constexpr FieldElement& operator*=(FieldElement o) {
    value_ = MulReduce(value_, o.value_);
    return *this;
  }
  FieldElement& operator/=(FieldElement o) { return *this *= o.Inverse(); }

  friend constexpr FieldElement operator+(FieldElement a, FieldElement b) {
    return a += b;
  }
  friend constexpr FieldElement operator-(FieldElement a, FieldElement b) {
    return a -= b;
  }
  friend constexpr FieldElement operator*(FieldElement a, FieldElement b) {
    return a *= b;
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) {
    return a /= b;
  }
  constexpr FieldElement operator-() const {
    FieldElement r;
    r.value_ = value_ == 0 ? 0 : kModulus - value_;
    return r;
  }
  friend constexpr bool operator==(FieldElement a, FieldElement b) = default;

  /// a^e by square-and-multiply, e an arbitrary 128-bit integer.
  constexpr FieldElement Pow(u128 e) const {
    FieldElement base = *this;
    FieldElement acc = One();
    while (e != 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  /// Multiplicative inverse via Fermat, a^(q-2). Throws FieldError on zero.
  FieldElement Inverse() const;

  std::array<std::uint8_t, kEncodedSize> Encode() const;
  static FieldElement Decode(std::span<const std::uint8_t> bytes);

 private:
  static constexpr u128 Reduce(u128 v) {
    v = (v & kModulus) + (v >> 127);
    return v >= kModulus ? v - kModulus : v;
  }

  // Full 254-bit product of two canonical values, folded twice with
  // 2^128 = 2 (mod q).
  static constexpr u128 MulReduce(u128 a, u128 b) {
    const std::uint64_t a0 = static_cast<std::uint64_t>(a);
    const std::uint64_t a1 = static_cast<std::uint64_t>(a >> 64);
    const std::uint64_t b0 = static_cast<std::uint64_t>(b);
    const std::uint64_t b1 = static_cast<std::uint64_t>(b >> 64);
    const u128 p00 = static_cast<u128>(a0) * b0;
    const u128 p01 = static_cast<u128>(a0) * b1;
    const u128 p10 = static_cast<u128>(a1) * b0;
    const u128 p11 = static_cast<u128>(a1) * b1;
    // mid < 2^128 because a1, b1 < 2^63.
    const u128 mid = p01 + p10;
    u128 lo = p00 + (mid << 64);
    const u128 carry = lo < p00 ? 1 : 0;
    const u128 hi = p11 + (mid >> 64) + carry;
    // x = hi * 2^128 + lo; hi < 2^126.
    u128 s = (lo & kModulus) + (lo >> 127) + (hi << 1);
    s = (s & kModulus) + (s >> 127);
    return s >= kModulus ? s - kModulus : s;
  }

  u128 value_ = 0;
};

using FieldVector = std::vector<FieldElement>;

/// Replaces every element with its inverse using one field inversion.
/// Throws FieldError if any element is zero.
void BatchInvert(std::span<FieldElement> values);

FieldVector operator+(const FieldVector& a, const FieldVector& b);
FieldVector& operator+=(FieldVector& a, const FieldVector& b);

/// Little-endian concatenation of 16-byte encodings.
std::vector<std::uint8_t> EncodeElements(std::span<const FieldElement> values);
FieldVector DecodeElements(std::span<const std::uint8_t> bytes);

}  // namespace gradmarket

#endif  // GRADMARKET_FIELD_H_
