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

#include "gradmarket/group.h"

#include <stdexcept>

namespace gradmarket {
namespace {

using Limbs = GroupElement::Limbs;

// p = 114 * (2^127 - 1) + 1 = 0x38_ffffffffffffffff_ffffffffffffff8f
constexpr Limbs kP = {0xffffffffffffff8fULL, 0xffffffffffffffffULL, 0x38ULL};

constexpr std::uint64_t ComputeNegInverse() {
  std::uint64_t inv = 1;
  for (int i = 0; i < 6; ++i) inv *= 2 - kP[0] * inv;
  return ~inv + 1;
}
constexpr std::uint64_t kNegPInv = ComputeNegInverse();

bool GreaterOrEqual(const Limbs& a, const Limbs& b) {
  for (int i = 2; i >= 0; --i) {
    if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)]) {
      return a[static_cast<std::size_t>(i)] > b[static_cast<std::size_t>(i)];
    }
  }
  return true;
}

void SubtractP(Limbs& a) {
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const u128 d = static_cast<u128>(a[i]) - kP[i] - borrow;
    a[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
}

Limbs MontMul(const Limbs& a, const Limbs& b) {
  std::uint64_t t[5] = {0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < 3; ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      const u128 s = static_cast<u128>(a[j]) * b[i] + t[j] + carry;
      t[j] = static_cast<std::uint64_t>(s);
      carry = static_cast<std::uint64_t>(s >> 64);
    }
    u128 s = static_cast<u128>(t[3]) + carry;
    t[3] = static_cast<std::uint64_t>(s);
    t[4] = static_cast<std::uint64_t>(s >> 64);

    const std::uint64_t m = t[0] * kNegPInv;
    s = static_cast<u128>(m) * kP[0] + t[0];
    carry = static_cast<std::uint64_t>(s >> 64);
    for (std::size_t j = 1; j < 3; ++j) {
      s = static_cast<u128>(m) * kP[j] + t[j] + carry;
      t[j - 1] = static_cast<std::uint64_t>(s);
      carry = static_cast<std::uint64_t>(s >> 64);
    }
    s = static_cast<u128>(t[3]) + carry;
    t[2] = static_cast<std::uint64_t>(s);
    t[3] = t[4] + static_cast<std::uint64_t>(s >> 64);
  }
  Limbs r = {t[0], t[1], t[2]};
  if (t[3] != 0 || GreaterOrEqual(r, kP)) SubtractP(r);
  return r;
}

// R^2 mod p by repeated modular doubling of 1.
Limbs ComputeRSquared() {
  Limbs x = {1, 0, 0};
  for (int i = 0; i < 384; ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      const std::uint64_t next = x[j] >> 63;
      x[j] = (x[j] << 1) | carry;
      carry = next;
    }
    if (carry != 0 || GreaterOrEqual(x, kP)) SubtractP(x);
  }
  return x;
}

const Limbs& RSquared() {
  static const Limbs r2 = ComputeRSquared();
  return r2;
}

const Limbs& MontOne() {
  static const Limbs one = MontMul({1, 0, 0}, RSquared());
  return one;
}

}  // namespace

GroupElement::GroupElement() : mont_(MontOne()) {}

GroupElement GroupElement::Generator() {
  static const GroupElement g = [] {
    // 2^114 < p.
    const Limbs v = {0, std::uint64_t{1} << 50, 0};
    return FromResidue(v);
  }();
  return g;
}

const GroupElement::Limbs& GroupElement::Modulus() { return kP; }

GroupElement GroupElement::FromResidue(const Limbs& value) {
  if (GreaterOrEqual(value, kP)) throw std::invalid_argument("residue not reduced mod p");
  GroupElement e;
  e.mont_ = MontMul(value, RSquared());
  return e;
}

GroupElement::Limbs GroupElement::ToResidue() const { return MontMul(mont_, {1, 0, 0}); }

GroupElement& GroupElement::operator*=(const GroupElement& o) {
  mont_ = MontMul(mont_, o.mont_);
  return *this;
}

GroupElement GroupElement::Pow(u128 exponent) const {
  GroupElement acc;
  for (int bit = 127; bit >= 0; --bit) {
    acc.mont_ = MontMul(acc.mont_, acc.mont_);
    if ((exponent >> bit) & 1) acc *= *this;
  }
  return acc;
}

GroupElement GroupElement::Pow(FieldElement exponent) const { return Pow(exponent.value()); }

GroupElement GroupElement::MultiExp(std::span<const GroupElement> bases,
                                    std::span<const FieldElement> exponents) {
  if (bases.size() != exponents.size()) {
    throw std::invalid_argument("multi-exponentiation length mismatch");
  }
  const std::size_t n = bases.size();
  if (n == 0) return Identity();
  if (n == 1) return bases[0].Pow(exponents[0]);
  const int window = n < 32 ? 4 : (n < 512 ? 6 : 8);
  const int num_windows = (127 + window - 1) / window;
  const std::size_t num_buckets = (std::size_t{1} << window) - 1;

  GroupElement result;
  std::vector<GroupElement> buckets(num_buckets);
  std::vector<bool> used(num_buckets);
  for (int w = num_windows - 1; w >= 0; --w) {
    if (w != num_windows - 1) {
      for (int s = 0; s < window; ++s) result.mont_ = MontMul(result.mont_, result.mont_);
    }
    std::fill(used.begin(), used.end(), false);
    const int shift = w * window;
    for (std::size_t k = 0; k < n; ++k) {
      const auto digit = static_cast<std::size_t>((exponents[k].value() >> shift) & num_buckets);
      if (digit == 0) continue;
      if (used[digit - 1]) {
        buckets[digit - 1] *= bases[k];
      } else {
        buckets[digit - 1] = bases[k];
        used[digit - 1] = true;
      }
    }
    // sum_j j * bucket_j via running suffix products.
    GroupElement running;
    GroupElement sum;
    bool any = false;
    for (std::size_t j = num_buckets; j-- > 0;) {
      if (used[j]) {
        running = any ? running * buckets[j] : buckets[j];
        any = true;
      }
      if (any) sum *= running;
    }
    result *= sum;
  }
  return result;
}

std::array<std::uint8_t, GroupElement::kEncodedSize> GroupElement::Encode() const {
  const Limbs v = ToResidue();
  std::array<std::uint8_t, kEncodedSize> out{};
  for (std::size_t i = 0; i < kEncodedSize; ++i) {
    const std::size_t byte = kEncodedSize - 1 - i;  // little-endian byte position
    out[i] = static_cast<std::uint8_t>(v[byte / 8] >> (8 * (byte % 8)));
  }
  return out;
}

GroupElement GroupElement::Decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kEncodedSize) throw std::invalid_argument("group element must be 17 bytes");
  Limbs v = {0, 0, 0};
  for (std::size_t i = 0; i < kEncodedSize; ++i) {
    const std::size_t byte = kEncodedSize - 1 - i;
    v[byte / 8] |= static_cast<std::uint64_t>(bytes[i]) << (8 * (byte % 8));
  }
  return FromResidue(v);
}

std::string GroupElement::ToHex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : Encode()) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

}  // namespace gradmarket
