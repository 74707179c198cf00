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

#include "gradmarket/field.h"

#include <algorithm>

namespace gradmarket {

FieldElement FieldElement::FromDecimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty decimal string");
  FieldElement acc;
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("invalid decimal digit in '" + s + "'");
    }
    acc = acc * FieldElement(10) + FieldElement(static_cast<std::uint64_t>(c - '0'));
  }
  return acc;
}

std::string FieldElement::ToDecimal() const {
  if (value_ == 0) return "0";
  std::string out;
  u128 v = value_;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

FieldElement FieldElement::Inverse() const {
  if (is_zero()) throw FieldError("inverse of zero in F_q");
  return Pow(kModulus - 2);
}

std::array<std::uint8_t, FieldElement::kEncodedSize> FieldElement::Encode()
    const {
  std::array<std::uint8_t, kEncodedSize> out{};
  u128 v = value_;
  for (auto& b : out) {
    b = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

FieldElement FieldElement::Decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kEncodedSize) {
    throw std::invalid_argument("field element encoding must be 16 bytes");
  }
  u128 v = 0;
  for (std::size_t i = kEncodedSize; i-- > 0;) v = (v << 8) | bytes[i];
  if (v >= kModulus) throw std::invalid_argument("non-canonical field element");
  return FromU128(v);
}

void BatchInvert(std::span<FieldElement> values) {
  if (values.empty()) return;
  FieldVector prefix(values.size());
  FieldElement acc = FieldElement::One();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].is_zero()) throw FieldError("inverse of zero in F_q");
    prefix[i] = acc;
    acc *= values[i];
  }
  FieldElement inv = acc.Inverse();
  for (std::size_t i = values.size(); i-- > 0;) {
    FieldElement v = values[i];
    values[i] = inv * prefix[i];
    inv *= v;
  }
}

FieldVector operator+(const FieldVector& a, const FieldVector& b) {
  FieldVector out = a;
  out += b;
  return out;
}

FieldVector& operator+=(FieldVector& a, const FieldVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<std::uint8_t> EncodeElements(std::span<const FieldElement> values) {
  std::vector<std::uint8_t> out;
  out.reserve(values.size() * FieldElement::kEncodedSize);
  for (const auto& v : values) {
    const auto bytes = v.Encode();
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  return out;
}

FieldVector DecodeElements(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % FieldElement::kEncodedSize != 0) {
    throw std::invalid_argument("truncated field element list");
  }
  FieldVector out;
  out.reserve(bytes.size() / FieldElement::kEncodedSize);
  for (std::size_t off = 0; off < bytes.size(); off += FieldElement::kEncodedSize) {
    out.push_back(FieldElement::Decode(bytes.subspan(off, FieldElement::kEncodedSize)));
  }
  return out;
}

}  // namespace gradmarket
