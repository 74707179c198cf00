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

#include "gradmarket/fixed_point.h"

#include <cmath>
#include <string>

namespace gradmarket {

FixedPointCodec::FixedPointCodec(int scale_bits) : scale_bits_(scale_bits) {
  if (scale_bits < 0 || scale_bits > 120) {
    throw std::invalid_argument("scale_bits must be in [0, 120]");
  }
}

double FixedPointCodec::bound() const { return std::ldexp(1.0, 126 - scale_bits_); }

FieldElement FixedPointCodec::Quantize(double x) const {
  if (!std::isfinite(x) || std::fabs(x) >= bound()) {
    throw QuantizationOverflow("value " + std::to_string(x) +
                               " outside the representable range");
  }
  const double scaled = std::round(std::ldexp(x, scale_bits_));
  const u128 magnitude = static_cast<u128>(std::fabs(scaled));
  const FieldElement v = FieldElement::FromU128(magnitude);
  return scaled < 0 ? -v : v;
}

double FixedPointCodec::Dequantize(FieldElement v) const {
  return std::ldexp(static_cast<double>(ToSigned(v)), -scale_bits_);
}

FieldVector FixedPointCodec::Quantize(std::span<const double> xs) const {
  FieldVector out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(Quantize(x));
  return out;
}

std::vector<double> FixedPointCodec::Dequantize(std::span<const FieldElement> vs) const {
  std::vector<double> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(Dequantize(v));
  return out;
}

__int128 ToSigned(FieldElement v) {
  constexpr u128 kHalf = FieldElement::kModulus / 2;
  if (v.value() <= kHalf) return static_cast<__int128>(v.value());
  return -static_cast<__int128>(FieldElement::kModulus - v.value());
}

}  // namespace gradmarket
