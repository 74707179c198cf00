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

#include <gtest/gtest.h>

#include "gradmarket/random.h"

namespace gradmarket {
namespace {

TEST(FixedPointTest, Examples) {
  EXPECT_EQ(FixedPointCodec(6).Quantize(0.0), FieldElement::Zero());
  EXPECT_EQ(FixedPointCodec(16).Quantize(-1.5),
            FieldElement::FromU128(FieldElement::kModulus - 98304));
  const FixedPointCodec s8(8);
  EXPECT_EQ(s8.Dequantize(s8.Quantize(0.125)), 0.125);
}

TEST(FixedPointTest, Bound) {
  const FixedPointCodec c(6);
  EXPECT_EQ(c.bound(), std::ldexp(1.0, 120));
  EXPECT_THROW(c.Quantize(c.bound()), QuantizationOverflow);
  EXPECT_THROW(c.Quantize(-c.bound()), QuantizationOverflow);
  EXPECT_THROW(c.Quantize(std::nan("")), QuantizationOverflow);
  EXPECT_THROW(FixedPointCodec(-1), std::invalid_argument);
}

TEST(FixedPointTest, RoundTripErrorWithinHalfQuantum) {
  RandomStream rng(1, "fixed");
  for (int s : {0, 6, 16, 40}) {
    const FixedPointCodec c(s);
    for (int trial = 0; trial < 500; ++trial) {
      const double x = rng.Uniform(-1e6, 1e6);
      const double back = c.Dequantize(c.Quantize(x));
      EXPECT_LE(std::abs(back - x), std::ldexp(1.0, -s - 1));
      EXPECT_EQ(back, std::round(std::ldexp(x, s)) / std::ldexp(1.0, s));
    }
  }
}

TEST(FixedPointTest, SignedSumsDecode) {
  const FixedPointCodec c(6);
  const FieldElement sum = c.Quantize(-3.25) + c.Quantize(1.0) + c.Quantize(-0.5);
  EXPECT_EQ(c.Dequantize(sum), -2.75);
  EXPECT_EQ(ToSigned(-FieldElement(5)), -5);
}

}  // namespace
}  // namespace gradmarket
