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

#ifndef GRADMARKET_FIXED_POINT_H_
#define GRADMARKET_FIXED_POINT_H_

#include <span>
#include <stdexcept>
#include <vector>

#include "gradmarket/field.h"

namespace gradmarket {

class QuantizationOverflow : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Signed fixed-point embedding of reals into F_q with `scale_bits`
/// fractional bits. x maps to round(x * 2^s), negatives to q - |v|.
/// Magnitudes must stay below 2^(126 - s) so that decoded values are
/// unambiguous in (-q/2, q/2).
class FixedPointCodec {
 public:
  explicit FixedPointCodec(int scale_bits);

  int scale_bits() const { return scale_bits_; }
  double bound() const;

  FieldElement Quantize(double x) const;
  double Dequantize(FieldElement v) const;

  FieldVector Quantize(std::span<const double> xs) const;
  std::vector<double> Dequantize(std::span<const FieldElement> vs) const;

 private:
  int scale_bits_;
};

/// Interprets a field element as a signed integer in (-q/2, q/2).
__int128 ToSigned(FieldElement v);

}  // namespace gradmarket

#endif  // GRADMARKET_FIXED_POINT_H_
