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

#ifndef GRADMARKET_POLYNOMIAL_H_
#define GRADMARKET_POLYNOMIAL_H_

#include <span>
#include <utility>
#include <vector>

#include "gradmarket/field.h"

namespace gradmarket {

/// Univariate polynomial over F_q, coefficients lowest degree first.
///
/// The coefficient list is kept trimmed: the last stored coefficient is
/// nonzero, so the zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(FieldVector coefficients);
  static Polynomial Constant(FieldElement c) { return Polynomial({c}); }
  /// The monic polynomial x - root.
  static Polynomial Linear(FieldElement root);

  const FieldVector& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  FieldElement coefficient(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : FieldElement::Zero();
  }
  FieldElement leading() const {
    return coeffs_.empty() ? FieldElement::Zero() : coeffs_.back();
  }

  FieldElement Evaluate(FieldElement x) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, FieldElement c);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  /// Euclidean division; throws FieldError when dividing by zero.
  std::pair<Polynomial, Polynomial> DivMod(const Polynomial& divisor) const;

 private:
  void Trim();
  FieldVector coeffs_;
};

struct InterpolationPoint {
  FieldElement x;
  FieldElement y;
};

/// Lagrange interpolation through points with pairwise-distinct x.
/// The result has degree < points.size().
Polynomial Interpolate(std::span<const InterpolationPoint> points);

/// Product of (x - r) over the given roots.
Polynomial VanishingPolynomial(std::span<const FieldElement> roots);

/// Evaluates at `x` the unique polynomial of degree < n taking values[t-1]
/// at t = 1..n (barycentric form, O(n)).
FieldElement EvaluateOnConsecutiveNodes(std::span<const FieldElement> values,
                                        FieldElement x);

/// Given values at t = 1..n of a polynomial of degree < n, returns its values
/// at t = n+1 .. n+count using a forward-difference table (additions only).
FieldVector ExtendConsecutive(std::span<const FieldElement> values,
                              std::size_t count);

}  // namespace gradmarket

#endif  // GRADMARKET_POLYNOMIAL_H_
