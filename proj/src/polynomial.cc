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

#include "gradmarket/polynomial.h"

#include <algorithm>

namespace gradmarket {

Polynomial::Polynomial(FieldVector coefficients) : coeffs_(std::move(coefficients)) {
  Trim();
}

Polynomial Polynomial::Linear(FieldElement root) {
  return Polynomial({-root, FieldElement::One()});
}

void Polynomial::Trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Polynomial::Evaluate(FieldElement x) const {
  FieldElement acc;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  Trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  Trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  FieldVector out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(Polynomial a, FieldElement c) {
  for (auto& v : a.coeffs_) v *= c;
  a.Trim();
  return a;
}

std::pair<Polynomial, Polynomial> Polynomial::DivMod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw FieldError("polynomial division by zero");
  if (degree() < divisor.degree()) return {Polynomial(), *this};
  FieldVector rem = coeffs_;
  const std::size_t dn = divisor.coeffs_.size();
  FieldVector quot(rem.size() - dn + 1);
  const FieldElement lead_inv = divisor.leading().Inverse();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const FieldElement c = rem[k + dn - 1] * lead_inv;
    quot[k] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < dn; ++j) rem[k + j] -= c * divisor.coeffs_[j];
  }
  rem.resize(dn - 1);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial VanishingPolynomial(std::span<const FieldElement> roots) {
  FieldVector c{FieldElement::One()};
  for (const auto& r : roots) {
    c.push_back(FieldElement::Zero());
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

Polynomial Interpolate(std::span<const InterpolationPoint> points) {
  if (points.empty()) throw std::invalid_argument("interpolation needs at least one point");
  {
    std::vector<u128> xs;
    xs.reserve(points.size());
    for (const auto& p : points) xs.push_back(p.x.value());
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
      throw FieldError("duplicate interpolation node");
    }
  }
  const std::size_t n = points.size();
  FieldVector xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = points[i].x;
  const FieldVector master = VanishingPolynomial(xs).coefficients();  // size n+1

  // Denominators prod_{j != i} (x_i - x_j), inverted together.
  FieldVector denom(n, FieldElement::One());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) denom[i] *= xs[i] - xs[j];
    }
  }
  BatchInvert(denom);

  FieldVector out(n);
  FieldVector quotient(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Synthetic division of master by (x - x_i).
    FieldElement carry = master[n];
    quotient[n - 1] = carry;
    for (std::size_t k = n - 1; k-- > 0;) {
      carry = master[k + 1] + xs[i] * carry;
      quotient[k] = carry;
    }
    const FieldElement scale = points[i].y * denom[i];
    if (scale.is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) out[k] += scale * quotient[k];
  }
  return Polynomial(std::move(out));
}

FieldElement EvaluateOnConsecutiveNodes(std::span<const FieldElement> values,
                                        FieldElement x) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("no nodes to evaluate on");
  if (x.value() >= 1 && x.value() <= n) {
    return values[static_cast<std::size_t>(x.value()) - 1];
  }
  // w_t = (-1)^(n-t) / ((t-1)! (n-t)!)
  FieldVector fact(n);
  fact[0] = FieldElement::One();
  for (std::size_t k = 1; k < n; ++k) fact[k] = fact[k - 1] * FieldElement(k);
  FieldVector inv(2 * n);
  for (std::size_t t = 1; t <= n; ++t) {
    inv[t - 1] = x - FieldElement(t);
    inv[n + t - 1] = fact[t - 1] * fact[n - t];
  }
  BatchInvert(inv);
  FieldElement ell = FieldElement::One();
  FieldElement sum;
  for (std::size_t t = 1; t <= n; ++t) {
    ell *= x - FieldElement(t);
    FieldElement term = values[t - 1] * inv[n + t - 1] * inv[t - 1];
    if ((n - t) % 2 == 1) term = -term;
    sum += term;
  }
  return ell * sum;
}

FieldVector ExtendConsecutive(std::span<const FieldElement> values,
                              std::size_t count) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("no values to extend");
  // tail[k] holds the k-th forward difference at the right edge of the table.
  FieldVector work(values.begin(), values.end());
  FieldVector tail(n);
  tail[0] = work[n - 1];
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t j = 0; j + k < n; ++j) work[j] = work[j + 1] - work[j];
    tail[k] = work[n - 1 - k];
  }
  FieldVector out;
  out.reserve(count);
  for (std::size_t step = 0; step < count; ++step) {
    for (std::size_t k = n - 1; k-- > 0;) tail[k] += tail[k + 1];
    out.push_back(tail[0]);
  }
  return out;
}

}  // namespace gradmarket
