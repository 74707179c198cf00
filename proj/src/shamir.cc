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

#include "gradmarket/shamir.h"

#include <algorithm>
#include <stdexcept>

#include "gradmarket/polynomial.h"

namespace gradmarket {
namespace {

void CheckParameters(int threshold, int num_shares) {
  if (threshold <= 0 || threshold >= num_shares) {
    throw std::invalid_argument("sharing requires 0 < T < K");
  }
}

void AppendU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t ReadU32(std::span<const std::uint8_t> bytes) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | bytes[static_cast<std::size_t>(i)];
  return v;
}

// Lagrange coefficients for evaluating at `at` from nodes `xs`.
FieldVector LagrangeCoefficients(std::span<const FieldElement> xs, FieldElement at) {
  FieldVector num(xs.size(), FieldElement::One());
  FieldVector den(xs.size(), FieldElement::One());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (j == k) continue;
      num[j] *= at - xs[k];
      den[j] *= xs[j] - xs[k];
    }
  }
  BatchInvert(den);
  for (std::size_t j = 0; j < xs.size(); ++j) num[j] *= den[j];
  return num;
}

}  // namespace

std::vector<std::uint8_t> ShareVector::Encode() const {
  std::vector<std::uint8_t> out;
  AppendU32(out, index);
  AppendU32(out, static_cast<std::uint32_t>(values.size()));
  const auto body = EncodeElements(values);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

ShareVector ShareVector::Decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) throw std::invalid_argument("truncated share header");
  ShareVector s;
  s.index = ReadU32(bytes.subspan(0, 4));
  const std::uint32_t length = ReadU32(bytes.subspan(4, 4));
  if (bytes.size() != 8 + std::size_t{length} * FieldElement::kEncodedSize) {
    throw std::invalid_argument("share length does not match payload");
  }
  s.values = DecodeElements(bytes.subspan(8));
  return s;
}

Sharing ShareSecretWithMasks(std::span<const FieldElement> secret,
                             const SharingMasks& masks, int num_shares) {
  const int threshold = static_cast<int>(masks.z.size());
  CheckParameters(threshold, num_shares);
  for (const auto& z : masks.z) {
    if (z.size() != secret.size()) throw std::invalid_argument("mask length mismatch");
  }
  Sharing out;
  out.masks = masks;
  out.shares.reserve(static_cast<std::size_t>(num_shares));
  for (int i = 1; i <= num_shares; ++i) {
    const FieldElement x(static_cast<std::uint64_t>(i));
    ShareVector share{static_cast<std::uint32_t>(i), FieldVector(secret.size())};
    for (std::size_t k = 0; k < secret.size(); ++k) {
      FieldElement acc;
      for (int j = threshold; j >= 1; --j) acc = (acc + masks.z[static_cast<std::size_t>(j - 1)][k]) * x;
      share.values[k] = acc + secret[k];
    }
    out.shares.push_back(std::move(share));
  }
  return out;
}

Sharing ShareSecret(std::span<const FieldElement> secret, int threshold,
                    int num_shares, RandomStream& rng) {
  CheckParameters(threshold, num_shares);
  SharingMasks masks;
  for (int j = 0; j < threshold; ++j) masks.z.push_back(rng.UniformFieldVector(secret.size()));
  return ShareSecretWithMasks(secret, masks, num_shares);
}

FieldVector Reconstruct(std::span<const ShareVector> shares, int threshold) {
  const std::size_t needed = static_cast<std::size_t>(threshold) + 1;
  if (threshold < 0 || shares.size() < needed) {
    throw std::invalid_argument("reconstruction needs at least T+1 shares");
  }
  FieldVector xs;
  for (std::size_t j = 0; j < needed; ++j) xs.emplace_back(shares[j].index);
  const FieldVector lambda = LagrangeCoefficients(xs, FieldElement::Zero());
  const std::size_t m = shares[0].values.size();
  FieldVector secret(m);
  for (std::size_t j = 0; j < needed; ++j) {
    if (shares[j].values.size() != m) throw std::invalid_argument("share length mismatch");
    for (std::size_t k = 0; k < m; ++k) secret[k] += lambda[j] * shares[j].values[k];
  }
  return secret;
}

std::optional<FieldElement> RobustDecode(std::span<const FieldElement> received,
                                         int threshold) {
  const int n = static_cast<int>(received.size());
  const int k = threshold + 1;
  CheckParameters(threshold, n);

  FieldVector xs;
  std::vector<InterpolationPoint> points;
  for (int i = 1; i <= n; ++i) {
    xs.emplace_back(static_cast<std::uint64_t>(i));
    points.push_back({xs.back(), received[static_cast<std::size_t>(i - 1)]});
  }
  Polynomial r0 = VanishingPolynomial(xs);
  Polynomial r1 = Interpolate(points);
  Polynomial v0;
  Polynomial v1 = Polynomial::Constant(FieldElement::One());
  // Partial extended Euclid: stop once deg r1 < (n + k) / 2.
  while (2 * r1.degree() >= n + k) {
    auto [quot, rem] = r0.DivMod(r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Polynomial next = v0 - quot * v1;
    v0 = std::move(v1);
    v1 = std::move(next);
  }
  if (v1.is_zero()) return std::nullopt;
  auto [message, rem] = r1.DivMod(v1);
  if (!rem.is_zero() || message.degree() >= k) return std::nullopt;

  int errors = 0;
  for (int i = 0; i < n; ++i) {
    if (message.Evaluate(xs[static_cast<std::size_t>(i)]) != received[static_cast<std::size_t>(i)]) ++errors;
  }
  if (errors > CorrectionRadius(n, threshold)) return std::nullopt;
  return message.coefficient(0);
}

std::optional<FieldVector> RobustReconstruct(std::span<const ShareVector> shares,
                                             int threshold) {
  const int n = static_cast<int>(shares.size());
  CheckParameters(threshold, n);
  std::vector<const ShareVector*> ordered(shares.size(), nullptr);
  for (const auto& s : shares) {
    if (s.index < 1 || s.index > shares.size() || ordered[s.index - 1] != nullptr) {
      throw std::invalid_argument("robust reconstruction needs indices 1..K exactly once");
    }
    ordered[s.index - 1] = &s;
  }
  const std::size_t m = ordered[0]->values.size();
  for (const auto* s : ordered) {
    if (s->values.size() != m) throw std::invalid_argument("share length mismatch");
  }

  // Fast path: the first T+1 shares interpolate a polynomial that every other
  // share agrees with, i.e. the received word is a codeword.
  const std::size_t base = static_cast<std::size_t>(threshold) + 1;
  FieldVector base_xs;
  for (std::size_t j = 0; j < base; ++j) base_xs.emplace_back(j + 1);
  FieldVector at_zero = LagrangeCoefficients(base_xs, FieldElement::Zero());
  std::vector<FieldVector> at_other;
  for (std::size_t i = base; i < ordered.size(); ++i) {
    at_other.push_back(LagrangeCoefficients(base_xs, FieldElement(i + 1)));
  }

  FieldVector secret(m);
  FieldVector column(ordered.size());
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t i = 0; i < ordered.size(); ++i) column[i] = ordered[i]->values[c];
    bool consistent = true;
    for (std::size_t i = base; i < ordered.size() && consistent; ++i) {
      FieldElement predicted;
      for (std::size_t j = 0; j < base; ++j) predicted += at_other[i - base][j] * column[j];
      consistent = predicted == column[i];
    }
    if (consistent) {
      FieldElement s;
      for (std::size_t j = 0; j < base; ++j) s += at_zero[j] * column[j];
      secret[c] = s;
      continue;
    }
    auto decoded = RobustDecode(column, threshold);
    if (!decoded) return std::nullopt;
    secret[c] = *decoded;
  }
  return secret;
}

}  // namespace gradmarket
