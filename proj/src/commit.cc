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

#include "gradmarket/commit.h"

#include <stdexcept>

namespace gradmarket {

PowersOfAlpha CommitSetupFromTrapdoor(std::size_t m, FieldElement alpha) {
  if (m == 0) throw std::invalid_argument("commitment setup needs m >= 1");
  PowersOfAlpha pp;
  pp.elements.reserve(m);
  const GroupElement g = GroupElement::Generator();
  FieldElement exponent = FieldElement::One();
  for (std::size_t k = 0; k < m; ++k) {
    pp.elements.push_back(g.Pow(exponent));
    exponent *= alpha;
  }
  return pp;
}

PowersOfAlpha CommitSetup(std::size_t m, RandomStream& rng) {
  return CommitSetupFromTrapdoor(m, rng.UniformField());
}

GroupElement CommitVector(std::span<const FieldElement> v, const PowersOfAlpha& pp) {
  if (v.size() != pp.size()) throw std::invalid_argument("vector length does not match parameters");
  return GroupElement::MultiExp(pp.elements, v);
}

VectorCommitment Commit(std::span<const FieldElement> secret, const SharingMasks& masks,
                        const PowersOfAlpha& pp) {
  VectorCommitment out;
  out.c.reserve(masks.z.size() + 1);
  out.c.push_back(CommitVector(secret, pp));
  for (const auto& z : masks.z) out.c.push_back(CommitVector(z, pp));
  return out;
}

bool VerifyShare(const ShareVector& share, const VectorCommitment& commitment,
                 const PowersOfAlpha& pp) {
  if (share.values.size() != pp.size() || commitment.c.empty()) return false;
  const FieldElement i(share.index);
  FieldElement power = FieldElement::One();
  GroupElement lhs;
  for (const auto& c : commitment.c) {
    lhs *= c.Pow(power);
    power *= i;
  }
  return lhs == CommitVector(share.values, pp);
}

VectorCommitment AggregateCommitments(std::span<const VectorCommitment> commitments) {
  if (commitments.empty()) throw std::invalid_argument("no commitments to aggregate");
  VectorCommitment out = commitments[0];
  for (std::size_t n = 1; n < commitments.size(); ++n) {
    if (commitments[n].c.size() != out.c.size()) {
      throw std::invalid_argument("commitments have different thresholds");
    }
    for (std::size_t j = 0; j < out.c.size(); ++j) out.c[j] *= commitments[n].c[j];
  }
  return out;
}

}  // namespace gradmarket
