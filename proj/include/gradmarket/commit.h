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

#ifndef GRADMARKET_COMMIT_H_
#define GRADMARKET_COMMIT_H_

#include <span>
#include <vector>

#include "gradmarket/field.h"
#include "gradmarket/group.h"
#include "gradmarket/random.h"
#include "gradmarket/shamir.h"

namespace gradmarket {

/// Public parameters (g^{alpha^0}, ..., g^{alpha^{m-1}}). The trapdoor alpha
/// is not retained.
struct PowersOfAlpha {
  std::vector<GroupElement> elements;

  std::size_t size() const { return elements.size(); }
};

/// Commitment to a secret and its T sharing masks: c[0] binds the secret,
/// c[j] binds Z^(j). Size is T+1 regardless of the secret length.
struct VectorCommitment {
  std::vector<GroupElement> c;

  int threshold() const { return static_cast<int>(c.size()) - 1; }
  friend bool operator==(const VectorCommitment&, const VectorCommitment&) = default;
};

/// Samples alpha from `rng` and publishes its powers in the exponent.
PowersOfAlpha CommitSetup(std::size_t m, RandomStream& rng);

/// Setup from a known alpha; meant for tests that need the trapdoor.
PowersOfAlpha CommitSetupFromTrapdoor(std::size_t m, FieldElement alpha);

/// prod_k pp[k]^{v[k]}, the commitment of a single vector.
GroupElement CommitVector(std::span<const FieldElement> v, const PowersOfAlpha& pp);

/// Throws std::invalid_argument on length mismatch.
VectorCommitment Commit(std::span<const FieldElement> secret, const SharingMasks& masks,
                        const PowersOfAlpha& pp);

/// Checks prod_j c[j]^{i^j} == prod_k pp[k]^{share[k]} for i = share.index.
bool VerifyShare(const ShareVector& share, const VectorCommitment& commitment,
                 const PowersOfAlpha& pp);

/// Element-wise product. Throws std::invalid_argument on an empty list or
/// mismatched thresholds.
VectorCommitment AggregateCommitments(std::span<const VectorCommitment> commitments);

}  // namespace gradmarket

#endif  // GRADMARKET_COMMIT_H_
