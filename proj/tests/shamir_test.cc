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
#include <map>
#include <random>
#include <string>
#include <numeric>

#include <gtest/gtest.h>

#include "gradmarket/polynomial.h"

namespace gradmarket {
namespace {

ShareVector Share(std::uint32_t index, std::initializer_list<FieldElement> v) {
  return {index, FieldVector(v)};
}

TEST(ShamirTest, ZeroMaskGivesConstantShares) {
  const FieldElement secret[] = {7};
  const Sharing s = ShareSecretWithMasks(secret, {{{0}}}, 3);
  for (const auto& share : s.shares) EXPECT_EQ(share.values, FieldVector{7});
}

TEST(ShamirTest, LinearMaskExample) {
  const FieldElement secret[] = {7};
  const Sharing s = ShareSecretWithMasks(secret, {{{2}}}, 3);
  ASSERT_EQ(s.shares.size(), 3u);
  EXPECT_EQ(s.shares[0], Share(1, {9}));
  EXPECT_EQ(s.shares[1], Share(2, {11}));
  EXPECT_EQ(s.shares[2], Share(3, {13}));
}

TEST(ShamirTest, ReconstructExamples) {
  const ShareVector two[] = {Share(1, {9}), Share(2, {11})};
  EXPECT_EQ(Reconstruct(two, 1), FieldVector{7});
  const ShareVector same[] = {Share(2, {5}), Share(4, {5}), Share(5, {5})};
  EXPECT_EQ(Reconstruct(same, 2), FieldVector{5});
  EXPECT_THROW(Reconstruct(std::span(two, 1), 1), std::invalid_argument);
}

TEST(ShamirTest, ParameterErrors) {
  RandomStream rng(1, "shamir");
  const FieldElement secret[] = {1};
  EXPECT_THROW(ShareSecret(secret, 3, 3, rng), std::invalid_argument);
  EXPECT_THROW(ShareSecret(secret, 0, 3, rng), std::invalid_argument);
}

TEST(ShamirTest, AnyTPlusOneSubsetReconstructs) {
  RandomStream rng(2, "shamir");
  const FieldVector secret = rng.UniformFieldVector(4);
  const Sharing s = ShareSecret(secret, 2, 6, rng);
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      for (int c = b + 1; c < 6; ++c) {
        const ShareVector subset[] = {s.shares[a], s.shares[b], s.shares[c]};
        EXPECT_EQ(Reconstruct(subset, 2), secret);
      }
    }
  }
}

// Fixing the secret, the masks map to the shares at any T indices through
// the Vandermonde-like matrix [i^j]; invertibility means those T shares are
// uniform whatever the secret is.
TEST(ShamirTest, AnyTSharesAreIndependentOfTheSecret) {
  for (int k = 2; k <= 16; ++k) {
    for (int t = 1; t < k; ++t) {
      std::vector<int> pick(k);
      std::fill(pick.begin(), pick.begin() + t, 1);
      int subsets = 0;
      do {
        FieldVector nodes;
        for (int i = 0; i < k; ++i) {
          if (pick[i]) nodes.push_back(FieldElement(static_cast<std::uint64_t>(i + 1)));
        }
        // det [x_r^j]_{r, j=1..t} = prod x_r * prod_{r<s} (x_s - x_r)
        FieldElement det = FieldElement::One();
        for (std::size_t r = 0; r < nodes.size(); ++r) {
          det *= nodes[r];
          for (std::size_t s2 = r + 1; s2 < nodes.size(); ++s2) det *= nodes[s2] - nodes[r];
        }
        EXPECT_FALSE(det.is_zero());
        ++subsets;
      } while (std::prev_permutation(pick.begin(), pick.end()) && subsets < 2000);
    }
  }
}

TEST(ShamirTest, RobustDecodeOneErrorOfFive) {
  RandomStream rng(3, "shamir");
  const FieldVector secret = rng.UniformFieldVector(3);
  Sharing s = ShareSecret(secret, 1, 5, rng);
  s.shares[2].values = rng.UniformFieldVector(3);
  const auto got = RobustReconstruct(s.shares, 1);
  ASSERT_TRUE(got);
  EXPECT_EQ(*got, secret);
  // Brute force: the value most (T+1)-subsets agree on is the secret.
  std::map<std::string, int> votes;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      const ShareVector pair[] = {s.shares[a], s.shares[b]};
      const FieldVector v = Reconstruct(pair, 1);
      std::string key;
      for (auto x : v) key += x.ToDecimal() + ",";
      ++votes[key];
    }
  }
  const auto best = std::max_element(votes.begin(), votes.end(),
                                     [](auto& x, auto& y) { return x.second < y.second; });
  std::string expect;
  for (auto x : secret) expect += x.ToDecimal() + ",";
  EXPECT_EQ(best->first, expect);
}

TEST(ShamirTest, RobustWithoutErrorsEqualsPlain) {
  RandomStream rng(4, "shamir");
  for (int trial = 0; trial < 20; ++trial) {
    const FieldVector secret = rng.UniformFieldVector(5);
    const Sharing s = ShareSecret(secret, 2, 7, rng);
    EXPECT_EQ(*RobustReconstruct(s.shares, 2), Reconstruct(s.shares, 2));
  }
}

TEST(ShamirTest, RobustDecodeRandomTrials) {
  RandomStream rng(5, "shamir");
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 14);
    const int t = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k - 2));
    const int radius = CorrectionRadius(k, t);
    const int errors = radius == 0 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(radius + 1));
    const FieldVector secret = rng.UniformFieldVector(2);
    Sharing s = ShareSecret(secret, t, k, rng);
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int e = 0; e < errors; ++e) {
      s.shares[idx[e]].values[rng() % 2] += rng.UniformField() + FieldElement::One();
    }
    const auto got = RobustReconstruct(s.shares, t);
    ASSERT_TRUE(got) << "k=" << k << " t=" << t << " errors=" << errors;
    EXPECT_EQ(*got, secret);
  }
}

TEST(ShamirTest, BeyondRadiusNeverSilentlyAcceptsANonCodeword) {
  RandomStream rng(6, "shamir");
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const FieldElement secret[] = {rng.UniformField()};
    Sharing s = ShareSecret(secret, 1, 5, rng);
    s.shares[0].values[0] = rng.UniformField();
    s.shares[3].values[0] = rng.UniformField();
    FieldVector received;
    for (const auto& sh : s.shares) received.push_back(sh.values[0]);
    const auto got = RobustDecode(received, 1);
    if (!got) {
      ++failures;
      continue;
    }
    // A decoded value must come from a line through (0, value) that agrees
    // with at least K - radius = 4 received symbols.
    int best = 0;
    for (int i = 1; i <= 5; ++i) {
      const FieldElement slope = (received[i - 1] - *got) / FieldElement(i);
      int agree = 0;
      for (int j = 1; j <= 5; ++j) agree += (*got + slope * FieldElement(j)) == received[j - 1];
      best = std::max(best, agree);
    }
    EXPECT_GE(best, 4);
  }
  EXPECT_GT(failures, 190);
}

TEST(ShamirTest, RobustReconstructNeedsAllIndices) {
  RandomStream rng(7, "shamir");
  const FieldElement secret[] = {1};
  Sharing s = ShareSecret(secret, 1, 4, rng);
  s.shares[1].index = 1;
  EXPECT_THROW(RobustReconstruct(s.shares, 1), std::invalid_argument);
}

TEST(ShamirTest, ShareVectorWireFormat) {
  const ShareVector v{3, {1, 2}};
  const auto bytes = v.Encode();
  ASSERT_EQ(bytes.size(), 8u + 32u);
  EXPECT_EQ(bytes[0], 3);
  EXPECT_EQ(bytes[4], 2);
  EXPECT_EQ(bytes[8], 1);
  EXPECT_EQ(ShareVector::Decode(bytes), v);
  EXPECT_THROW(ShareVector::Decode(std::span(bytes).first(20)), std::invalid_argument);
}

}  // namespace
}  // namespace gradmarket
