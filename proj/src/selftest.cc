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

#include "gradmarket/selftest.h"

#include <exception>
#include <functional>
#include <string>

#include "gradmarket/circuit.h"
#include "gradmarket/commit.h"
#include "gradmarket/field.h"
#include "gradmarket/perturb.h"
#include "gradmarket/shamir.h"
#include "gradmarket/sim.h"
#include "gradmarket/snip.h"

namespace gradmarket {
namespace {

bool FieldCheck() {
  const FieldElement two(2);
  const FieldElement minus_one = -FieldElement::One();
  return two.Inverse() * two == FieldElement::One() && minus_one * minus_one == FieldElement::One() &&
         two.Pow(127) == FieldElement::One();
}

bool SharingCheck() {
  RandomStream rng(11, "selftest.shamir");
  for (int trial = 0; trial < 50; ++trial) {
    const FieldVector secret = rng.UniformFieldVector(3);
    Sharing s = ShareSecret(secret, 2, 9, rng);
    if (Reconstruct(s.shares, 2) != secret) return false;
    for (int e = 0; e < CorrectionRadius(9, 2); ++e) s.shares[2 * e + 1].values = rng.UniformFieldVector(3);
    const auto robust = RobustReconstruct(s.shares, 2);
    if (!robust || *robust != secret) return false;
  }
  return true;
}

bool CommitmentCheck() {
  RandomStream rng(12, "selftest.commit");
  const PowersOfAlpha pp = CommitSetup(6, rng);
  const FieldVector secret = rng.UniformFieldVector(6);
  const Sharing s = ShareSecret(secret, 1, 5, rng);
  const VectorCommitment c = Commit(secret, s.masks, pp);
  for (const auto& share : s.shares) {
    if (!VerifyShare(share, c, pp)) return false;
  }
  ShareVector bad = s.shares[0];
  bad.values[3] += FieldElement::One();
  return !VerifyShare(bad, c, pp);
}

bool CircuitCheck() {
  const Circuit c = BuildNormCircuit(2, 2);
  const FieldElement ok[2] = {1, 1};
  const FieldElement big[2] = {2, 0};
  return c.num_mul() == 3 && EvalPlain(c, ok).output.is_zero() &&
         EvalPlain(c, big).output == FieldElement(6);
}

bool SnipCheck() {
  RandomStream rng(13, "selftest.snip");
  const Circuit c = BuildNormCircuit(3, 10, ZeroNorm::kAccept);
  const FieldElement input[3] = {1, 2, 2};
  for (bool tamper : {false, true}) {
    const Sharing shares = ShareSecret(input, 1, 5, rng);
    SnipWitness w = BuildWitness(input, c, rng);
    if (tamper) w.h.back() += FieldElement::One();
    const auto pkgs = ShareWitness(w, shares.shares, 1, rng);
    const FieldElement r = rng.UniformField();
    std::vector<WireShares> wires;
    FieldVector d(5), e(5);
    for (int i = 0; i < 5; ++i) {
      wires.push_back(SnipServerEval(pkgs[i], c));
      const auto op = SnipOpen(wires[i], pkgs[i], r);
      d[i] = op.d;
      e[i] = op.e;
    }
    FieldVector id(5);
    for (int i = 0; i < 5; ++i) {
      const auto v = SnipServerCheck(wires[i], pkgs[i], r, d, e, 1);
      if (!v) return false;
      id[i] = v->identity_share;
    }
    const auto value = RobustDecode(id, 1);
    if (!value || value->is_zero() == tamper) return false;
  }
  return true;
}

bool DecryptionCheck() {
  RandomStream rng(14, "selftest.perturb");
  const std::vector<int> sizes = {3, 5, 2};
  const auto model = Mlp<double>::Random(sizes, 1.0, rng);
  Dataset<double> data{Matrix<double>(6, 3), Matrix<double>(6, 2)};
  for (Eigen::Index k = 0; k < data.x.size(); ++k) data.x.data()[k] = rng.Uniform(-1, 1);
  for (Eigen::Index k = 0; k < data.y.size(); ++k) data.y.data()[k] = rng.Normal(0, 1);
  const auto masks = MaskSet<double>::Sample(sizes, rng);
  const auto g = ComputeEncryptedGradient(EncryptModel(model, masks), data);
  const auto dec = DecryptAggregate(sizes, g, masks);
  const auto plain = PlainGradient(model, data);
  for (std::size_t l = 0; l < dec.size(); ++l) {
    if ((dec[l] - plain[l]).cwiseAbs().maxCoeff() > 1e-9) return false;
  }
  return true;
}

bool SessionCheck() {
  const SessionConfig config;
  const SessionReport a = RunSession(config);
  const SessionReport b = RunSession(config);
  return a.success && a.validity_set.size() == 4 && a.ToJson() == b.ToJson() &&
         a.word_count == a.expected_word_count;
}

}  // namespace

bool RunSelfTest(std::ostream& out) {
  const std::pair<const char*, std::function<bool()>> checks[] = {
      {"field", FieldCheck},         {"sharing", SharingCheck},
      {"commitment", CommitmentCheck}, {"circuit", CircuitCheck},
      {"snip", SnipCheck},           {"decryption", DecryptionCheck},
      {"session", SessionCheck},
  };
  bool all = true;
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      out << name << ": exception: " << e.what() << "\n";
    }
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    all = all && ok;
  }
  return all;
}

}  // namespace gradmarket
