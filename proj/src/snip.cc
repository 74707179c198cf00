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

#include "gradmarket/snip.h"

#include <stdexcept>

#include "gradmarket/polynomial.h"

namespace gradmarket {
namespace {

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

std::uint32_t GetU32(std::span<const std::uint8_t> in) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(in[k]) << (8 * k);
  return v;
}

// Evaluates the polynomial through (t, values[t-1]); zero when there are no nodes.
FieldElement EvalNodes(std::span<const FieldElement> values, FieldElement x) {
  return values.empty() ? FieldElement::Zero() : EvaluateOnConsecutiveNodes(values, x);
}

}  // namespace

std::vector<std::uint8_t> ProverPackage::Encode() const {
  std::vector<std::uint8_t> out = input.Encode();
  PutU32(out, static_cast<std::uint32_t>(h.size()));
  const auto hb = EncodeElements(h);
  out.insert(out.end(), hb.begin(), hb.end());
  const FieldElement abc[3] = {triple.a, triple.b, triple.c};
  const auto tb = EncodeElements(abc);
  out.insert(out.end(), tb.begin(), tb.end());
  return out;
}

ProverPackage ProverPackage::Decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) throw std::invalid_argument("truncated prover package");
  const std::size_t n = GetU32(bytes.subspan(4));
  const std::size_t share_size = 8 + n * FieldElement::kEncodedSize;
  if (bytes.size() < share_size + 4) throw std::invalid_argument("truncated prover package");
  ProverPackage pkg;
  pkg.input = ShareVector::Decode(bytes.first(share_size));
  auto rest = bytes.subspan(share_size);
  const std::size_t hn = GetU32(rest);
  rest = rest.subspan(4);
  if (rest.size() != (hn + 3) * FieldElement::kEncodedSize) {
    throw std::invalid_argument("prover package length mismatch");
  }
  pkg.h = DecodeElements(rest.first(hn * FieldElement::kEncodedSize));
  const FieldVector abc = DecodeElements(rest.subspan(hn * FieldElement::kEncodedSize));
  pkg.triple = {abc[0], abc[1], abc[2]};
  return pkg;
}

SnipWitness BuildWitness(std::span<const FieldElement> input, const Circuit& circuit,
                         RandomStream& rng) {
  const PlainEvaluation eval = EvalPlain(circuit, input);
  const std::size_t m = circuit.num_mul();
  SnipWitness w;
  if (m > 0) {
    FieldVector f = eval.trace.u;
    FieldVector g = eval.trace.v;
    const FieldVector f_ext = ExtendConsecutive(f, m - 1);
    const FieldVector g_ext = ExtendConsecutive(g, m - 1);
    f.insert(f.end(), f_ext.begin(), f_ext.end());
    g.insert(g.end(), g_ext.begin(), g_ext.end());
    w.h.resize(2 * m - 1);
    for (std::size_t t = 0; t < w.h.size(); ++t) w.h[t] = f[t] * g[t];
  }
  w.a = rng.UniformField();
  w.b = rng.UniformField();
  w.c = w.a * w.b;
  return w;
}

std::vector<ProverPackage> ShareWitness(const SnipWitness& witness,
                                        std::span<const ShareVector> input_shares,
                                        int threshold, RandomStream& rng) {
  const int k = static_cast<int>(input_shares.size());
  const Sharing h = ShareSecret(witness.h, threshold, k, rng);
  const FieldElement abc[3] = {witness.a, witness.b, witness.c};
  const Sharing triple = ShareSecret(abc, threshold, k, rng);
  std::vector<ProverPackage> out(input_shares.size());
  for (int i = 0; i < k; ++i) {
    out[i].input = input_shares[i];
    out[i].h = h.shares[i].values;
    const auto& t = triple.shares[i].values;
    out[i].triple = {t[0], t[1], t[2]};
  }
  return out;
}

std::vector<ProverPackage> SnipProve(std::span<const FieldElement> input,
                                     const Circuit& circuit, int threshold,
                                     int num_servers, RandomStream& rng) {
  const SnipWitness witness = BuildWitness(input, circuit, rng);
  const Sharing shares = ShareSecret(input, threshold, num_servers, rng);
  return ShareWitness(witness, shares.shares, threshold, rng);
}

WireShares SnipServerEval(const ProverPackage& pkg, const Circuit& circuit) {
  const std::size_t m = circuit.num_mul();
  if (pkg.input.values.size() != circuit.input_arity()) {
    throw std::invalid_argument("input share length does not match circuit");
  }
  if (pkg.h.size() != (m == 0 ? 0 : 2 * m - 1)) {
    throw std::invalid_argument("h share length does not match circuit");
  }
  const auto& gates = circuit.gates();
  FieldVector wire(gates.size());
  WireShares out;
  out.f.reserve(m);
  out.g.reserve(m);
  std::size_t t = 0;
  for (std::size_t id = 0; id < gates.size(); ++id) {
    const Gate& g = gates[id];
    switch (g.kind) {
      case GateKind::kInput: wire[id] = pkg.input.values[g.a]; break;
      case GateKind::kConst: wire[id] = g.constant; break;
      case GateKind::kAdd: wire[id] = wire[g.a] + wire[g.b]; break;
      case GateKind::kSub: wire[id] = wire[g.a] - wire[g.b]; break;
      case GateKind::kMul:
        out.f.push_back(wire[g.a]);
        out.g.push_back(wire[g.b]);
        wire[id] = pkg.h[t++];
        break;
    }
  }
  out.output = gates.empty() ? FieldElement::Zero() : wire[circuit.output()];
  return out;
}

BeaverOpening SnipOpen(const WireShares& wires, const ProverPackage& pkg, FieldElement r) {
  return {EvalNodes(wires.f, r) - pkg.triple.a, EvalNodes(wires.g, r) - pkg.triple.b};
}

std::optional<ServerVerdictShares> SnipServerCheck(const WireShares& wires,
                                                   const ProverPackage& pkg, FieldElement r,
                                                   std::span<const FieldElement> d_all,
                                                   std::span<const FieldElement> e_all,
                                                   int threshold) {
  const auto d = RobustDecode(d_all, threshold);
  const auto e = RobustDecode(e_all, threshold);
  if (!d || !e) return std::nullopt;
  const FieldElement product = *d * *e + *d * pkg.triple.b + *e * pkg.triple.a + pkg.triple.c;
  return ServerVerdictShares{EvalNodes(pkg.h, r) - product, wires.output};
}

}  // namespace gradmarket
