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

#ifndef GRADMARKET_SNIP_H_
#define GRADMARKET_SNIP_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gradmarket/circuit.h"
#include "gradmarket/field.h"
#include "gradmarket/random.h"
#include "gradmarket/shamir.h"

namespace gradmarket {

struct BeaverShare {
  FieldElement a;
  FieldElement b;
  FieldElement c;

  friend bool operator==(const BeaverShare&, const BeaverShare&) = default;
};

/// Everything server `input.index` receives from a prover.
///
/// `h` holds the server's shares of h(1), ..., h(2M-1). Those 2M-1 values
/// determine h (degree at most 2M-2), and keeping h in evaluation form lets a
/// server read multiplication-gate outputs directly and evaluate at r in O(M).
struct ProverPackage {
  ShareVector input;
  FieldVector h;
  BeaverShare triple;

  friend bool operator==(const ProverPackage&, const ProverPackage&) = default;

  /// ShareVector encoding, 4-byte LE count of h values, h values, then a, b, c.
  std::vector<std::uint8_t> Encode() const;
  static ProverPackage Decode(std::span<const std::uint8_t> bytes);
};

/// Plaintext proof material before sharing.
struct SnipWitness {
  FieldVector h;  // h(t) = f(t) g(t) for t = 1..2M-1
  FieldElement a;
  FieldElement b;
  FieldElement c;
};

SnipWitness BuildWitness(std::span<const FieldElement> input, const Circuit& circuit,
                         RandomStream& rng);

/// Shares a witness alongside input shares the caller already produced.
std::vector<ProverPackage> ShareWitness(const SnipWitness& witness,
                                        std::span<const ShareVector> input_shares,
                                        int threshold, RandomStream& rng);

/// Shares the input and proves it, in one step.
std::vector<ProverPackage> SnipProve(std::span<const FieldElement> input,
                                     const Circuit& circuit, int threshold,
                                     int num_servers, RandomStream& rng);

/// A server's shares of every multiplication gate's input wires, plus its
/// share of the circuit output wire.
struct WireShares {
  FieldVector f;
  FieldVector g;
  FieldElement output;
};

/// Throws std::invalid_argument if the package does not fit the circuit.
WireShares SnipServerEval(const ProverPackage& pkg, const Circuit& circuit);

/// The values a server broadcasts for the Beaver multiplication.
struct BeaverOpening {
  FieldElement d;  // [f(r)] - [a]
  FieldElement e;  // [g(r)] - [b]
};

BeaverOpening SnipOpen(const WireShares& wires, const ProverPackage& pkg, FieldElement r);

struct ServerVerdictShares {
  FieldElement identity_share;
  FieldElement output_share;

  friend bool operator==(const ServerVerdictShares&, const ServerVerdictShares&) = default;
};

/// `d_all`, `e_all` are the broadcast values of servers 1..K in index order.
/// Returns nullopt if either opening fails to decode.
std::optional<ServerVerdictShares> SnipServerCheck(const WireShares& wires,
                                                   const ProverPackage& pkg, FieldElement r,
                                                   std::span<const FieldElement> d_all,
                                                   std::span<const FieldElement> e_all,
                                                   int threshold);

}  // namespace gradmarket

#endif  // GRADMARKET_SNIP_H_
