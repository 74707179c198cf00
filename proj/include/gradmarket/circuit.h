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

#ifndef GRADMARKET_CIRCUIT_H_
#define GRADMARKET_CIRCUIT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gradmarket/field.h"

namespace gradmarket {

enum class GateKind { kInput, kConst, kAdd, kSub, kMul };

struct Gate {
  GateKind kind = GateKind::kConst;
  std::size_t a = 0;      // operand gate, or input index for kInput
  std::size_t b = 0;      // second operand gate
  FieldElement constant;  // kConst only

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Arithmetic circuit over F_q in topological order. Every operand refers to
/// an earlier gate, so the gate list is a valid evaluation schedule.
class Circuit {
 public:
  explicit Circuit(std::size_t input_arity = 0) : input_arity_(input_arity) {}

  std::size_t AddInput(std::size_t index);
  std::size_t AddConst(FieldElement c);
  std::size_t AddAdd(std::size_t a, std::size_t b);
  std::size_t AddSub(std::size_t a, std::size_t b);
  std::size_t AddMul(std::size_t a, std::size_t b);
  void SetOutput(std::size_t gate);

  std::size_t input_arity() const { return input_arity_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t output() const { return output_; }
  /// Gate ids of the multiplication gates; entry t-1 is mult gate t.
  const std::vector<std::size_t>& mul_gates() const { return mul_gates_; }
  std::size_t num_mul() const { return mul_gates_.size(); }

  /// {"input_arity": n, "output": id, "gates": [{"kind": "mul", "a": .., "b": ..}, ...]}
  /// with constants as decimal strings.
  std::string ToJson() const;
  static Circuit FromJson(const std::string& text);

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t Push(Gate g);
  void CheckOperand(std::size_t id) const;

  std::size_t input_arity_;
  std::vector<Gate> gates_;
  std::vector<std::size_t> mul_gates_;
  std::size_t output_ = 0;
};

/// Whether an all-zero input counts as inside the norm ball.
enum class ZeroNorm {
  kReject,  // prod_{j=1..rho} (S - j): M = m + rho - 1
  kAccept,  // prod_{j=0..rho} (S - j): M = m + rho
};

/// Norm-threshold circuit over the inputs listed in `inputs` (indices into a
/// vector of length `arity`): with S = sum g_k^2 it outputs a product of
/// (S - j) factors, which is zero iff S lies in the accepted set.
Circuit BuildNormCircuit(std::span<const std::size_t> inputs, std::size_t arity,
                         std::uint64_t rho, ZeroNorm zero = ZeroNorm::kReject);
/// Norm circuit over all m inputs.
Circuit BuildNormCircuit(std::size_t m, std::uint64_t rho, ZeroNorm zero = ZeroNorm::kReject);

/// Input and output wire values of every multiplication gate, in gate order.
struct MulTrace {
  FieldVector u;
  FieldVector v;
  FieldVector w;
};

struct PlainEvaluation {
  FieldElement output;
  MulTrace trace;
};

/// Throws std::invalid_argument if input.size() != circuit.input_arity().
PlainEvaluation EvalPlain(const Circuit& circuit, std::span<const FieldElement> input);

}  // namespace gradmarket

#endif  // GRADMARKET_CIRCUIT_H_
