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

#include "gradmarket/circuit.h"

#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace gradmarket {
namespace {

const char* KindName(GateKind k) {
  switch (k) {
    case GateKind::kInput: return "input";
    case GateKind::kConst: return "const";
    case GateKind::kAdd: return "add";
    case GateKind::kSub: return "sub";
    case GateKind::kMul: return "mul";
  }
  return "?";
}

GateKind KindFromName(const std::string& s) {
  if (s == "input") return GateKind::kInput;
  if (s == "const") return GateKind::kConst;
  if (s == "add") return GateKind::kAdd;
  if (s == "sub") return GateKind::kSub;
  if (s == "mul") return GateKind::kMul;
  throw std::invalid_argument("unknown gate kind '" + s + "'");
}

}  // namespace

std::size_t Circuit::Push(Gate g) {
  gates_.push_back(g);
  if (g.kind == GateKind::kMul) mul_gates_.push_back(gates_.size() - 1);
  output_ = gates_.size() - 1;
  return gates_.size() - 1;
}

void Circuit::CheckOperand(std::size_t id) const {
  if (id >= gates_.size()) throw std::invalid_argument("gate operand refers to a later gate");
}

std::size_t Circuit::AddInput(std::size_t index) {
  if (index >= input_arity_) throw std::invalid_argument("input index out of range");
  return Push({GateKind::kInput, index, 0, {}});
}

std::size_t Circuit::AddConst(FieldElement c) { return Push({GateKind::kConst, 0, 0, c}); }

std::size_t Circuit::AddAdd(std::size_t a, std::size_t b) {
  CheckOperand(a);
  CheckOperand(b);
  return Push({GateKind::kAdd, a, b, {}});
}

std::size_t Circuit::AddSub(std::size_t a, std::size_t b) {
  CheckOperand(a);
  CheckOperand(b);
  return Push({GateKind::kSub, a, b, {}});
}

std::size_t Circuit::AddMul(std::size_t a, std::size_t b) {
  CheckOperand(a);
  CheckOperand(b);
  return Push({GateKind::kMul, a, b, {}});
}

void Circuit::SetOutput(std::size_t gate) {
  CheckOperand(gate);
  output_ = gate;
}

std::string Circuit::ToJson() const {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : gates_) {
    nlohmann::json j = {{"kind", KindName(g.kind)}};
    switch (g.kind) {
      case GateKind::kInput: j["index"] = g.a; break;
      case GateKind::kConst: j["value"] = g.constant.ToDecimal(); break;
      default:
        j["a"] = g.a;
        j["b"] = g.b;
    }
    gates.push_back(std::move(j));
  }
  return nlohmann::json{{"input_arity", input_arity_}, {"output", output_}, {"gates", gates}}.dump();
}

Circuit Circuit::FromJson(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  Circuit c(doc.at("input_arity").get<std::size_t>());
  for (const auto& j : doc.at("gates")) {
    switch (KindFromName(j.at("kind").get<std::string>())) {
      case GateKind::kInput: c.AddInput(j.at("index").get<std::size_t>()); break;
      case GateKind::kConst:
        c.AddConst(FieldElement::FromDecimal(j.at("value").get<std::string>()));
        break;
      case GateKind::kAdd: c.AddAdd(j.at("a").get<std::size_t>(), j.at("b").get<std::size_t>()); break;
      case GateKind::kSub: c.AddSub(j.at("a").get<std::size_t>(), j.at("b").get<std::size_t>()); break;
      case GateKind::kMul: c.AddMul(j.at("a").get<std::size_t>(), j.at("b").get<std::size_t>()); break;
    }
  }
  if (c.gates_.empty()) throw std::invalid_argument("circuit has no gates");
  c.SetOutput(doc.at("output").get<std::size_t>());
  return c;
}

Circuit BuildNormCircuit(std::span<const std::size_t> inputs, std::size_t arity,
                         std::uint64_t rho, ZeroNorm zero) {
  if (inputs.empty()) throw std::invalid_argument("norm circuit needs at least one input");
  if (rho == 0) throw std::invalid_argument("norm threshold must be positive");
  Circuit c(arity);
  std::size_t sum = 0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const std::size_t in = c.AddInput(inputs[k]);
    const std::size_t sq = c.AddMul(in, in);
    sum = k == 0 ? sq : c.AddAdd(sum, sq);
  }
  std::size_t product = sum;
  std::uint64_t first = 1;
  if (zero == ZeroNorm::kReject) {
    product = c.AddSub(sum, c.AddConst(FieldElement(1)));
    first = 2;
  }
  for (std::uint64_t j = first; j <= rho; ++j) {
    const std::size_t factor = c.AddSub(sum, c.AddConst(FieldElement(j)));
    product = c.AddMul(product, factor);
  }
  c.SetOutput(product);
  return c;
}

Circuit BuildNormCircuit(std::size_t m, std::uint64_t rho, ZeroNorm zero) {
  std::vector<std::size_t> inputs(m);
  std::iota(inputs.begin(), inputs.end(), std::size_t{0});
  return BuildNormCircuit(inputs, m, rho, zero);
}

PlainEvaluation EvalPlain(const Circuit& circuit, std::span<const FieldElement> input) {
  if (input.size() != circuit.input_arity()) {
    throw std::invalid_argument("circuit input arity mismatch");
  }
  const auto& gates = circuit.gates();
  FieldVector wire(gates.size());
  PlainEvaluation out;
  for (std::size_t id = 0; id < gates.size(); ++id) {
    const Gate& g = gates[id];
    switch (g.kind) {
      case GateKind::kInput: wire[id] = input[g.a]; break;
      case GateKind::kConst: wire[id] = g.constant; break;
      case GateKind::kAdd: wire[id] = wire[g.a] + wire[g.b]; break;
      case GateKind::kSub: wire[id] = wire[g.a] - wire[g.b]; break;
      case GateKind::kMul:
        wire[id] = wire[g.a] * wire[g.b];
        out.trace.u.push_back(wire[g.a]);
        out.trace.v.push_back(wire[g.b]);
        out.trace.w.push_back(wire[id]);
        break;
    }
  }
  out.output = gates.empty() ? FieldElement::Zero() : wire[circuit.output()];
  return out;
}

}  // namespace gradmarket
