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

#ifndef GRADMARKET_BASELINE_H_
#define GRADMARKET_BASELINE_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>

#include "gradmarket/circuit.h"
#include "gradmarket/contract.h"
#include "gradmarket/field.h"
#include "gradmarket/merkle.h"

namespace gradmarket {

/// Cost model for running the trade entirely on chain: owners upload their
/// quantized gradients in the clear, the contract stores them, evaluates the
/// validity circuit gate by gate, and sums the valid ones.
class FullyOnChainContract {
 public:
  FullyOnChainContract(GasTable gas, std::uint64_t deposit);

  void Start(const Digest& model_root);
  void Register(int do_id);
  void SubmitGradient(int do_id, std::span<const FieldElement> gradient);
  /// Evaluates `circuit` on every stored gradient; zero output keeps the owner.
  /// Without this call every submitted gradient is kept.
  void Validate(const Circuit& circuit);
  void Pay();
  /// Sum of the valid gradients, stored on chain.
  FieldVector Aggregate();

  const GasMeter& gas() const { return gas_; }
  const std::set<int>& valid() const { return valid_; }
  std::size_t word_count() const { return words_; }
  const std::map<std::string, std::uint64_t>& balances() const { return balances_; }

  /// Words to store m field elements.
  static std::size_t WordsFor(std::size_t m) { return (m * FieldElement::kEncodedSize + 31) / 32; }

 private:
  void Tx(const std::string& method, std::uint64_t gas);
  void Write(std::size_t words);

  GasTable table_;
  GasMeter gas_;
  std::uint64_t deposit_;
  std::size_t words_ = 0;
  std::map<int, FieldVector> gradients_;
  std::set<int> registered_;
  std::set<int> valid_;
  bool validated_ = false;
  std::map<std::string, std::uint64_t> balances_;
  std::uint64_t pending_ = 0;
};

}  // namespace gradmarket

#endif  // GRADMARKET_BASELINE_H_
