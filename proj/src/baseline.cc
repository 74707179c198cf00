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

#include "gradmarket/baseline.h"

#include <stdexcept>

namespace gradmarket {

FullyOnChainContract::FullyOnChainContract(GasTable gas, std::uint64_t deposit)
    : table_(gas), gas_(gas), deposit_(deposit) {
  words_ = 2;  // deposit, whitelist root
}

void FullyOnChainContract::Tx(const std::string& method, std::uint64_t gas) {
  gas_.Charge(method, table_.tx_base + gas);
}

void FullyOnChainContract::Write(std::size_t words) {
  words_ += words;
  pending_ += table_.storage_word_write * words;
}

void FullyOnChainContract::Start(const Digest&) {
  pending_ = table_.hash_word;
  Write(2);  // root, params
  Tx("start", pending_);
}

void FullyOnChainContract::Register(int do_id) {
  if (!registered_.insert(do_id).second) throw std::invalid_argument("already registered");
  pending_ = table_.storage_word_read + table_.hash_word;
  Write(1);
  Tx("register", pending_);
}

void FullyOnChainContract::SubmitGradient(int do_id, std::span<const FieldElement> gradient) {
  if (!registered_.contains(do_id)) throw std::invalid_argument("not registered");
  if (gradients_.contains(do_id)) throw std::invalid_argument("gradient already stored");
  gradients_[do_id] = FieldVector(gradient.begin(), gradient.end());
  pending_ = 0;
  Write(WordsFor(gradient.size()));
  Tx("submit_gradient", pending_);
}

void FullyOnChainContract::Validate(const Circuit& circuit) {
  pending_ = 0;
  validated_ = true;
  for (const auto& [n, g] : gradients_) {
    pending_ += table_.storage_word_read * WordsFor(g.size()) +
                table_.field_op * circuit.gates().size();
    if (EvalPlain(circuit, g).output.is_zero()) valid_.insert(n);
    pending_ += table_.storage_word_write;  // status word, already counted at register
  }
  Tx("validate", pending_);
}

void FullyOnChainContract::Pay() {
  if (!validated_) {
    for (const auto& [n, g] : gradients_) valid_.insert(n);
  }
  pending_ = table_.storage_word_read;
  if (valid_.empty()) {
    balances_["mo"] += deposit_;
    pending_ += table_.storage_word_write;
  } else {
    const std::uint64_t each = deposit_ / valid_.size();
    for (int n : valid_) {
      balances_["do." + std::to_string(n)] += each;
      pending_ += table_.storage_word_write;
    }
    balances_["contract"] += deposit_ - each * valid_.size();
  }
  deposit_ = 0;
  pending_ += table_.storage_word_write;
  Tx("pay", pending_);
}

FieldVector FullyOnChainContract::Aggregate() {
  pending_ = 0;
  FieldVector sum;
  for (int n : valid_) {
    const auto& g = gradients_.at(n);
    pending_ += table_.storage_word_read * WordsFor(g.size());
    if (sum.empty()) {
      sum = g;
    } else {
      sum += g;
      pending_ += table_.field_op * g.size();
    }
  }
  Write(WordsFor(sum.size()));
  Tx("aggregate", pending_);
  return sum;
}

}  // namespace gradmarket
