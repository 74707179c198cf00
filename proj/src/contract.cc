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

#include "gradmarket/contract.h"

#include <bit>
#include <sstream>

#include "json.hpp"

namespace gradmarket {
namespace {

std::string Key(const char* prefix, int a) { return std::string(prefix) + "." + std::to_string(a); }
std::string Key(const char* prefix, int a, int b) { return Key(prefix, a) + "." + std::to_string(b); }

std::uint64_t CeilLog2(std::uint64_t n) { return n <= 1 ? 0 : std::bit_width(n - 1); }

}  // namespace

const char* PhaseName(Phase p) {
  switch (p) {
    case Phase::kSetup: return "Setup";
    case Phase::kRegister: return "Register";
    case Phase::kShareCollection: return "ShareCollection";
    case Phase::kShareReady: return "ShareReady";
    case Phase::kGradValidation: return "GradValidation";
    case Phase::kPayment: return "Payment";
    case Phase::kReconstruction: return "Reconstruction";
    case Phase::kFinished: return "Finished";
  }
  return "?";
}

const char* DoStatusName(DoStatus s) {
  switch (s) {
    case DoStatus::kRegistered: return "registered";
    case DoStatus::kCommitted: return "committed";
    case DoStatus::kExcludedSharing: return "excluded_sharing";
    case DoStatus::kRejectedValidation: return "rejected_validation";
    case DoStatus::kValid: return "valid";
  }
  return "?";
}

std::uint64_t GasTable::DecodeCost(int num_shares) const {
  const std::uint64_t k = static_cast<std::uint64_t>(num_shares);
  const std::uint64_t lg = CeilLog2(k);
  return field_op * k * lg * lg;
}

void GasMeter::Charge(const std::string& method, std::uint64_t gas) {
  total_ += gas;
  per_method_[method] += gas;
}

std::string TxRecord::ToJsonLine() const {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["caller"] = caller;
  j["gas"] = gas;
  j["phase_before"] = PhaseName(phase_before);
  j["phase_after"] = PhaseName(phase_after);
  j["stored_words_delta"] = stored_words_delta;
  j["accepted"] = accepted;
  if (!error.empty()) j["error"] = error;
  return j.dump();
}

Contract::Contract(ContractConfig config, const PowersOfAlpha& pp, RandomStream challenge_rng)
    : config_(std::move(config)), pp_(pp), challenge_rng_(std::move(challenge_rng)),
      gas_(config_.gas) {
  if (config_.threshold < 1 || config_.num_servers <= config_.threshold + 1) {
    throw std::invalid_argument("contract needs K > T + 1 and T >= 1");
  }
  state_.deposit = config_.deposit;
  state_.whitelist.insert(config_.whitelist.begin(), config_.whitelist.end());
  state_.slots = {"deposit", "whitelist"};
}

std::size_t Contract::ExpectedWordCount(int registered, int threshold, bool validate) {
  const std::size_t n = static_cast<std::size_t>(registered);
  const std::size_t t1 = static_cast<std::size_t>(threshold) + 1;
  // root, commitments, per-owner status, aggregate, then params/phase,
  // deposit, whitelist root and (when validating) challenge and circuit digest.
  return 1 + n * t1 + n + t1 + (validate ? 5 : 3);
}

TxResult Contract::Transact(const std::string& method, const std::string& caller,
                            const Body& body) {
  const ContractState before = state_;
  const RandomStream rng_before = challenge_rng_;
  pending_gas_ = 0;
  const auto error = body();
  TxRecord rec{method, caller, 0, before.phase, before.phase, 0, !error, error.value_or("")};
  if (error) {
    state_ = before;
    challenge_rng_ = rng_before;
    rec.gas = config_.gas.tx_base;
  } else {
    rec.gas = config_.gas.tx_base + pending_gas_;
    rec.phase_after = state_.phase;
    rec.stored_words_delta = static_cast<std::int64_t>(state_.slots.size()) -
                             static_cast<std::int64_t>(before.slots.size());
  }
  gas_.Charge(method, rec.gas);
  log_.push_back(rec);
  return {!error, error.value_or("")};
}

void Contract::WriteSlot(const std::string& slot) {
  Charge(config_.gas.storage_word_write);
  state_.slots.insert(slot);
}

void Contract::ClearSlot(const std::string& slot) {
  Charge(config_.gas.storage_word_write);
  state_.slots.erase(slot);
}

void Contract::SetPhase(Phase p, bool charge) {
  if (charge) Charge(config_.gas.storage_word_write);
  state_.phase = p;
}

void Contract::Exclude(int do_id, DoStatus why) {
  state_.valid.erase(do_id);
  state_.status[do_id] = why;
  WriteSlot(Key("status", do_id));
}

std::optional<std::string> Contract::Require(Phase p) const {
  if (state_.phase != p) {
    return std::string("wrong phase: in ") + PhaseName(state_.phase) + ", needs " + PhaseName(p);
  }
  return std::nullopt;
}

TxResult Contract::Start(const Digest& model_root, int required_samples, int max_owners) {
  return Transact("start", "mo", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kSetup)) return e;
    if (max_owners < 1) return "max_owners must be positive";
    if (required_samples < 0) return "required_samples must be non-negative";
    Charge(config_.gas.hash_word);
    state_.model_root = model_root;
    state_.required_samples = required_samples;
    state_.max_owners = max_owners;
    WriteSlot("root");
    WriteSlot("params");
    SetPhase(Phase::kRegister, false);
    return std::nullopt;
  });
}

TxResult Contract::Register(int do_id) {
  return Transact("register", Key("do", do_id), [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kRegister)) return e;
    if (!state_.whitelist.contains(do_id)) return "data owner not whitelisted";
    if (state_.registered.contains(do_id)) return "data owner already registered";
    Charge(config_.gas.storage_word_read + config_.gas.hash_word * std::max<std::uint64_t>(
                                                   1, CeilLog2(state_.whitelist.size())));
    state_.registered.insert(do_id);
    state_.status[do_id] = DoStatus::kRegistered;
    WriteSlot(Key("status", do_id));
    if (static_cast<int>(state_.registered.size()) == state_.max_owners) {
      state_.valid = state_.registered;
      SetPhase(Phase::kShareCollection);
    }
    return std::nullopt;
  });
}

TxResult Contract::Timeout() {
  return Transact("timeout", "timer", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kRegister)) return e;
    ++state_.register_rounds;
    Charge(config_.gas.storage_word_write);
    if (state_.register_rounds >= config_.register_timeout_rounds) {
      if (state_.registered.empty()) {
        state_.balances["mo"] += state_.deposit;
        Charge(config_.gas.storage_word_write);
        SetPhase(Phase::kFinished);
      } else {
        state_.valid = state_.registered;
        SetPhase(Phase::kShareCollection);
      }
    }
    return std::nullopt;
  });
}

TxResult Contract::StoreCommitment(int do_id, const VectorCommitment& c) {
  return Transact("store_commitment", Key("do", do_id), [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kShareCollection)) return e;
    if (!state_.registered.contains(do_id)) return "data owner not registered";
    if (state_.commitments.contains(do_id)) return "commitment already stored";
    if (c.threshold() != config_.threshold) return "commitment has the wrong length";
    state_.commitments[do_id] = c;
    for (int j = 0; j <= config_.threshold; ++j) WriteSlot(Key("commit", do_id, j));
    state_.status[do_id] = DoStatus::kCommitted;
    WriteSlot(Key("status", do_id));
    return std::nullopt;
  });
}

TxResult Contract::Complain(int server, int do_id) {
  return Transact("complain", Key("server", server), [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kShareCollection)) return e;
    if (server < 1 || server > config_.num_servers) return "unknown server";
    if (!state_.commitments.contains(do_id)) return "no commitment from this data owner";
    if (state_.pending_complaints[do_id].contains(server)) return "complaint already pending";
    Charge(config_.gas.storage_word_read);
    state_.pending_complaints[do_id].insert(server);
    WriteSlot(Key("complaint", do_id, server));
    return std::nullopt;
  });
}

TxResult Contract::ResolveComplaint(int do_id, int server, const ShareVector& share) {
  return Transact("resolve_complaint", Key("do", do_id), [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kShareCollection)) return e;
    auto it = state_.pending_complaints.find(do_id);
    if (it == state_.pending_complaints.end() || !it->second.contains(server)) {
      return "no such pending complaint";
    }
    if (share.index != static_cast<std::uint32_t>(server)) return "share index does not match";
    const auto t1 = static_cast<std::uint64_t>(config_.threshold) + 1;
    Charge(config_.gas.storage_word_read * t1 +
           config_.gas.group_op * (share.values.size() + t1));
    const bool ok = VerifyShare(share, state_.commitments.at(do_id), pp_);
    it->second.erase(server);
    if (it->second.empty()) state_.pending_complaints.erase(it);
    ClearSlot(Key("complaint", do_id, server));
    if (!ok) {
      if (state_.valid.contains(do_id)) Exclude(do_id, DoStatus::kExcludedSharing);
    } else {
      state_.false_complainers.insert(server);
      Charge(config_.gas.storage_word_write);
    }
    return std::nullopt;
  });
}

TxResult Contract::CloseSharing() {
  return Transact("close_sharing", "mo", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kShareCollection)) return e;
    if (!state_.pending_complaints.empty()) return "complaints still pending";
    Charge(config_.gas.storage_word_read * state_.registered.size());
    for (int n : state_.registered) {
      if (!state_.commitments.contains(n) && state_.valid.contains(n)) {
        Exclude(n, DoStatus::kExcludedSharing);
      }
    }
    SetPhase(Phase::kShareReady);
    return std::nullopt;
  });
}

TxResult Contract::BeginValidation() {
  return Transact("begin_validation", "mo", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kShareReady)) return e;
    SetPhase(Phase::kGradValidation);
    return std::nullopt;
  });
}

TxResult Contract::RevealCircuit(const Circuit& circuit) {
  return Transact("reveal_circuit", "mo", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kGradValidation)) return e;
    if (!config_.validate) return "validation disabled";
    if (state_.circuit_digest) return "circuit already revealed";
    const std::string text = circuit.ToJson();
    const std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(text.data()),
                                              text.size());
    Charge(config_.gas.hash_word * ((bytes.size() + 31) / 32));
    state_.circuit_digest = Sha256(bytes);
    WriteSlot("circuit");
    return std::nullopt;
  });
}

TxResult Contract::SampleChallenge() {
  return Transact("sample_challenge", "mo", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kGradValidation)) return e;
    if (!state_.circuit_digest) return "circuit not revealed";
    if (state_.challenge) return "challenge already sampled";
    Charge(config_.gas.hash_word);
    state_.challenge = challenge_rng_.UniformField();
    WriteSlot("challenge");
    return std::nullopt;
  });
}

TxResult Contract::SubmitVerdict(int server, int do_id,
                                 const std::optional<ServerVerdictShares>& v) {
  return Transact("submit_verdict", Key("server", server), [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kGradValidation)) return e;
    if (!state_.challenge) return "challenge not sampled";
    if (server < 1 || server > config_.num_servers) return "unknown server";
    if (!state_.valid.contains(do_id)) return "data owner not in the validity set";
    auto& per_do = state_.verdicts[do_id];
    if (per_do.contains(server)) return "verdict already submitted";
    per_do[server] = v;
    WriteSlot(Key("verdict", do_id, server));
    return std::nullopt;
  });
}

TxResult Contract::FinalizeValidation() {
  return Transact("finalize_validation", "mo", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kGradValidation)) return e;
    const int k = config_.num_servers;
    if (config_.validate) {
      if (!state_.challenge) return "challenge not sampled";
      for (int n : state_.valid) {
        auto it = state_.verdicts.find(n);
        if (it == state_.verdicts.end() || static_cast<int>(it->second.size()) != k) {
          return "missing verdicts for " + Key("do", n);
        }
      }
      const std::set<int> candidates = state_.valid;
      for (int n : candidates) {
        const auto& per_do = state_.verdicts.at(n);
        Charge(config_.gas.storage_word_read * static_cast<std::uint64_t>(k));
        int failures = 0;
        FieldVector identity(k), output(k);
        for (const auto& [server, v] : per_do) {
          if (!v) {
            ++failures;
            continue;
          }
          identity[server - 1] = v->identity_share;
          output[server - 1] = v->output_share;
        }
        bool ok = failures <= CorrectionRadius(k, config_.threshold);
        if (ok) {
          Charge(config_.gas.DecodeCost(k));
          const auto id_value = RobustDecode(identity, config_.threshold);
          ok = id_value && id_value->is_zero();
        }
        if (ok) {
          Charge(config_.gas.DecodeCost(k));
          const auto out_value = RobustDecode(output, config_.threshold);
          ok = out_value && out_value->is_zero();
        }
        for (int i = 1; i <= k; ++i) ClearSlot(Key("verdict", n, i));
        if (ok) {
          state_.status[n] = DoStatus::kValid;
          WriteSlot(Key("status", n));
        } else {
          Exclude(n, DoStatus::kRejectedValidation);
        }
      }
      state_.verdicts.clear();
    } else {
      for (int n : state_.valid) {
        state_.status[n] = DoStatus::kValid;
        WriteSlot(Key("status", n));
      }
    }
    SetPhase(Phase::kPayment);
    return std::nullopt;
  });
}

TxResult Contract::Pay() {
  return Transact("pay", "mo", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kPayment)) return e;
    Charge(config_.gas.storage_word_read);
    if (state_.valid.empty()) {
      state_.balances["mo"] += state_.deposit;
      Charge(config_.gas.storage_word_write);
    } else {
      const std::uint64_t each = state_.deposit / state_.valid.size();
      for (int n : state_.valid) {
        state_.balances[Key("do", n)] += each;
        Charge(config_.gas.storage_word_write);
      }
      state_.balances["contract"] += state_.deposit - each * state_.valid.size();
    }
    state_.deposit = 0;
    Charge(config_.gas.storage_word_write);
    SetPhase(Phase::kReconstruction);
    return std::nullopt;
  });
}

TxResult Contract::AggregateCommitment() {
  return Transact("aggregate_commitment", "mo", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kReconstruction)) return e;
    if (state_.aggregate) return "aggregate already stored";
    if (state_.valid.empty()) return "validity set is empty";
    std::vector<VectorCommitment> parts;
    for (int n : state_.valid) parts.push_back(state_.commitments.at(n));
    const auto t1 = static_cast<std::uint64_t>(config_.threshold) + 1;
    Charge(config_.gas.storage_word_read * parts.size() * t1 +
           config_.gas.group_op * (parts.size() - 1) * t1);
    state_.aggregate = AggregateCommitments(parts);
    for (int j = 0; j <= config_.threshold; ++j) WriteSlot(Key("aggregate", j));
    return std::nullopt;
  });
}

TxResult Contract::Acknowledge() {
  return Transact("acknowledge", "mo", [&]() -> std::optional<std::string> {
    if (auto e = Require(Phase::kReconstruction)) return e;
    if (!state_.aggregate && !state_.valid.empty()) return "aggregate commitment not stored";
    state_.acknowledged = true;
    SetPhase(Phase::kFinished);
    return std::nullopt;
  });
}

}  // namespace gradmarket
