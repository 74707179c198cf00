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

#ifndef GRADMARKET_CONTRACT_H_
#define GRADMARKET_CONTRACT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gradmarket/circuit.h"
#include "gradmarket/commit.h"
#include "gradmarket/merkle.h"
#include "gradmarket/random.h"
#include "gradmarket/shamir.h"
#include "gradmarket/snip.h"

namespace gradmarket {

enum class Phase {
  kSetup,
  kRegister,
  kShareCollection,
  kShareReady,
  kGradValidation,
  kPayment,
  kReconstruction,
  kFinished,
};

inline constexpr Phase kAllPhases[] = {
    Phase::kSetup,          Phase::kRegister, Phase::kShareCollection, Phase::kShareReady,
    Phase::kGradValidation, Phase::kPayment,  Phase::kReconstruction,  Phase::kFinished,
};

const char* PhaseName(Phase p);

struct GasTable {
  std::uint64_t storage_word_write = 20000;
  std::uint64_t storage_word_read = 2100;
  std::uint64_t field_op = 10;
  std::uint64_t group_op = 5000;
  std::uint64_t hash_word = 36;
  std::uint64_t tx_base = 21000;

  /// Cost of one robust reconstruction of K values: K ceil(log2 K)^2 field ops.
  std::uint64_t DecodeCost(int num_shares) const;

  friend bool operator==(const GasTable&, const GasTable&) = default;
};

class GasMeter {
 public:
  explicit GasMeter(GasTable table = {}) : table_(table) {}

  void Charge(const std::string& method, std::uint64_t gas);
  const GasTable& table() const { return table_; }
  std::uint64_t total() const { return total_; }
  const std::map<std::string, std::uint64_t>& per_method() const { return per_method_; }

 private:
  GasTable table_;
  std::uint64_t total_ = 0;
  std::map<std::string, std::uint64_t> per_method_;
};

struct TxRecord {
  std::string method;
  std::string caller;
  std::uint64_t gas = 0;
  Phase phase_before = Phase::kSetup;
  Phase phase_after = Phase::kSetup;
  std::int64_t stored_words_delta = 0;
  bool accepted = false;
  std::string error;

  /// One JSON object on a single line.
  std::string ToJsonLine() const;
};

struct TxResult {
  bool accepted = true;
  std::string error;

  explicit operator bool() const { return accepted; }
};

struct ContractConfig {
  int num_servers = 5;
  int threshold = 1;
  std::uint64_t deposit = 100;
  std::vector<int> whitelist;
  int register_timeout_rounds = 3;
  bool validate = true;
  GasTable gas;
};

/// Fate of one registered data owner.
enum class DoStatus { kRegistered, kCommitted, kExcludedSharing, kRejectedValidation, kValid };

const char* DoStatusName(DoStatus s);

/// All contract storage. Separate from gas and logs so that a rejected
/// transaction can be checked to leave it untouched.
struct ContractState {
  Phase phase = Phase::kSetup;
  std::uint64_t deposit = 0;
  std::set<int> whitelist;
  std::optional<Digest> model_root;
  int required_samples = 0;  // M0
  int max_owners = 0;        // N_max
  int register_rounds = 0;
  std::set<int> registered;
  std::set<int> valid;
  std::map<int, DoStatus> status;
  std::map<int, VectorCommitment> commitments;
  std::map<int, std::set<int>> pending_complaints;  // do -> servers
  std::set<int> false_complainers;
  std::optional<Digest> circuit_digest;
  std::optional<FieldElement> challenge;
  std::map<int, std::map<int, std::optional<ServerVerdictShares>>> verdicts;  // do -> server
  std::map<std::string, std::uint64_t> balances;
  std::optional<VectorCommitment> aggregate;
  bool acknowledged = false;
  std::set<std::string> slots;  // live storage words

  friend bool operator==(const ContractState&, const ContractState&) = default;
};

/// The trading contract as a deterministic state machine.
///
/// Each method is one transaction. A rejected transaction leaves the state
/// unchanged and is charged tx_base only.
class Contract {
 public:
  /// `pp` are the public commitment parameters; they must outlive the contract.
  Contract(ContractConfig config, const PowersOfAlpha& pp, RandomStream challenge_rng);

  TxResult Start(const Digest& model_root, int required_samples, int max_owners);
  TxResult Register(int do_id);
  /// One simulated round of the registration timer.
  TxResult Timeout();
  TxResult StoreCommitment(int do_id, const VectorCommitment& c);
  TxResult Complain(int server, int do_id);
  /// The accused owner publishes the share it sent to `server`.
  TxResult ResolveComplaint(int do_id, int server, const ShareVector& share);
  TxResult CloseSharing();
  TxResult BeginValidation();
  TxResult RevealCircuit(const Circuit& circuit);
  TxResult SampleChallenge();
  /// nullopt reports that the server could not decode the Beaver openings.
  TxResult SubmitVerdict(int server, int do_id, const std::optional<ServerVerdictShares>& v);
  TxResult FinalizeValidation();
  TxResult Pay();
  TxResult AggregateCommitment();
  TxResult Acknowledge();

  const ContractState& state() const { return state_; }
  const GasMeter& gas() const { return gas_; }
  const std::vector<TxRecord>& log() const { return log_; }
  const ContractConfig& config() const { return config_; }
  std::size_t word_count() const { return state_.slots.size(); }

  /// Storage words of a finished session with `registered` owners.
  static std::size_t ExpectedWordCount(int registered, int threshold, bool validate = true);

 private:
  using Body = std::function<std::optional<std::string>()>;
  TxResult Transact(const std::string& method, const std::string& caller, const Body& body);

  void Charge(std::uint64_t gas) { pending_gas_ += gas; }
  void WriteSlot(const std::string& slot);
  void ClearSlot(const std::string& slot);
  void SetPhase(Phase p, bool charge = true);
  void Exclude(int do_id, DoStatus why);
  std::optional<std::string> Require(Phase p) const;

  ContractConfig config_;
  const PowersOfAlpha& pp_;
  RandomStream challenge_rng_;
  ContractState state_;
  GasMeter gas_;
  std::vector<TxRecord> log_;
  std::uint64_t pending_gas_ = 0;
};

}  // namespace gradmarket

#endif  // GRADMARKET_CONTRACT_H_
