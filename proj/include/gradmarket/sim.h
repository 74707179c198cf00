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

#ifndef GRADMARKET_SIM_H_
#define GRADMARKET_SIM_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradmarket/baseline.h"
#include "gradmarket/commit.h"
#include "gradmarket/config.h"
#include "gradmarket/perturb.h"

namespace gradmarket {

/// An honest party's transaction was rejected, or the model owner could not
/// reconstruct the aggregate.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Teacher-generated regression data, split into owner shards, a model-owner
/// shard and a test set. Drawn from the "data" stream.
struct SyntheticTask {
  Mlp<double> teacher;
  Mlp<double> initial;
  std::vector<Dataset<double>> shards;
  Dataset<double> mo_data;
  Dataset<double> test;

  static SyntheticTask Generate(const SessionConfig& config);
};

struct SessionReport {
  bool success = false;
  std::string failure;
  int iteration = 0;
  std::size_t num_params = 0;
  std::size_t m = 0;
  std::size_t m_validated = 0;
  std::uint64_t rho = 0;
  std::size_t mult_gates = 0;
  bool within_corruption_budget = true;
  std::string model_root;
  std::string challenge;
  std::vector<int> registered;
  std::vector<int> validity_set;
  std::map<std::string, std::string> status;
  std::map<std::string, std::uint64_t> balances;
  std::uint64_t gas_total = 0;
  std::map<std::string, std::uint64_t> gas_per_method;
  std::size_t word_count = 0;
  std::size_t expected_word_count = 0;
  std::vector<int> aggregate_passing_servers;
  std::string aggregate_digest;
  std::vector<double> gradient;  // decrypted, layer by layer, row-major
  std::optional<double> gradient_max_abs_error;
  std::vector<std::string> events;
  std::vector<std::string> transactions;  // JSON lines
  std::optional<double> initial_mse;
  std::vector<double> loss_curve;
  std::vector<std::size_t> validity_set_sizes;

  std::string ToJson() const;
};

struct SessionResult {
  SessionReport report;
  std::optional<LayerMatrices<double>> gradient;
};

/// Commitment parameters for vectors of the session length, from the
/// "contract.setup" stream.
PowersOfAlpha SessionSetup(const SessionConfig& config);

/// Flat indices of the shared vector that the norm circuit constrains.
std::vector<std::size_t> ValidatedIndices(const SessionConfig& config);

/// One trading session on `model`. `baseline`, when given, is driven with
/// the same gradients for cost comparison.
SessionResult RunSession(const SessionConfig& config, const Mlp<double>& model,
                         std::span<const Dataset<double>> shards, const Dataset<double>& mo_data,
                         const PowersOfAlpha& pp, int iteration = 0,
                         FullyOnChainContract* baseline = nullptr);

/// One session on the synthetic task's initial model.
SessionReport RunSession(const SessionConfig& config);

struct TrainingResult {
  std::vector<double> mse;  // after each iteration
  std::vector<std::size_t> validity_sizes;
  double initial_mse = 0;
  Mlp<double> model;
  SessionReport last;

  /// "iteration,mse" then one row per iteration.
  std::string CurveCsv() const;
};

TrainingResult RunTraining(const SessionConfig& config);

struct GasComparison {
  std::size_t m = 0;
  std::uint64_t offchain_total = 0;
  std::uint64_t baseline_total = 0;
  std::map<std::string, std::uint64_t> offchain_per_method;
  std::map<std::string, std::uint64_t> baseline_per_method;
  std::size_t offchain_words = 0;
  std::size_t baseline_words = 0;

  double ratio() const {
    return baseline_total == 0 ? 0.0 : static_cast<double>(offchain_total) / baseline_total;
  }
  std::string ToJson(bool baseline_breakdown) const;
};

GasComparison RunGasCompare(const SessionConfig& config);

}  // namespace gradmarket

#endif  // GRADMARKET_SIM_H_
