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

#ifndef GRADMARKET_CONFIG_H_
#define GRADMARKET_CONFIG_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradmarket/contract.h"
#include "gradmarket/perturb.h"

namespace gradmarket {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DoBehavior { kRandomGradient, kNormAttack, kBadShare, kTamperedProof };
enum class ServerBehavior { kCorruptShares, kFalseComplaint };

struct MaliciousDo {
  int id = 0;
  DoBehavior behavior = DoBehavior::kRandomGradient;
  double factor = 2.0;    // norm_attack growth per step
  int target_server = 1;  // bad_share
};

struct MaliciousServer {
  int id = 0;
  ServerBehavior behavior = ServerBehavior::kCorruptShares;
  int target_do = 0;  // false_complaint; 0 accuses every owner
};

/// Which part of the shared vector the norm circuit constrains.
enum class ValidationRange { kGradient, kAll, kGradientLayer };

struct SessionConfig {
  std::vector<int> layer_sizes = {4, 8, 1};
  int num_data_owners = 4;
  int registered_owners = 0;  // 0: all owners register
  int num_servers = 5;
  int threshold = 1;
  std::uint64_t rho = 0;  // 0: chosen by the model owner from its own data
  double rho_slack = 6.0;
  int scale_bits = 6;
  std::uint64_t deposit = 100;
  int samples_per_owner = 64;
  int mo_samples = 64;
  int test_samples = 256;
  bool validate = true;
  ValidationRange validation_range = ValidationRange::kGradient;
  int validation_layer = 0;
  double learning_rate = 0.05;
  int iterations = 30;
  double mask_additive_std = 0.1;
  double noise_std = 30.0;
  double teacher_scale = 1.0;
  double student_scale = 0.5;
  double label_noise = 0.05;
  std::vector<MaliciousDo> malicious_dos;
  std::vector<MaliciousServer> malicious_servers;
  GasTable gas;
  std::uint64_t seed = 1;
  int register_timeout_rounds = 3;

  /// Throws ConfigError on inconsistent values.
  void Validate() const;
  /// True when the malicious servers fit within the decoding radius.
  bool WithinCorruptionBudget() const;
};

/// Defaults with a 39-20-1 model, so the shared vector has m = 2400 entries.
SessionConfig DefaultGasCompareConfig();

/// Unknown keys are rejected. Missing keys keep their defaults.
SessionConfig ParseConfig(const std::string& json_text);
SessionConfig LoadConfig(const std::string& path);
std::string ConfigToJson(const SessionConfig& config);

const char* DoBehaviorName(DoBehavior b);
const char* ServerBehaviorName(ServerBehavior b);

/// {"layer_sizes": [...], "weights": [[row-major layer 0], ...]}
std::string ModelToJson(const Mlp<double>& model);
Mlp<double> ModelFromJson(const std::string& json_text);
/// {"input_dim": n0, "output_dim": nL, "x": [row-major], "y": [row-major]}
std::string DatasetToJson(const Dataset<double>& data);
Dataset<double> DatasetFromJson(const std::string& json_text);

}  // namespace gradmarket

#endif  // GRADMARKET_CONFIG_H_
