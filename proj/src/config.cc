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

#include "gradmarket/config.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gradmarket {
namespace {

using nlohmann::json;

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void RejectUnknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(std::string("unknown key '") + key + "' in " + where);
  }
}

DoBehavior DoBehaviorFrom(const std::string& s) {
  if (s == "random_gradient") return DoBehavior::kRandomGradient;
  if (s == "norm_attack") return DoBehavior::kNormAttack;
  if (s == "bad_share") return DoBehavior::kBadShare;
  if (s == "tampered_proof") return DoBehavior::kTamperedProof;
  throw ConfigError("unknown data owner behavior '" + s + "'");
}

ServerBehavior ServerBehaviorFrom(const std::string& s) {
  if (s == "corrupt_shares") return ServerBehavior::kCorruptShares;
  if (s == "false_complaint") return ServerBehavior::kFalseComplaint;
  throw ConfigError("unknown server behavior '" + s + "'");
}

const char* RangeName(ValidationRange r) {
  switch (r) {
    case ValidationRange::kGradient: return "gradient";
    case ValidationRange::kAll: return "all";
    case ValidationRange::kGradientLayer: return "gradient_layer";
  }
  return "?";
}

ValidationRange RangeFrom(const std::string& s) {
  if (s == "gradient") return ValidationRange::kGradient;
  if (s == "all") return ValidationRange::kAll;
  if (s == "gradient_layer") return ValidationRange::kGradientLayer;
  throw ConfigError("unknown validation_range '" + s + "'");
}

json ToJson(const GasTable& g) {
  return {{"storage_word_write", g.storage_word_write}, {"storage_word_read", g.storage_word_read},
          {"field_op", g.field_op},     {"group_op", g.group_op},
          {"hash_word", g.hash_word},   {"tx_base", g.tx_base}};
}

Matrix<double> FromFlat(const std::vector<double>& v, int rows, int cols, const char* what) {
  if (v.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw ConfigError(std::string(what) + " has the wrong number of entries");
  }
  Matrix<double> m(rows, cols);
  std::copy(v.begin(), v.end(), m.data());
  return m;
}

}  // namespace

const char* DoBehaviorName(DoBehavior b) {
  switch (b) {
    case DoBehavior::kRandomGradient: return "random_gradient";
    case DoBehavior::kNormAttack: return "norm_attack";
    case DoBehavior::kBadShare: return "bad_share";
    case DoBehavior::kTamperedProof: return "tampered_proof";
  }
  return "?";
}

const char* ServerBehaviorName(ServerBehavior b) {
  switch (b) {
    case ServerBehavior::kCorruptShares: return "corrupt_shares";
    case ServerBehavior::kFalseComplaint: return "false_complaint";
  }
  return "?";
}

void SessionConfig::Validate() const {
  if (layer_sizes.size() < 3) throw ConfigError("layer_sizes needs at least three entries");
  for (int n : layer_sizes) {
    if (n < 1) throw ConfigError("layer sizes must be positive");
  }
  if (num_data_owners < 1) throw ConfigError("num_data_owners must be positive");
  if (registered_owners < 0 || registered_owners > num_data_owners) {
    throw ConfigError("registered_owners must be in 0..num_data_owners");
  }
  if (threshold < 1) throw ConfigError("threshold must be at least 1");
  if (num_servers <= threshold + 1) throw ConfigError("need num_servers > threshold + 1");
  if (scale_bits < 0 || scale_bits > 60) throw ConfigError("scale_bits must be in 0..60");
  if (rho_slack <= 0) throw ConfigError("rho_slack must be positive");
  if (samples_per_owner < 1 || mo_samples < 1 || test_samples < 1) {
    throw ConfigError("sample counts must be positive");
  }
  if (iterations < 1) throw ConfigError("iterations must be positive");
  if (register_timeout_rounds < 1) throw ConfigError("register_timeout_rounds must be positive");
  const int layers = static_cast<int>(layer_sizes.size()) - 1;
  if (validation_layer < 0 || validation_layer >= layers) {
    throw ConfigError("validation_layer out of range");
  }
  for (const auto& d : malicious_dos) {
    if (d.id < 1 || d.id > num_data_owners) throw ConfigError("malicious data owner id out of range");
    if (d.behavior == DoBehavior::kBadShare && (d.target_server < 1 || d.target_server > num_servers)) {
      throw ConfigError("bad_share target_server out of range");
    }
    if (d.behavior == DoBehavior::kNormAttack && d.factor <= 1.0) {
      throw ConfigError("norm_attack factor must exceed 1");
    }
  }
  for (const auto& s : malicious_servers) {
    if (s.id < 1 || s.id > num_servers) throw ConfigError("malicious server id out of range");
    if (s.target_do < 0 || s.target_do > num_data_owners) throw ConfigError("target_do out of range");
  }
}

bool SessionConfig::WithinCorruptionBudget() const {
  return static_cast<int>(malicious_servers.size()) <= CorrectionRadius(num_servers, threshold);
}

SessionConfig DefaultGasCompareConfig() {
  SessionConfig c;
  c.layer_sizes = {39, 20, 1};
  return c;
}

SessionConfig ParseConfig(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RejectUnknown(j,
                {"layer_sizes", "num_data_owners", "registered_owners", "num_servers", "threshold",
                 "rho", "rho_slack", "scale_bits", "deposit", "samples_per_owner", "mo_samples",
                 "test_samples", "validate", "validation_range", "validation_layer",
                 "learning_rate", "iterations", "mask_additive_std", "noise_std", "teacher_scale",
                 "student_scale", "label_noise", "adversary", "gas_table", "seed",
                 "register_timeout_rounds"},
                "config");
  SessionConfig c;
  Read(j, "layer_sizes", c.layer_sizes);
  Read(j, "num_data_owners", c.num_data_owners);
  Read(j, "registered_owners", c.registered_owners);
  Read(j, "num_servers", c.num_servers);
  Read(j, "threshold", c.threshold);
  Read(j, "rho", c.rho);
  Read(j, "rho_slack", c.rho_slack);
  Read(j, "scale_bits", c.scale_bits);
  Read(j, "deposit", c.deposit);
  Read(j, "samples_per_owner", c.samples_per_owner);
  Read(j, "mo_samples", c.mo_samples);
  Read(j, "test_samples", c.test_samples);
  Read(j, "validate", c.validate);
  std::string range = RangeName(c.validation_range);
  Read(j, "validation_range", range);
  c.validation_range = RangeFrom(range);
  Read(j, "validation_layer", c.validation_layer);
  Read(j, "learning_rate", c.learning_rate);
  Read(j, "iterations", c.iterations);
  Read(j, "mask_additive_std", c.mask_additive_std);
  Read(j, "noise_std", c.noise_std);
  Read(j, "teacher_scale", c.teacher_scale);
  Read(j, "student_scale", c.student_scale);
  Read(j, "label_noise", c.label_noise);
  Read(j, "seed", c.seed);
  Read(j, "register_timeout_rounds", c.register_timeout_rounds);
  if (j.contains("gas_table")) {
    const json& g = j.at("gas_table");
    RejectUnknown(g, {"storage_word_write", "storage_word_read", "field_op", "group_op",
                      "hash_word", "tx_base"},
                  "gas_table");
    Read(g, "storage_word_write", c.gas.storage_word_write);
    Read(g, "storage_word_read", c.gas.storage_word_read);
    Read(g, "field_op", c.gas.field_op);
    Read(g, "group_op", c.gas.group_op);
    Read(g, "hash_word", c.gas.hash_word);
    Read(g, "tx_base", c.gas.tx_base);
  }
  if (j.contains("adversary")) {
    const json& a = j.at("adversary");
    RejectUnknown(a, {"malicious_dos", "malicious_servers"}, "adversary");
    if (a.contains("malicious_dos")) {
      for (const json& d : a.at("malicious_dos")) {
        RejectUnknown(d, {"id", "behavior", "factor", "target_server"}, "malicious_dos entry");
        MaliciousDo m;
        Read(d, "id", m.id);
        std::string b = "random_gradient";
        Read(d, "behavior", b);
        m.behavior = DoBehaviorFrom(b);
        Read(d, "factor", m.factor);
        Read(d, "target_server", m.target_server);
        c.malicious_dos.push_back(m);
      }
    }
    if (a.contains("malicious_servers")) {
      for (const json& s : a.at("malicious_servers")) {
        RejectUnknown(s, {"id", "behavior", "target_do"}, "malicious_servers entry");
        MaliciousServer m;
        Read(s, "id", m.id);
        std::string b = "corrupt_shares";
        Read(s, "behavior", b);
        m.behavior = ServerBehaviorFrom(b);
        Read(s, "target_do", m.target_do);
        c.malicious_servers.push_back(m);
      }
    }
  }
  c.Validate();
  return c;
}

SessionConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

std::string ConfigToJson(const SessionConfig& c) {
  json dos = json::array();
  for (const auto& d : c.malicious_dos) {
    dos.push_back({{"id", d.id}, {"behavior", DoBehaviorName(d.behavior)}, {"factor", d.factor},
                   {"target_server", d.target_server}});
  }
  json servers = json::array();
  for (const auto& s : c.malicious_servers) {
    servers.push_back({{"id", s.id}, {"behavior", ServerBehaviorName(s.behavior)},
                       {"target_do", s.target_do}});
  }
  nlohmann::ordered_json j;
  j["layer_sizes"] = c.layer_sizes;
  j["num_data_owners"] = c.num_data_owners;
  j["registered_owners"] = c.registered_owners;
  j["num_servers"] = c.num_servers;
  j["threshold"] = c.threshold;
  j["rho"] = c.rho;
  j["rho_slack"] = c.rho_slack;
  j["scale_bits"] = c.scale_bits;
  j["deposit"] = c.deposit;
  j["samples_per_owner"] = c.samples_per_owner;
  j["mo_samples"] = c.mo_samples;
  j["test_samples"] = c.test_samples;
  j["validate"] = c.validate;
  j["validation_range"] = RangeName(c.validation_range);
  j["validation_layer"] = c.validation_layer;
  j["learning_rate"] = c.learning_rate;
  j["iterations"] = c.iterations;
  j["mask_additive_std"] = c.mask_additive_std;
  j["noise_std"] = c.noise_std;
  j["teacher_scale"] = c.teacher_scale;
  j["student_scale"] = c.student_scale;
  j["label_noise"] = c.label_noise;
  j["adversary"] = {{"malicious_dos", dos}, {"malicious_servers", servers}};
  j["gas_table"] = ToJson(c.gas);
  j["seed"] = c.seed;
  j["register_timeout_rounds"] = c.register_timeout_rounds;
  return j.dump(2);
}

std::string ModelToJson(const Mlp<double>& model) {
  json layers = json::array();
  for (const auto& w : model.weights) layers.push_back(std::vector<double>(w.data(), w.data() + w.size()));
  return json{{"layer_sizes", model.sizes}, {"weights", layers}}.dump();
}

Mlp<double> ModelFromJson(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    Mlp<double> m;
    m.sizes = j.at("layer_sizes").get<std::vector<int>>();
    CheckLayerSizes(m.sizes);
    const auto& layers = j.at("weights");
    if (layers.size() + 1 != m.sizes.size()) throw ConfigError("weights do not match layer_sizes");
    for (std::size_t l = 0; l < layers.size(); ++l) {
      m.weights.push_back(FromFlat(layers[l].get<std::vector<double>>(), m.sizes[l + 1],
                                   m.sizes[l], "weight matrix"));
    }
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad model file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad model file: ") + e.what());
  }
}

std::string DatasetToJson(const Dataset<double>& data) {
  return json{{"input_dim", data.x.cols()},
              {"output_dim", data.y.cols()},
              {"x", std::vector<double>(data.x.data(), data.x.data() + data.x.size())},
              {"y", std::vector<double>(data.y.data(), data.y.data() + data.y.size())}}
      .dump();
}

Dataset<double> DatasetFromJson(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    const int in = j.at("input_dim").get<int>();
    const int out = j.at("output_dim").get<int>();
    if (in < 1 || out < 1) throw ConfigError("dataset dimensions must be positive");
    const auto x = j.at("x").get<std::vector<double>>();
    const auto y = j.at("y").get<std::vector<double>>();
    const int rows = static_cast<int>(x.size() / static_cast<std::size_t>(in));
    return {FromFlat(x, rows, in, "x"), FromFlat(y, rows, out, "y")};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad dataset file: ") + e.what());
  }
}

}  // namespace gradmarket
