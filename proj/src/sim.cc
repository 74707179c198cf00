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

#include "gradmarket/sim.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gradmarket/circuit.h"
#include "gradmarket/contract.h"
#include "gradmarket/fixed_point.h"
#include "gradmarket/merkle.h"
#include "gradmarket/shamir.h"
#include "gradmarket/snip.h"
#include "json.hpp"

namespace gradmarket {
namespace {

std::uint64_t SessionSeed(std::uint64_t seed, int iteration) {
  return seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(iteration);
}

std::string DoName(int n) { return "do." + std::to_string(n); }
std::string ServerName(int i) { return "server." + std::to_string(i); }

void Expect(const TxResult& r, const char* method) {
  if (!r) throw ProtocolError(std::string(method) + " rejected: " + r.error);
}

Dataset<double> Sample(const Mlp<double>& teacher, int rows, double noise, RandomStream& rng) {
  const int in = teacher.sizes.front();
  const int out = teacher.sizes.back();
  Dataset<double> d{Matrix<double>(rows, in), Matrix<double>(rows, out)};
  for (Eigen::Index k = 0; k < d.x.size(); ++k) d.x.data()[k] = rng.Uniform(-1.0, 1.0);
  for (int s = 0; s < rows; ++s) {
    const auto ys = Forward<double>(teacher.weights, d.x.row(s).transpose());
    for (int k = 0; k < out; ++k) d.y(s, k) = ys.back()[k] + rng.Normal(0.0, noise);
  }
  return d;
}

std::vector<std::uint8_t> SerializeModel(const EncryptedModel<double>& enc) {
  std::vector<double> flat;
  for (const auto& w : enc.weights) flat.insert(flat.end(), w.data(), w.data() + w.size());
  flat.insert(flat.end(), enc.ra.data(), enc.ra.data() + enc.ra.size());
  return EncodeDoubles(flat);
}

/// Sum of squares of the signed quantized entries at `indices`, saturating.
u128 QuantizedNormSquared(const FieldVector& q, std::span<const std::size_t> indices) {
  u128 sum = 0;
  const u128 cap = ~u128{0} >> 1;
  for (std::size_t k : indices) {
    const __int128 v = ToSigned(q[k]);
    const u128 a = static_cast<u128>(v < 0 ? -v : v);
    if (a > (u128{1} << 62)) return cap;
    sum += a * a;
    if (sum > cap) return cap;
  }
  return sum;
}

struct OwnerActor {
  int id = 0;
  RandomStream rng;
  std::optional<MaliciousDo> adversary;
  FieldVector q;
  std::vector<ShareVector> sent;
  VectorCommitment commitment;
};

struct ServerActor {
  int id = 0;
  RandomStream rng;
  std::optional<MaliciousServer> adversary;
  std::map<int, ShareVector> held;
  std::map<int, ProverPackage> packages;

  bool corrupt() const {
    return adversary && adversary->behavior == ServerBehavior::kCorruptShares;
  }
};

}  // namespace

SyntheticTask SyntheticTask::Generate(const SessionConfig& config) {
  config.Validate();
  RandomStream rng(config.seed, "data");
  SyntheticTask t;
  t.teacher = Mlp<double>::Random(config.layer_sizes, config.teacher_scale, rng);
  t.initial = Mlp<double>::Random(config.layer_sizes, config.student_scale, rng);
  for (int n = 0; n < config.num_data_owners; ++n) {
    t.shards.push_back(Sample(t.teacher, config.samples_per_owner, config.label_noise, rng));
  }
  t.mo_data = Sample(t.teacher, config.mo_samples, config.label_noise, rng);
  t.test = Sample(t.teacher, config.test_samples, config.label_noise, rng);
  return t;
}

PowersOfAlpha SessionSetup(const SessionConfig& config) {
  RandomStream rng(config.seed, "contract.setup");
  return CommitSetup(EncryptedGradientLength(config.layer_sizes), rng);
}

std::vector<std::size_t> ValidatedIndices(const SessionConfig& config) {
  switch (config.validation_range) {
    case ValidationRange::kGradient: return GradientBlockIndices(config.layer_sizes);
    case ValidationRange::kGradientLayer:
      return GradientBlockIndices(config.layer_sizes, config.validation_layer);
    case ValidationRange::kAll: {
      std::vector<std::size_t> all(EncryptedGradientLength(config.layer_sizes));
      std::iota(all.begin(), all.end(), std::size_t{0});
      return all;
    }
  }
  return {};
}

SessionResult RunSession(const SessionConfig& config, const Mlp<double>& model,
                         std::span<const Dataset<double>> shards, const Dataset<double>& mo_data,
                         const PowersOfAlpha& pp, int iteration, FullyOnChainContract* baseline) {
  config.Validate();
  const auto& sizes = config.layer_sizes;
  const int num_owners = config.num_data_owners;
  const int k = config.num_servers;
  const int t = config.threshold;
  if (static_cast<int>(shards.size()) != num_owners) {
    throw std::invalid_argument("need one shard per data owner");
  }
  const std::size_t m = EncryptedGradientLength(sizes);
  if (pp.size() < m) throw std::invalid_argument("commitment parameters too short");
  const std::uint64_t seed = SessionSeed(config.seed, iteration);
  const FixedPointCodec codec(config.scale_bits);

  SessionResult result;
  SessionReport& rep = result.report;
  rep.iteration = iteration;
  rep.num_params = ParameterCount(sizes);
  rep.m = m;
  rep.within_corruption_budget = config.WithinCorruptionBudget();
  auto event = [&rep](std::string s) { rep.events.push_back(std::move(s)); };
  if (!rep.within_corruption_budget) event("malicious servers exceed the decoding radius");

  // Step 1: the model owner masks and announces the model.
  RandomStream mo_rng(seed, "mo");
  const auto masks = MaskSet<double>::Sample(sizes, mo_rng, config.mask_additive_std);
  const auto enc = EncryptModel(model, masks);
  const auto model_bytes = SerializeModel(enc);
  const Digest root = MerkleRoot(model_bytes);
  rep.model_root = ToHex(root);

  ContractConfig ccfg;
  ccfg.num_servers = k;
  ccfg.threshold = t;
  ccfg.deposit = config.deposit;
  for (int n = 1; n <= num_owners; ++n) ccfg.whitelist.push_back(n);
  ccfg.register_timeout_rounds = config.register_timeout_rounds;
  ccfg.validate = config.validate;
  ccfg.gas = config.gas;
  Contract contract(ccfg, pp, RandomStream(seed, "contract"));

  auto finish_report = [&]() {
    const auto& st = contract.state();
    rep.registered.assign(st.registered.begin(), st.registered.end());
    rep.validity_set.assign(st.valid.begin(), st.valid.end());
    for (const auto& [n, s] : st.status) rep.status[DoName(n)] = DoStatusName(s);
    rep.balances = st.balances;
    rep.gas_total = contract.gas().total();
    rep.gas_per_method = contract.gas().per_method();
    rep.word_count = contract.word_count();
    rep.expected_word_count = Contract::ExpectedWordCount(
        static_cast<int>(st.registered.size()), t, config.validate);
    if (st.challenge) rep.challenge = st.challenge->ToDecimal();
    for (const auto& tx : contract.log()) rep.transactions.push_back(tx.ToJsonLine());
  };

  Expect(contract.Start(root, config.samples_per_owner, num_owners), "start");
  if (baseline) baseline->Start(root);
  const int registering = config.registered_owners == 0 ? num_owners : config.registered_owners;
  for (int n = 1; n <= registering; ++n) {
    Expect(contract.Register(n), "register");
    if (baseline) baseline->Register(n);
  }
  while (contract.state().phase == Phase::kRegister) Expect(contract.Timeout(), "timeout");
  if (contract.state().phase == Phase::kFinished) {
    event("no data owner registered before the timeout");
    rep.failure = "no registrations";
    finish_report();
    return result;
  }
  const std::set<int> registered = contract.state().registered;
  for (int n : registered) {
    if (MerkleRoot(model_bytes) != *contract.state().model_root) {
      event(DoName(n) + " found a model root mismatch");
    }
  }

  const auto indices = ValidatedIndices(config);
  rep.m_validated = indices.size();
  std::uint64_t rho = config.rho;
  if (rho == 0) {
    const auto own = ComputeEncryptedGradient(enc, mo_data).Flatten();
    const u128 norm = QuantizedNormSquared(codec.Quantize(own), indices);
    rho = static_cast<std::uint64_t>(std::ceil(config.rho_slack * static_cast<double>(norm))) +
          indices.size();
  }
  rep.rho = rho;

  // Step 2: owners compute, share and commit.
  std::map<int, OwnerActor> owners;
  std::vector<ServerActor> servers;
  for (int i = 1; i <= k; ++i) {
    ServerActor s{i, RandomStream(seed, ServerName(i)), std::nullopt, {}, {}};
    for (const auto& a : config.malicious_servers) {
      if (a.id == i) s.adversary = a;
    }
    servers.push_back(std::move(s));
  }
  for (int n : registered) {
    OwnerActor o{n, RandomStream(seed, DoName(n)), std::nullopt, {}, {}, {}};
    for (const auto& a : config.malicious_dos) {
      if (a.id == n) o.adversary = a;
    }
    std::vector<double> flat = ComputeEncryptedGradient(enc, shards[n - 1]).Flatten();
    if (o.adversary && o.adversary->behavior == DoBehavior::kRandomGradient) {
      for (auto& v : flat) v = o.rng.Normal(0.0, config.noise_std);
    }
    o.q = codec.Quantize(flat);
    if (o.adversary && o.adversary->behavior == DoBehavior::kNormAttack) {
      double scale = 1.0;
      for (int step = 0; step < 4096 && QuantizedNormSquared(o.q, indices) <= rho; ++step) {
        scale *= o.adversary->factor;
        std::vector<double> scaled = flat;
        for (auto& v : scaled) v *= scale;
        o.q = codec.Quantize(scaled);
      }
    }
    const Sharing sharing = ShareSecret(o.q, t, k, o.rng);
    o.commitment = Commit(o.q, sharing.masks, pp);
    o.sent = sharing.shares;
    if (o.adversary && o.adversary->behavior == DoBehavior::kBadShare) {
      o.sent[o.adversary->target_server - 1].values[0] += FieldElement::One();
    }
    Expect(contract.StoreCommitment(n, o.commitment), "store_commitment");
    for (int i = 0; i < k; ++i) servers[i].held[n] = o.sent[i];
    if (baseline) baseline->SubmitGradient(n, o.q);
    owners.emplace(n, std::move(o));
  }

  // Servers check their shares against the posted commitments.
  for (auto& s : servers) {
    for (int n : registered) {
      const bool ok = VerifyShare(s.held.at(n), contract.state().commitments.at(n), pp);
      const bool accuse = !ok || (s.adversary &&
                                  s.adversary->behavior == ServerBehavior::kFalseComplaint &&
                                  (s.adversary->target_do == 0 || s.adversary->target_do == n));
      if (accuse) {
        Expect(contract.Complain(s.id, n), "complain");
        event(ServerName(s.id) + " complained about " + DoName(n));
      }
    }
  }
  const auto pending = contract.state().pending_complaints;
  for (const auto& [n, accusers] : pending) {
    for (int i : accusers) {
      const bool was_valid = contract.state().valid.contains(n);
      Expect(contract.ResolveComplaint(n, i, owners.at(n).sent[i - 1]), "resolve_complaint");
      if (contract.state().false_complainers.contains(i) && contract.state().valid.contains(n)) {
        event("complaint by " + ServerName(i) + " about " + DoName(n) + " dismissed");
      } else if (was_valid && !contract.state().valid.contains(n)) {
        event("complaint by " + ServerName(i) + " about " + DoName(n) + " upheld");
      }
    }
  }
  Expect(contract.CloseSharing(), "close_sharing");
  Expect(contract.BeginValidation(), "begin_validation");

  // Step 3: validation.
  Circuit circuit;
  if (config.validate) {
    circuit = BuildNormCircuit(indices, m, rho, ZeroNorm::kAccept);
    rep.mult_gates = circuit.num_mul();
    Expect(contract.RevealCircuit(circuit), "reveal_circuit");
    const std::set<int> candidates = contract.state().valid;
    for (int n : candidates) {
      auto& o = owners.at(n);
      SnipWitness w = BuildWitness(o.q, circuit, o.rng);
      if (o.adversary && o.adversary->behavior == DoBehavior::kTamperedProof) {
        w.h.back() += FieldElement::One();
      }
      auto packages = ShareWitness(w, o.sent, t, o.rng);
      for (int i = 0; i < k; ++i) servers[i].packages[n] = std::move(packages[i]);
    }
    Expect(contract.SampleChallenge(), "sample_challenge");
    const FieldElement r = *contract.state().challenge;
    for (int n : candidates) {
      std::vector<WireShares> wires;
      FieldVector d_all(k), e_all(k);
      for (int i = 0; i < k; ++i) {
        auto& s = servers[i];
        wires.push_back(SnipServerEval(s.packages.at(n), circuit));
        const BeaverOpening op = SnipOpen(wires.back(), s.packages.at(n), r);
        d_all[i] = s.corrupt() ? s.rng.UniformField() : op.d;
        e_all[i] = s.corrupt() ? s.rng.UniformField() : op.e;
      }
      for (int i = 0; i < k; ++i) {
        auto& s = servers[i];
        auto verdict = SnipServerCheck(wires[i], s.packages.at(n), r, d_all, e_all, t);
        if (s.corrupt()) {
          verdict = ServerVerdictShares{s.rng.UniformField(), s.rng.UniformField()};
          event(ServerName(s.id) + " submitted corrupted validation shares for " + DoName(n));
        } else if (!verdict) {
          event(ServerName(s.id) + " could not decode the openings of " + DoName(n));
        }
        Expect(contract.SubmitVerdict(s.id, n, verdict), "submit_verdict");
      }
    }
    if (baseline) baseline->Validate(circuit);
  }
  const std::set<int> before_validation = contract.state().valid;
  Expect(contract.FinalizeValidation(), "finalize_validation");
  for (int n : before_validation) {
    if (!contract.state().valid.contains(n)) event(DoName(n) + " failed validation");
  }

  // Step 4: payment and reconstruction.
  Expect(contract.Pay(), "pay");
  const std::set<int> valid = contract.state().valid;
  if (valid.empty()) {
    event("validity set is empty; deposit refunded");
    Expect(contract.Acknowledge(), "acknowledge");
    if (baseline) {
      baseline->Pay();
      baseline->Aggregate();
    }
    rep.failure = "empty validity set";
    finish_report();
    return result;
  }
  Expect(contract.AggregateCommitment(), "aggregate_commitment");
  const VectorCommitment& cv = *contract.state().aggregate;

  std::vector<ShareVector> passing;
  for (auto& s : servers) {
    ShareVector agg{static_cast<std::uint32_t>(s.id), FieldVector(m)};
    for (int n : valid) agg.values += s.held.at(n).values;
    if (s.corrupt()) {
      agg.values = s.rng.UniformFieldVector(m);
      event(ServerName(s.id) + " sent a corrupted aggregate share");
    }
    if (VerifyShare(agg, cv, pp)) {
      passing.push_back(std::move(agg));
      rep.aggregate_passing_servers.push_back(s.id);
    } else {
      event("aggregate share of " + ServerName(s.id) + " failed the commitment check");
    }
  }
  if (static_cast<int>(passing.size()) < t + 1) {
    rep.failure = "too few aggregate shares passed the commitment check";
    Expect(contract.Acknowledge(), "acknowledge");
    finish_report();
    return result;
  }
  const FieldVector sum = Reconstruct(passing, t);
  rep.aggregate_digest = ToHex(Sha256(EncodeElements(sum)));
  std::vector<double> mean = codec.Dequantize(sum);
  for (auto& v : mean) v /= static_cast<double>(valid.size());
  const auto avg = EncryptedGradient<double>::Unflatten(sizes, mean);
  auto gradient = DecryptAggregate(sizes, avg, masks);
  Expect(contract.Acknowledge(), "acknowledge");
  if (baseline) {
    baseline->Pay();
    baseline->Aggregate();
  }

  for (const auto& g : gradient) rep.gradient.insert(rep.gradient.end(), g.data(), g.data() + g.size());
  std::vector<Dataset<double>> honest;
  for (int n : valid) {
    if (!owners.at(n).adversary) honest.push_back(shards[n - 1]);
  }
  if (!honest.empty()) {
    const auto plain = PlainGradient(model, Concatenate<double>(honest));
    double err = 0;
    for (std::size_t l = 0; l < plain.size(); ++l) {
      err = std::max(err, (plain[l] - gradient[l]).cwiseAbs().maxCoeff());
    }
    rep.gradient_max_abs_error = err;
  }
  rep.success = true;
  result.gradient = std::move(gradient);
  finish_report();
  return result;
}

SessionReport RunSession(const SessionConfig& config) {
  const SyntheticTask task = SyntheticTask::Generate(config);
  const PowersOfAlpha pp = SessionSetup(config);
  return RunSession(config, task.initial, task.shards, task.mo_data, pp).report;
}

std::string TrainingResult::CurveCsv() const {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,mse\n";
  for (std::size_t i = 0; i < mse.size(); ++i) out << i + 1 << "," << mse[i] << "\n";
  return out.str();
}

TrainingResult RunTraining(const SessionConfig& config) {
  const SyntheticTask task = SyntheticTask::Generate(config);
  const PowersOfAlpha pp = SessionSetup(config);
  TrainingResult tr;
  tr.model = task.initial;
  tr.initial_mse = MeanSquaredError(tr.model, task.test);
  for (int it = 0; it < config.iterations; ++it) {
    SessionResult s = RunSession(config, tr.model, task.shards, task.mo_data, pp, it);
    if (s.gradient) {
      for (std::size_t l = 0; l < tr.model.weights.size(); ++l) {
        tr.model.weights[l] -= config.learning_rate * (*s.gradient)[l];
      }
    }
    tr.mse.push_back(MeanSquaredError(tr.model, task.test));
    tr.validity_sizes.push_back(s.report.validity_set.size());
    tr.last = std::move(s.report);
  }
  tr.last.initial_mse = tr.initial_mse;
  tr.last.loss_curve = tr.mse;
  tr.last.validity_set_sizes = tr.validity_sizes;
  return tr;
}

GasComparison RunGasCompare(const SessionConfig& config) {
  const SyntheticTask task = SyntheticTask::Generate(config);
  const PowersOfAlpha pp = SessionSetup(config);
  FullyOnChainContract baseline(config.gas, config.deposit);
  const SessionResult s = RunSession(config, task.initial, task.shards, task.mo_data, pp, 0, &baseline);
  GasComparison g;
  g.m = s.report.m;
  g.offchain_total = s.report.gas_total;
  g.offchain_per_method = s.report.gas_per_method;
  g.offchain_words = s.report.word_count;
  g.baseline_total = baseline.gas().total();
  g.baseline_per_method = baseline.gas().per_method();
  g.baseline_words = baseline.word_count();
  return g;
}

std::string SessionReport::ToJson() const {
  nlohmann::ordered_json j;
  j["success"] = success;
  if (!failure.empty()) j["failure"] = failure;
  j["iteration"] = iteration;
  j["num_params"] = num_params;
  j["m"] = m;
  j["m_validated"] = m_validated;
  j["rho"] = rho;
  j["mult_gates"] = mult_gates;
  j["within_corruption_budget"] = within_corruption_budget;
  j["model_root"] = model_root;
  j["challenge"] = challenge;
  j["registered"] = registered;
  j["validity_set"] = validity_set;
  j["status"] = status;
  j["balances"] = balances;
  j["gas"] = {{"total", gas_total}, {"per_method", gas_per_method}};
  j["word_count"] = word_count;
  j["expected_word_count"] = expected_word_count;
  j["aggregate_passing_servers"] = aggregate_passing_servers;
  j["aggregate_digest"] = aggregate_digest;
  j["gradient"] = gradient;
  j["gradient_max_abs_error"] =
      gradient_max_abs_error ? nlohmann::ordered_json(*gradient_max_abs_error) : nullptr;
  if (initial_mse) j["initial_mse"] = *initial_mse;
  if (!loss_curve.empty()) j["loss_curve"] = loss_curve;
  if (!validity_set_sizes.empty()) j["validity_set_sizes"] = validity_set_sizes;
  j["events"] = events;
  nlohmann::ordered_json txs = nlohmann::ordered_json::array();
  for (const auto& line : transactions) txs.push_back(nlohmann::ordered_json::parse(line));
  j["transactions"] = txs;
  return j.dump(2);
}

std::string GasComparison::ToJson(bool baseline_breakdown) const {
  nlohmann::ordered_json j;
  j["m"] = m;
  j["offchain"] = {{"total", offchain_total}, {"per_method", offchain_per_method},
                   {"word_count", offchain_words}};
  j["baseline"] = {{"total", baseline_total}, {"word_count", baseline_words}};
  if (baseline_breakdown) j["baseline"]["per_method"] = baseline_per_method;
  j["ratio"] = ratio();
  return j.dump(2);
}

}  // namespace gradmarket
