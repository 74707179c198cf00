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

// Command-line driver: run one session, train, compare gas, or self-test.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gradmarket/config.h"
#include "gradmarket/selftest.h"
#include "gradmarket/sim.h"

namespace {

namespace fs = std::filesystem;
using gradmarket::ConfigError;
using gradmarket::SessionConfig;

constexpr int kOk = 0;
constexpr int kProtocolFailure = 1;
constexpr int kConfigError = 2;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool baseline = false;
};

SessionConfig Load(const Options& o, SessionConfig defaults) {
  SessionConfig c = o.config_path.empty() ? defaults : gradmarket::LoadConfig(o.config_path);
  if (o.seed) c.seed = *o.seed;
  c.Validate();
  return c;
}

void Emit(const Options& o, const std::string& file, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  fs::create_directories(o.out);
  std::ofstream f(fs::path(o.out) / file, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + (fs::path(o.out) / file).string());
  f << text;
  if (!text.empty() && text.back() != '\n') f << "\n";
}

int Run(const Options& o) {
  const SessionConfig c = Load(o, SessionConfig{});
  const auto report = gradmarket::RunSession(c);
  Emit(o, "report.json", report.ToJson());
  if (!report.success) {
    std::cerr << "session failed: " << report.failure << "\n";
    return kProtocolFailure;
  }
  return kOk;
}

int Train(const Options& o) {
  const SessionConfig c = Load(o, SessionConfig{});
  const auto tr = gradmarket::RunTraining(c);
  Emit(o, "report.json", tr.last.ToJson());
  if (!o.out.empty()) {
    Emit(o, "training.csv", tr.CurveCsv());
    Emit(o, "model.json", gradmarket::ModelToJson(tr.model));
  }
  std::cerr << "final mse " << tr.mse.back() << " (initial " << tr.initial_mse << ")\n";
  return kOk;
}

int GasCompare(const Options& o) {
  const SessionConfig c = Load(o, gradmarket::DefaultGasCompareConfig());
  const auto g = gradmarket::RunGasCompare(c);
  Emit(o, "gas.json", g.ToJson(o.baseline));
  std::cerr << "m=" << g.m << " offchain=" << g.offchain_total << " baseline=" << g.baseline_total
            << " ratio=" << g.ratio() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient marketplace session simulator"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Session config JSON");
    sub->add_option("--seed", o.seed, "Override the config seed");
    sub->add_option("--out", o.out, "Output directory (default: stdout)");
  };
  CLI::App* run = app.add_subcommand("run", "Run one trading session");
  CLI::App* train = app.add_subcommand("train", "Train the model over repeated sessions");
  CLI::App* gas = app.add_subcommand("gas-compare", "Compare gas against a fully on-chain design");
  CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");
  add_common(run);
  add_common(train);
  add_common(gas);
  gas->add_flag("--baseline", o.baseline, "Include the on-chain baseline's per-method gas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*run) return Run(o);
    if (*train) return Train(o);
    if (*gas) return GasCompare(o);
    if (*selftest) return gradmarket::RunSelfTest(std::cout) ? kOk : kProtocolFailure;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const gradmarket::ProtocolError& e) {
    std::cerr << "protocol failure: " << e.what() << "\n";
    return kProtocolFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProtocolFailure;
  }
  return kConfigError;
}
