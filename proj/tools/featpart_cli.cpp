// Copyright 2026 The featpart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// featpart command line tool.
//
// Exit codes: 0 ok, 1 oracle-check found a certificate above the oracle,
// 2 data or training error, 3 invalid configuration, 4 capacity error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "featpart/dataset.hpp"
#include "featpart/ensemble.hpp"
#include "featpart/error.hpp"
#include "featpart/experiment.hpp"
#include "featpart/metrics.hpp"
#include "featpart/oracle.hpp"
#include "featpart/partition.hpp"

namespace {

using featpart::ErrorKind;
using featpart::Fail;

// Options shared by `train` and `evaluate`; each maps to a config key.
const std::vector<std::string> kConfigKeys = {
    "data",      "test_data",     "target",        "delimiter", "task",
    "partition", "submodels",     "phi",           "learner",   "learning_rate",
    "iterations", "ridge",        "mode",          "decision",  "topk",
    "interval",  "xi",            "test_fraction", "max_psi",   "seed",
    "threads"};

struct ConfigOptions {
  std::string config_file;
  std::map<std::string, std::string> values;
};

void AddConfigOptions(CLI::App* app, ConfigOptions& opts) {
  app->add_option("--config", opts.config_file, "key = value config file");
  for (const auto& key : kConfigKeys) {
    std::string flag = "--" + key;
    for (auto& c : flag) {
      if (c == '_') c = '-';
    }
    app->add_option_function<std::string>(
        flag, [&opts, key](const std::string& v) { opts.values[key] = v; },
        "config key '" + key + "'");
  }
}

featpart::ExperimentConfig BuildConfig(const ConfigOptions& opts) {
  featpart::ExperimentConfig config;
  if (!opts.config_file.empty()) config = featpart::LoadConfig(opts.config_file);
  // `task` first: it resets the mode and learner defaults.
  if (auto it = opts.values.find("task"); it != opts.values.end()) {
    featpart::SetConfigValue(config, it->first, it->second);
  }
  for (const auto& [key, value] : opts.values) {
    if (key != "task") featpart::SetConfigValue(config, key, value);
  }
  return config;
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kDataError, "cannot write " + path);
  out << text;
}

int RunPartition(std::size_t d, std::size_t submodels, const std::string& kind,
                 std::size_t phi, std::optional<std::uint64_t> seed,
                 const std::string& out) {
  featpart::FeaturePartition p;
  const auto strategy = featpart::ParsePartitionStrategy(kind);
  if (strategy != featpart::PartitionStrategy::kStrided && !seed) {
    Fail(ErrorKind::kInvalidConfiguration,
         "--seed is required for the " + kind + " partition");
  }
  featpart::ExperimentConfig c;
  c.partition = strategy;
  c.submodels = submodels;
  c.phi = phi;
  c.seed = seed;
  p = featpart::BuildPartition(c, d);
  WriteText(out, featpart::PartitionToJson(p) + "\n");
  return 0;
}

int RunTrain(const ConfigOptions& opts, const std::string& out) {
  featpart::ExperimentConfig config = BuildConfig(opts);
  // Training reads one file whole, so only partition and instance hashing
  // are randomized.
  config.test_data = config.data;
  config.Validate();
  const featpart::Dataset data = featpart::LoadCsv(config.data, config.schema);
  const featpart::FeaturePartition partition =
      featpart::BuildPartition(config, data.d());
  const featpart::Ensemble ensemble = featpart::TrainEnsemble(
      data, partition, config.learner, config.mode, config.seed.value_or(0),
      config.threads);
  featpart::SaveEnsemble(ensemble, out, data.label_names);
  std::cout << "trained " << ensemble.size() << " submodels ("
            << featpart::EnsembleModeName(ensemble.mode()) << ") on "
            << data.n() << " rows; bundle written to " << out << "\n";
  return 0;
}

int RunCertify(const std::string& model, const ConfigOptions& opts,
               const std::string& out) {
  featpart::ExperimentConfig config = BuildConfig(opts);
  std::vector<std::string> labels;
  const featpart::Ensemble ensemble = featpart::LoadEnsemble(model, &labels);
  config.schema.task = ensemble.mode() == featpart::EnsembleMode::kRegression
                           ? featpart::TaskKind::kRegression
                           : featpart::TaskKind::kClassification;
  const featpart::Dataset data = featpart::LoadCsv(
      config.data, config.schema,
      config.schema.task == featpart::TaskKind::kClassification ? &labels
                                                                : nullptr);
  const featpart::EvaluationReport report =
      featpart::Evaluate(ensemble, data, config);
  featpart::WriteReport(report, out);
  std::cout << featpart::SummaryToJson(report.summary) << "\n";
  return 0;
}

int RunEvaluate(const ConfigOptions& opts, const std::string& out) {
  const featpart::EvaluationReport report =
      featpart::RunExperiment(BuildConfig(opts));
  featpart::WriteReport(report, out);
  std::cout << featpart::SummaryToJson(report.summary) << "\n";
  return 0;
}

int RunOracleCheck(const std::string& method, int max_t, int max_labels,
                   int max_k, std::size_t samples, int phi,
                   std::optional<std::uint64_t> seed, const std::string& csv) {
  featpart::OracleLimits limits;
  std::vector<featpart::SweepSummary> sweeps;
  const bool sampled = method == "runoff" || method == "overlap" ||
                       method == "all";
  if (sampled && !seed) {
    Fail(ErrorKind::kInvalidConfiguration,
         "--seed is required for sampled oracle sweeps");
  }
  if (method == "plurality" || method == "all") {
    sweeps.push_back(featpart::SweepPlurality(max_t, max_labels, limits));
  }
  if (method == "topk" || method == "all") {
    sweeps.push_back(featpart::SweepTopK(max_t, max_labels, max_k, limits));
  }
  if (method == "runoff" || method == "all") {
    sweeps.push_back(
        featpart::SweepRunoff(samples, max_t, max_labels, *seed, limits));
  }
  if (method == "overlap" || method == "all") {
    sweeps.push_back(featpart::SweepOverlap(samples, phi, max_t, max_labels,
                                            featpart::DeriveSeed(*seed, 1),
                                            limits));
  }
  if (sweeps.empty()) {
    Fail(ErrorKind::kInvalidConfiguration, "unknown oracle method " + method);
  }
  featpart::SweepSummary merged;
  for (auto& s : sweeps) {
    merged.violations += s.violations;
    merged.equal += s.equal;
    merged.rows.insert(merged.rows.end(), s.rows.begin(), s.rows.end());
  }
  if (!csv.empty()) {
    std::ostringstream text;
    featpart::WriteSweepCsv(merged, text);
    WriteText(csv, text.str());
  }
  std::cout << "profiles=" << merged.rows.size()
            << " violations=" << merged.violations
            << " equal=" << merged.equal << "\n";
  return merged.violations == 0 ? 0 : 1;
}

int RunEnvelope(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<featpart::Curve> curves;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) Fail(ErrorKind::kDataError, "cannot open " + path);
    curves.push_back(featpart::ReadCurveCsv(in));
  }
  std::ostringstream text;
  featpart::WriteCurveCsv(featpart::Envelope(curves), text);
  WriteText(out, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"featpart: certified feature-partition ensembles"};
  app.require_subcommand(1);

  auto* partition = app.add_subcommand("partition", "write a feature partition");
  std::size_t d = 0;
  std::size_t submodels = 5;
  std::size_t phi = 1;
  std::string kind = "strided";
  std::string out;
  std::optional<std::uint64_t> seed;
  partition->add_option("--d", d, "number of features")->required();
  partition->add_option("--submodels,-T", submodels, "number of submodels");
  partition->add_option("--strategy", kind, "strided | random | overlapping");
  partition->add_option("--phi", phi, "spread degree (overlapping)");
  partition->add_option("--seed", seed, "seed for random strategies");
  partition->add_option("--out", out, "output JSON (default stdout)");

  ConfigOptions train_opts;
  auto* train = app.add_subcommand("train", "train an ensemble bundle");
  AddConfigOptions(train, train_opts);
  std::string bundle;
  train->add_option("--out", bundle, "bundle directory")->required();

  ConfigOptions certify_opts;
  auto* certify = app.add_subcommand("certify", "certify a dataset");
  std::string model;
  std::string report_dir;
  certify->add_option("--model", model, "bundle directory")->required();
  AddConfigOptions(certify, certify_opts);
  certify->add_option("--out", report_dir, "report directory")->required();

  ConfigOptions eval_opts;
  auto* evaluate =
      app.add_subcommand("evaluate", "split, train and certify in one run");
  AddConfigOptions(evaluate, eval_opts);
  std::string eval_dir;
  evaluate->add_option("--out", eval_dir, "report directory")->required();

  auto* oracle = app.add_subcommand("oracle-check",
                                    "compare certificates with brute force");
  std::string method = "all";
  int max_t = 7;
  int max_labels = 4;
  int max_k = 3;
  std::size_t samples = 1000;
  int oracle_phi = 2;
  std::optional<std::uint64_t> oracle_seed;
  std::string csv;
  oracle->add_option("--method", method,
                     "plurality | runoff | topk | overlap | all");
  oracle->add_option("--max-submodels", max_t, "largest T (or phi*T)");
  oracle->add_option("--max-labels", max_labels, "largest |Y|");
  oracle->add_option("--max-k", max_k, "largest k for top-k");
  oracle->add_option("--samples", samples, "random profiles per sampled sweep");
  oracle->add_option("--phi", oracle_phi, "spread degree for overlap");
  oracle->add_option("--seed", oracle_seed, "seed for sampled sweeps");
  oracle->add_option("--csv", csv, "sweep CSV output");

  auto* envelope =
      app.add_subcommand("envelope", "pointwise max of certified curves");
  std::vector<std::string> curves;
  std::string envelope_out;
  envelope->add_option("curves", curves, "curve.csv files")->required();
  envelope->add_option("--out", envelope_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : featpart::ExitCodeFor(ErrorKind::kInvalidConfiguration);
  }

  try {
    if (*partition) return RunPartition(d, submodels, kind, phi, seed, out);
    if (*train) return RunTrain(train_opts, bundle);
    if (*certify) return RunCertify(model, certify_opts, report_dir);
    if (*evaluate) return RunEvaluate(eval_opts, eval_dir);
    if (*oracle) {
      return RunOracleCheck(method, max_t, max_labels, max_k, samples,
                            oracle_phi, oracle_seed, csv);
    }
    if (*envelope) return RunEnvelope(curves, envelope_out);
  } catch (const featpart::Error& e) {
    std::cerr << "featpart: " << featpart::ErrorKindName(e.kind()) << ": "
              << e.what() << "\n";
    return featpart::ExitCodeFor(e.kind());
  }
  return 0;
}
