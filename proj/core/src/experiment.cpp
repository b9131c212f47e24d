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

#include "featpart/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "featpart/certify.hpp"
#include "featpart/error.hpp"
#include "featpart/overlap.hpp"
#include "featpart/parallel.hpp"
#include "featpart/rng.hpp"

namespace featpart {
namespace {

using json = nlohmann::json;

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseValue(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    Fail(ErrorKind::kInvalidConfiguration,
         "bad value '" + std::string(text) + "' for '" + std::string(key) +
             "'");
  }
  return value;
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Wraps a stage so that errors say where the pipeline stopped.
template <typename F>
auto Stage(std::string_view name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

std::size_t EnsembleSize(const ExperimentConfig& c) {
  return c.partition == PartitionStrategy::kOverlapping ? c.submodels * c.phi
                                                        : c.submodels;
}

}  // namespace

std::string_view PartitionStrategyName(PartitionStrategy strategy) {
  switch (strategy) {
    case PartitionStrategy::kStrided:
      return "strided";
    case PartitionStrategy::kRandom:
      return "random";
    case PartitionStrategy::kOverlapping:
      return "overlapping";
  }
  return "unknown";
}

PartitionStrategy ParsePartitionStrategy(std::string_view name) {
  if (name == "strided") return PartitionStrategy::kStrided;
  if (name == "random") return PartitionStrategy::kRandom;
  if (name == "overlapping") return PartitionStrategy::kOverlapping;
  Fail(ErrorKind::kInvalidConfiguration,
       "unknown partition strategy '" + std::string(name) + "'");
}

std::string_view DecisionName(Decision decision) {
  return decision == Decision::kPlurality ? "plurality" : "runoff";
}

Decision ParseDecision(std::string_view name) {
  if (name == "plurality") return Decision::kPlurality;
  if (name == "runoff") return Decision::kRunoff;
  Fail(ErrorKind::kInvalidConfiguration,
       "unknown decision function '" + std::string(name) + "'");
}

bool ExperimentConfig::Randomized() const {
  return partition != PartitionStrategy::kStrided || !test_data.has_value() ||
         mode == EnsembleMode::kInstancePartition;
}

void ExperimentConfig::Validate() const {
  auto bad = [](const std::string& msg) {
    Fail(ErrorKind::kInvalidConfiguration, msg);
  };
  if (data.empty()) bad("no data path given");
  if (submodels == 0) bad("T must be at least 1");
  if (phi == 0) bad("phi must be at least 1");
  if (phi > 1 && partition != PartitionStrategy::kOverlapping) {
    bad("phi > 1 needs the overlapping partition");
  }
  if (Randomized() && !seed) {
    bad("a seed is required: this run shuffles rows, features or instances");
  }
  if (!test_data && !(test_fraction > 0.0 && test_fraction < 1.0)) {
    bad("test_fraction must lie strictly between 0 and 1");
  }
  if (max_psi && *max_psi < 0) bad("max_psi must be non-negative");
  const bool regression = schema.task == TaskKind::kRegression;
  if (regression) {
    if (EnsembleSize(*this) % 2 == 0) {
      bad("regression needs an odd number of submodels");
    }
    if (decision != Decision::kPlurality) {
      bad("regression certifies through binary plurality; runoff is not "
          "available");
    }
    if (mode != EnsembleMode::kRegression) {
      bad("regression task needs mode 'regression'");
    }
    if (!topk.empty()) bad("top-k applies to classification only");
    if (!(interval.xi >= 0.0)) bad("xi must be non-negative");
  } else if (mode == EnsembleMode::kRegression) {
    bad("mode 'regression' needs task 'regression'");
  }
  if (regression == IsClassifier(learner.family)) {
    bad("learner '" + std::string(LearnerFamilyName(learner.family)) +
        "' does not fit task '" + std::string(TaskKindName(schema.task)) +
        "'");
  }
  if (partition == PartitionStrategy::kOverlapping &&
      decision != Decision::kPlurality) {
    bad("the overlapping partition is certified for plurality only");
  }
  if (partition == PartitionStrategy::kOverlapping &&
      mode == EnsembleMode::kInstancePartition) {
    bad("instance partitioning is not combined with overlapping subsets");
  }
  for (int k : topk) {
    if (k < 1) bad("top-k values must be positive");
    if (static_cast<std::size_t>(k) >= EnsembleSize(*this)) {
      bad("top-k needs k < T");
    }
  }
}

void SetConfigValue(ExperimentConfig& c, std::string_view key,
                    std::string_view value) {
  const std::string v(value);
  if (key == "data") {
    c.data = v;
  } else if (key == "test_data") {
    c.test_data = v;
  } else if (key == "target") {
    c.schema.target_column = v;
  } else if (key == "delimiter") {
    if (v.size() != 1) {
      Fail(ErrorKind::kInvalidConfiguration, "delimiter must be one char");
    }
    c.schema.delimiter = v[0];
  } else if (key == "task") {
    c.schema.task = ParseTaskKind(v);
    if (c.schema.task == TaskKind::kRegression) {
      c.mode = EnsembleMode::kRegression;
      c.learner.family = LearnerFamily::kLinearLeastSquares;
    }
  } else if (key == "partition") {
    c.partition = ParsePartitionStrategy(v);
  } else if (key == "submodels" || key == "T") {
    c.submodels = ParseValue<std::size_t>(key, value);
  } else if (key == "phi") {
    c.phi = ParseValue<std::size_t>(key, value);
  } else if (key == "learner") {
    c.learner.family = ParseLearnerFamily(v);
  } else if (key == "learning_rate") {
    c.learner.learning_rate = ParseValue<double>(key, value);
  } else if (key == "iterations") {
    c.learner.iterations = ParseValue<int>(key, value);
  } else if (key == "ridge") {
    c.learner.ridge = ParseValue<double>(key, value);
  } else if (key == "mode") {
    c.mode = ParseEnsembleMode(v);
  } else if (key == "decision") {
    c.decision = ParseDecision(v);
  } else if (key == "topk") {
    c.topk.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      c.topk.push_back(ParseValue<int>(key, Trim(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  } else if (key == "interval") {
    c.interval.kind = ParseIntervalKind(v);
  } else if (key == "xi") {
    c.interval.xi = ParseValue<double>(key, value);
  } else if (key == "test_fraction") {
    c.test_fraction = ParseValue<double>(key, value);
  } else if (key == "max_psi") {
    c.max_psi = ParseValue<int>(key, value);
  } else if (key == "seed") {
    c.seed = ParseValue<std::uint64_t>(key, value);
  } else if (key == "threads") {
    c.threads = ParseValue<unsigned>(key, value);
  } else {
    Fail(ErrorKind::kInvalidConfiguration,
         "unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig ParseConfig(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      Fail(ErrorKind::kInvalidConfiguration,
           "config line " + std::to_string(number) + ": expected key = value");
    }
    try {
      SetConfigValue(config, Trim(text.substr(0, eq)),
                     Trim(text.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error(e.kind(),
                  "config line " + std::to_string(number) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    Fail(ErrorKind::kInvalidConfiguration, "cannot open " + path.string());
  }
  return ParseConfig(in);
}

FeaturePartition BuildPartition(const ExperimentConfig& config,
                                std::size_t d) {
  const std::uint64_t seed = config.seed ? DeriveSeed(*config.seed, 11) : 0;
  switch (config.partition) {
    case PartitionStrategy::kStrided:
      return StridedPartition(d, config.submodels);
    case PartitionStrategy::kRandom:
      return RandomPartition(d, config.submodels, seed);
    case PartitionStrategy::kOverlapping: {
      auto [fine, spread] =
          OverlappingPartition(d, config.submodels, config.phi, seed);
      return MakeOverlapping(fine, spread);
    }
  }
  Fail(ErrorKind::kInvalidConfiguration, "unknown partition strategy");
}

EvaluationSummary Summarize(const std::vector<CertificateRecord>& records,
                            int max_psi) {
  EvaluationSummary s;
  s.instances = records.size();
  s.accuracy = Accuracy(records);
  s.median_radius = records.empty() ? Radius::NegativeInfinity()
                                    : MedianCertifiedRobustness(records);
  s.curve = CertifiedAccuracyCurve(records, max_psi);
  return s;
}

EvaluationReport Evaluate(const Ensemble& ensemble, const Dataset& test,
                          const ExperimentConfig& config) {
  const std::size_t n = test.n();
  const int labels = ensemble.num_labels();
  const bool regression = ensemble.mode() == EnsembleMode::kRegression;
  for (int k : config.topk) {
    if (k >= labels) {
      Fail(ErrorKind::kInvalidConfiguration,
           "top-k needs k < |Y|; got k=" + std::to_string(k) + " with " +
               std::to_string(labels) + " labels");
    }
  }
  const auto& spread = ensemble.partition().spread;
  const DpTable table(static_cast<int>(ensemble.size()));

  EvaluationReport report;
  report.records.resize(n);
  for (int k : config.topk) report.topk_records[k].resize(n);

  ParallelFor(n, config.threads, [&](std::size_t i) {
    const Eigen::VectorXd x =
        test.features.row(static_cast<Eigen::Index>(i)).transpose();
    CertificateRecord& rec = report.records[i];
    rec.instance_id = i;
    if (regression) {
      const IntervalCertificate ic =
          CertifyInterval(ensemble.Outputs(x), config.interval.For(test.values[i]));
      rec.label = FormatDouble(ic.prediction);
      rec.radius = ic.radius;
      rec.correct = ic.correct;
      rec.guarantee = GuaranteeName(Guarantee::kFeature);
      rec.method = Method{MethodKind::kInterval, 0}.ToString();
      return;
    }
    const LogitProfile logits = ensemble.Logits(x);
    const VoteProfile votes = logits.Votes();
    Certificate cert;
    if (spread) {
      cert = CertifyOverlap(OverlapProfile(votes, *spread));
    } else if (config.decision == Decision::kRunoff) {
      cert = CertifyRunoff(votes, logits, table);
    } else {
      cert = CertifyPlurality(votes);
      if (ensemble.mode() == EnsembleMode::kInstancePartition) {
        cert = TagLabelFlip(cert, ensemble.mode());
      }
    }
    const Label truth = test.labels[i];
    rec.label = test.label_names[static_cast<std::size_t>(cert.label)];
    rec.radius = cert.radius;
    rec.correct = cert.label == truth;
    rec.guarantee = GuaranteeName(cert.guarantee);
    rec.method = cert.method.ToString();
    for (int k : config.topk) {
      CertificateRecord& top = report.topk_records.at(k)[i];
      const int r = CertifyTopK(votes, truth, k);
      top.instance_id = i;
      top.label = test.label_names[static_cast<std::size_t>(truth)];
      top.correct = r >= 0;
      top.radius = r >= 0 ? Radius(r) : Radius::NegativeInfinity();
      top.guarantee = GuaranteeName(Guarantee::kFeature);
      top.method = Method{MethodKind::kTopK, k}.ToString();
    }
  });

  const int max_psi =
      config.max_psi.value_or(static_cast<int>(ensemble.size()));
  report.summary = Summarize(report.records, max_psi);
  for (const auto& [k, recs] : report.topk_records) {
    report.summary.topk_accuracy[k] = CertifiedAccuracy(recs, 0);
  }
  return report;
}

EvaluationReport RunExperiment(const ExperimentConfig& config) {
  Stage("config", [&] { config.Validate(); });
  const std::vector<std::string>* no_labels = nullptr;
  Dataset all = Stage("load", [&] {
    return LoadCsv(config.data, config.schema, no_labels);
  });
  Dataset train;
  Dataset test;
  if (config.test_data) {
    train = std::move(all);
    test = Stage("load", [&] {
      return LoadCsv(*config.test_data, config.schema,
                     train.task == TaskKind::kClassification
                         ? &train.label_names
                         : nullptr);
    });
  } else {
    const Split split = Stage("split", [&] {
      return TrainTestSplit(all.n(), config.test_fraction,
                            DeriveSeed(*config.seed, 10));
    });
    train = all.Rows(split.train);
    test = all.Rows(split.test);
  }
  const FeaturePartition partition =
      Stage("partition", [&] { return BuildPartition(config, train.d()); });
  const Ensemble ensemble = Stage("train", [&] {
    return TrainEnsemble(train, partition, config.learner, config.mode,
                         config.seed.value_or(0), config.threads);
  });
  return Stage("certify", [&] { return Evaluate(ensemble, test, config); });
}

std::string RecordToJson(const CertificateRecord& r) {
  json j;
  j["instance_id"] = r.instance_id;
  j["label"] = r.label;
  if (r.radius.is_negative_infinity()) {
    j["radius"] = "-inf";
  } else {
    j["radius"] = r.radius.value();
  }
  j["guarantee"] = r.guarantee;
  j["method"] = r.method;
  j["correct"] = r.correct;
  return j.dump();
}

CertificateRecord RecordFromJson(std::string_view line) {
  try {
    const json j = json::parse(line);
    CertificateRecord r;
    r.instance_id = j.at("instance_id").get<std::size_t>();
    r.label = j.at("label").get<std::string>();
    const json& radius = j.at("radius");
    if (radius.is_string()) {
      if (radius.get<std::string>() != "-inf") {
        Fail(ErrorKind::kDataError, "radius string must be \"-inf\"");
      }
      r.radius = Radius::NegativeInfinity();
    } else {
      r.radius = Radius(radius.get<int>());
    }
    r.guarantee = j.at("guarantee").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.correct = j.at("correct").get<bool>();
    return r;
  } catch (const json::exception& e) {
    Fail(ErrorKind::kDataError, std::string("malformed record: ") + e.what());
  }
}

std::vector<CertificateRecord> ReadRecords(std::istream& in) {
  std::vector<CertificateRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!Trim(line).empty()) out.push_back(RecordFromJson(line));
  }
  return out;
}

void WriteRecords(const std::vector<CertificateRecord>& records,
                  std::ostream& out) {
  for (const auto& r : records) out << RecordToJson(r) << '\n';
}

std::string SummaryToJson(const EvaluationSummary& s) {
  json j;
  j["instances"] = s.instances;
  j["accuracy"] = s.accuracy;
  j["median_certified_robustness"] = s.median_radius.ToString();
  json curve = json::array();
  for (const auto& p : s.curve) {
    curve.push_back({{"psi", p.psi}, {"certified_accuracy", p.certified_accuracy}});
  }
  j["certified_accuracy"] = curve;
  json topk = json::object();
  for (const auto& [k, acc] : s.topk_accuracy) topk[std::to_string(k)] = acc;
  j["topk_certified_accuracy"] = topk;
  return j.dump(2);
}

void WriteCurveCsv(const Curve& curve, std::ostream& out) {
  out << "psi,certified_accuracy\n";
  for (const auto& p : curve) {
    out << p.psi << ',' << FormatDouble(p.certified_accuracy) << '\n';
  }
}

Curve ReadCurveCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    Fail(ErrorKind::kDataError, "empty curve file");
  }
  Curve curve;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view text = Trim(line);
    if (text.empty()) continue;
    const auto comma = text.find(',');
    try {
      if (comma == std::string_view::npos) {
        Fail(ErrorKind::kDataError, "expected two fields");
      }
      curve.push_back({ParseValue<int>("psi", Trim(text.substr(0, comma))),
                       ParseValue<double>("certified_accuracy",
                                          Trim(text.substr(comma + 1)))});
    } catch (const Error& e) {
      Fail(ErrorKind::kDataError,
           "curve row " + std::to_string(row) + ": " + e.what());
    }
  }
  std::sort(curve.begin(), curve.end(),
            [](const auto& a, const auto& b) { return a.psi < b.psi; });
  return curve;
}

void WriteReport(const EvaluationReport& report,
                 const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) Fail(ErrorKind::kDataError, "cannot create " + dir.string());
  auto open = [&](const std::string& name) {
    std::ofstream out(dir / name);
    if (!out) Fail(ErrorKind::kDataError, "cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("records.jsonl");
    WriteRecords(report.records, out);
  }
  {
    auto out = open("summary.json");
    out << SummaryToJson(report.summary) << '\n';
  }
  {
    auto out = open("curve.csv");
    WriteCurveCsv(report.summary.curve, out);
  }
  for (const auto& [k, recs] : report.topk_records) {
    auto out = open("topk_" + std::to_string(k) + ".jsonl");
    WriteRecords(recs, out);
  }
}

}  // namespace featpart
