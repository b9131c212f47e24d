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

#ifndef FEATPART_EXPERIMENT_HPP_
#define FEATPART_EXPERIMENT_HPP_

// Experiment configuration, the end-to-end pipeline and report files.
//
// Config files hold one `key = value` pair per line. Blank lines and lines
// starting with '#' are ignored. Keys:
//
//   data            path to the CSV file (required)
//   test_data       optional separate test CSV; disables the split
//   target          target column name (default: last column)
//   delimiter       single character (default ',')
//   task            classification | regression
//   partition       strided | random | overlapping
//   submodels       T
//   phi             spread degree for the overlapping partition
//   learner         multinomial-logistic | nearest-centroid |
//                   linear-least-squares
//   learning_rate, iterations, ridge
//   mode            feature-partition | instance-partition
//   decision        plurality | runoff
//   topk            comma-separated k values, e.g. 1,2,3
//   interval        absolute | relative
//   xi              interval half-width parameter
//   test_fraction   share of rows held out (default 0.2)
//   max_psi         last psi of the certified-accuracy grid (default T)
//   seed            base seed; required whenever a step is randomized
//   threads         worker threads, 0 for all cores

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "featpart/dataset.hpp"
#include "featpart/ensemble.hpp"
#include "featpart/learners.hpp"
#include "featpart/metrics.hpp"
#include "featpart/partition.hpp"
#include "featpart/regression.hpp"

namespace featpart {

enum class PartitionStrategy { kStrided, kRandom, kOverlapping };
enum class Decision { kPlurality, kRunoff };

std::string_view PartitionStrategyName(PartitionStrategy strategy);
PartitionStrategy ParsePartitionStrategy(std::string_view name);
std::string_view DecisionName(Decision decision);
Decision ParseDecision(std::string_view name);

struct ExperimentConfig {
  std::filesystem::path data;
  std::optional<std::filesystem::path> test_data;
  CsvSchema schema;
  PartitionStrategy partition = PartitionStrategy::kStrided;
  std::size_t submodels = 5;
  std::size_t phi = 1;
  SubmodelSpec learner;
  EnsembleMode mode = EnsembleMode::kFeaturePartition;
  Decision decision = Decision::kPlurality;
  std::vector<int> topk;
  IntervalRule interval;
  double test_fraction = 0.2;
  std::optional<int> max_psi;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;

  bool Randomized() const;
  // Throws invalid-configuration on any inconsistent combination.
  void Validate() const;
};

// Parses `key = value` text; unknown keys and malformed values are
// invalid-configuration errors naming the line.
ExperimentConfig ParseConfig(std::istream& in);
ExperimentConfig LoadConfig(const std::filesystem::path& path);
// Applies one key to a config, as the parser does for each line.
void SetConfigValue(ExperimentConfig& config, std::string_view key,
                    std::string_view value);

struct EvaluationSummary {
  std::size_t instances = 0;
  double accuracy = 0.0;
  Radius median_radius;
  Curve curve;
  // Certified top-k accuracy at radius >= 0, keyed by k.
  std::map<int, double> topk_accuracy;
};

struct EvaluationReport {
  std::vector<CertificateRecord> records;
  std::map<int, std::vector<CertificateRecord>> topk_records;
  EvaluationSummary summary;
};

// Certifies every test row of a trained ensemble. Records are computed in
// parallel and stored in row order.
EvaluationReport Evaluate(const Ensemble& ensemble, const Dataset& test,
                          const ExperimentConfig& config);

EvaluationSummary Summarize(const std::vector<CertificateRecord>& records,
                            int max_psi);

// Loads data, partitions, trains and evaluates. Errors are rethrown with the
// stage name prefixed.
EvaluationReport RunExperiment(const ExperimentConfig& config);

// Builds the feature partition a config asks for over d features.
FeaturePartition BuildPartition(const ExperimentConfig& config, std::size_t d);

std::string RecordToJson(const CertificateRecord& record);
CertificateRecord RecordFromJson(std::string_view line);
std::vector<CertificateRecord> ReadRecords(std::istream& in);

void WriteRecords(const std::vector<CertificateRecord>& records,
                  std::ostream& out);
std::string SummaryToJson(const EvaluationSummary& summary);
void WriteCurveCsv(const Curve& curve, std::ostream& out);
Curve ReadCurveCsv(std::istream& in);

// Writes records.jsonl, summary.json, curve.csv and, per k, topk_<k>.jsonl.
void WriteReport(const EvaluationReport& report,
                 const std::filesystem::path& dir);

}  // namespace featpart

#endif  // FEATPART_EXPERIMENT_HPP_
