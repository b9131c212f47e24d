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

#ifndef FEATPART_DATASET_HPP_
#define FEATPART_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "featpart/learners.hpp"

namespace featpart {

enum class TaskKind { kClassification, kRegression };

std::string_view TaskKindName(TaskKind kind);
TaskKind ParseTaskKind(std::string_view name);

struct CsvSchema {
  std::string target_column;  // empty means the last column
  char delimiter = ',';
  TaskKind task = TaskKind::kClassification;
};

// Row-major tabular data: n rows, d numeric feature columns and one target.
struct Dataset {
  TaskKind task = TaskKind::kClassification;
  std::vector<std::string> feature_names;
  std::string target_name;
  Eigen::MatrixXd features;  // n x d

  // Classification: 0-based labels into label_names.
  std::vector<Label> labels;
  std::vector<std::string> label_names;
  // Regression: real targets.
  std::vector<double> values;

  std::size_t n() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(features.cols()); }
  int num_labels() const { return static_cast<int>(label_names.size()); }

  Dataset Rows(std::span<const std::size_t> rows) const;
  TrainingTargets Targets() const;
  Eigen::MatrixXd Columns(const FeatureSet& features) const;
};

// Parses CSV text with a header row. Class names are mapped to labels in
// numeric order when every name parses as a number and in lexicographic
// order otherwise, unless `known_labels` fixes the mapping. Errors carry
// 1-based (row, column) coordinates where row 1 is the header.
Dataset ParseCsv(std::istream& in, const CsvSchema& schema,
                 const std::vector<std::string>* known_labels = nullptr);
Dataset LoadCsv(const std::filesystem::path& path, const CsvSchema& schema,
                const std::vector<std::string>* known_labels = nullptr);

// Writes features then the target column, round-trip exact.
void WriteCsv(const Dataset& data, std::ostream& out, char delimiter = ',');
void SaveCsv(const Dataset& data, const std::filesystem::path& path,
             char delimiter = ',');

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded shuffle, then the first round(n * test_fraction) rows go to test.
Split TrainTestSplit(std::size_t n, double test_fraction, std::uint64_t seed);

// Well-separated Gaussian blobs: class c has mean `separation` * e_c spread
// across all features (sign pattern per class), unit noise.
Dataset GaussianBlobs(std::size_t n, std::size_t d, int num_labels,
                      double separation, std::uint64_t seed);

// y = w . x + noise with w drawn once from the seed.
Dataset LinearRegressionData(std::size_t n, std::size_t d, double noise,
                             std::uint64_t seed);

}  // namespace featpart

#endif  // FEATPART_DATASET_HPP_
