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

#include "featpart/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>

#include "featpart/error.hpp"
#include "featpart/rng.hpp"

namespace featpart {
namespace {

std::string Where(std::size_t row, std::size_t col) {
  return "(row " + std::to_string(row) + ", column " + std::to_string(col) +
         ")";
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits one line; double-quoted fields may contain the delimiter and "" for
// a literal quote.
std::vector<std::string> SplitLine(std::string_view line, char delimiter) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      out.emplace_back(Trim(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.emplace_back(Trim(field));
  return out;
}

std::optional<double> ParseNumber(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::string FormatNumber(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string Quote(const std::string& s, char delimiter) {
  if (s.find(delimiter) == std::string::npos &&
      s.find('"') == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string_view TaskKindName(TaskKind kind) {
  return kind == TaskKind::kClassification ? "classification" : "regression";
}

TaskKind ParseTaskKind(std::string_view name) {
  if (name == "classification") return TaskKind::kClassification;
  if (name == "regression") return TaskKind::kRegression;
  Fail(ErrorKind::kInvalidConfiguration,
       "unknown task '" + std::string(name) + "'");
}

Dataset Dataset::Rows(std::span<const std::size_t> rows) const {
  Dataset out;
  out.task = task;
  out.feature_names = feature_names;
  out.target_name = target_name;
  out.label_names = label_names;
  out.features.resize(static_cast<Eigen::Index>(rows.size()),
                      features.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= n()) {
      Fail(ErrorKind::kInvalidArgument, "row index out of range");
    }
    out.features.row(static_cast<Eigen::Index>(i)) =
        features.row(static_cast<Eigen::Index>(rows[i]));
    if (task == TaskKind::kClassification) {
      out.labels.push_back(labels[rows[i]]);
    } else {
      out.values.push_back(values[rows[i]]);
    }
  }
  return out;
}

TrainingTargets Dataset::Targets() const {
  return {labels, num_labels(), values};
}

Eigen::MatrixXd Dataset::Columns(const FeatureSet& subset) const {
  Eigen::MatrixXd out(features.rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j) {
    if (subset[j] >= d()) {
      Fail(ErrorKind::kDataError,
           "feature index " + std::to_string(subset[j]) +
               " exceeds dataset width " + std::to_string(d()));
    }
    out.col(static_cast<Eigen::Index>(j)) =
        features.col(static_cast<Eigen::Index>(subset[j]));
  }
  return out;
}

Dataset ParseCsv(std::istream& in, const CsvSchema& schema,
                 const std::vector<std::string>* known_labels) {
  std::string line;
  if (!std::getline(in, line)) {
    Fail(ErrorKind::kDataError, "empty CSV input: header row missing");
  }
  const std::vector<std::string> header = SplitLine(line, schema.delimiter);
  if (header.size() < 2) {
    Fail(ErrorKind::kDataError,
         "CSV needs at least one feature column and one target column");
  }
  std::size_t target = header.size() - 1;
  if (!schema.target_column.empty()) {
    const auto it =
        std::find(header.begin(), header.end(), schema.target_column);
    if (it == header.end()) {
      Fail(ErrorKind::kDataError,
           "missing target column '" + schema.target_column + "'");
    }
    target = static_cast<std::size_t>(it - header.begin());
  }

  Dataset data;
  data.task = schema.task;
  data.target_name = header[target];
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != target) data.feature_names.push_back(header[c]);
  }
  const std::size_t d = data.feature_names.size();

  std::vector<double> cells;
  std::vector<std::string> raw_targets;
  std::vector<std::size_t> file_rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = SplitLine(line, schema.delimiter);
    if (fields.size() != header.size()) {
      Fail(ErrorKind::kDataError,
           "ragged row " + std::to_string(row) + ": expected " +
               std::to_string(header.size()) + " fields, got " +
               std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == target) {
        raw_targets.push_back(fields[c]);
        file_rows.push_back(row);
        continue;
      }
      const auto value = ParseNumber(fields[c]);
      if (!value) {
        Fail(ErrorKind::kDataError, "non-numeric feature '" + fields[c] +
                                        "' at " + Where(row, c + 1));
      }
      if (!std::isfinite(*value)) {
        Fail(ErrorKind::kDataError,
             "non-finite feature value at " + Where(row, c + 1));
      }
      cells.push_back(*value);
    }
  }
  const std::size_t n = raw_targets.size();
  data.features.resize(static_cast<Eigen::Index>(n),
                       static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      data.features(static_cast<Eigen::Index>(i),
                    static_cast<Eigen::Index>(j)) = cells[i * d + j];
    }
  }

  if (schema.task == TaskKind::kRegression) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto value = ParseNumber(raw_targets[i]);
      if (!value || !std::isfinite(*value)) {
        Fail(ErrorKind::kDataError, "invalid regression target '" +
                                        raw_targets[i] + "' at " +
                                        Where(file_rows[i], target + 1));
      }
      data.values.push_back(*value);
    }
    return data;
  }

  if (known_labels != nullptr) {
    data.label_names = *known_labels;
  } else {
    std::vector<std::string> names = raw_targets;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    const bool numeric = std::all_of(names.begin(), names.end(), [](auto& s) {
      return ParseNumber(s).has_value();
    });
    if (numeric) {
      std::stable_sort(names.begin(), names.end(),
                       [](const std::string& a, const std::string& b) {
                         return *ParseNumber(a) < *ParseNumber(b);
                       });
    }
    data.label_names = std::move(names);
  }
  std::map<std::string, Label> index;
  for (std::size_t y = 0; y < data.label_names.size(); ++y) {
    index.emplace(data.label_names[y], static_cast<Label>(y));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = index.find(raw_targets[i]);
    if (it == index.end()) {
      Fail(ErrorKind::kDataError, "unknown class '" + raw_targets[i] +
                                      "' at " + Where(file_rows[i], target + 1));
    }
    data.labels.push_back(it->second);
  }
  return data;
}

Dataset LoadCsv(const std::filesystem::path& path, const CsvSchema& schema,
                const std::vector<std::string>* known_labels) {
  std::ifstream in(path);
  if (!in) {
    Fail(ErrorKind::kDataError, "cannot open " + path.string());
  }
  return ParseCsv(in, schema, known_labels);
}

void WriteCsv(const Dataset& data, std::ostream& out, char delimiter) {
  for (const auto& name : data.feature_names) {
    out << Quote(name, delimiter) << delimiter;
  }
  out << Quote(data.target_name.empty() ? "target" : data.target_name,
               delimiter)
      << '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t j = 0; j < data.d(); ++j) {
      out << FormatNumber(data.features(static_cast<Eigen::Index>(i),
                                        static_cast<Eigen::Index>(j)))
          << delimiter;
    }
    if (data.task == TaskKind::kRegression) {
      out << FormatNumber(data.values[i]);
    } else {
      out << Quote(data.label_names[static_cast<std::size_t>(data.labels[i])],
                   delimiter);
    }
    out << '\n';
  }
}

void SaveCsv(const Dataset& data, const std::filesystem::path& path,
             char delimiter) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kDataError, "cannot write " + path.string());
  WriteCsv(data, out, delimiter);
}

Split TrainTestSplit(std::size_t n, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    Fail(ErrorKind::kInvalidConfiguration,
         "test fraction must lie strictly between 0 and 1");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<std::size_t>(order));
  const auto test_n = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * test_fraction));
  Split split;
  split.test.assign(order.begin(), order.begin() + static_cast<long>(test_n));
  split.train.assign(order.begin() + static_cast<long>(test_n), order.end());
  std::sort(split.test.begin(), split.test.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

Dataset GaussianBlobs(std::size_t n, std::size_t d, int num_labels,
                      double separation, std::uint64_t seed) {
  if (num_labels < 2 || d == 0) {
    Fail(ErrorKind::kInvalidArgument, "blobs need d >= 1 and two labels");
  }
  Rng rng(seed);
  Eigen::MatrixXd means(num_labels, static_cast<Eigen::Index>(d));
  for (Eigen::Index c = 0; c < means.rows(); ++c) {
    for (Eigen::Index j = 0; j < means.cols(); ++j) {
      means(c, j) = separation * (rng.Below(2) == 0 ? -1.0 : 1.0);
    }
  }
  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(n),
                       static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) {
    data.feature_names.push_back("x" + std::to_string(j));
  }
  data.target_name = "label";
  for (int c = 0; c < num_labels; ++c) {
    data.label_names.push_back(std::to_string(c));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<Label>(i % static_cast<std::size_t>(num_labels));
    for (std::size_t j = 0; j < d; ++j) {
      data.features(static_cast<Eigen::Index>(i),
                    static_cast<Eigen::Index>(j)) =
          means(c, static_cast<Eigen::Index>(j)) + rng.Normal();
    }
    data.labels.push_back(c);
  }
  return data;
}

Dataset LinearRegressionData(std::size_t n, std::size_t d, double noise,
                             std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd w(static_cast<Eigen::Index>(d));
  for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = rng.Normal();
  Dataset data;
  data.task = TaskKind::kRegression;
  data.target_name = "target";
  for (std::size_t j = 0; j < d; ++j) {
    data.feature_names.push_back("x" + std::to_string(j));
  }
  data.features.resize(static_cast<Eigen::Index>(n),
                       static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      data.features(static_cast<Eigen::Index>(i),
                    static_cast<Eigen::Index>(j)) = rng.Normal();
    }
    data.values.push_back(
        data.features.row(static_cast<Eigen::Index>(i)).dot(w) +
        noise * rng.Normal());
  }
  return data;
}

}  // namespace featpart
