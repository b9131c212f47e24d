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

#include "featpart/ensemble.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "featpart/error.hpp"
#include "featpart/parallel.hpp"
#include "featpart/regression.hpp"
#include "featpart/rng.hpp"

namespace featpart {
namespace {

using json = nlohmann::json;

constexpr std::string_view kManifestFormat = "featpart-ensemble/1";

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kDataError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kDataError, "cannot write " + path.string());
  out << text << '\n';
}

std::string SubmodelFile(std::size_t t) {
  return "submodel_" + std::to_string(t) + ".json";
}

}  // namespace

std::string_view EnsembleModeName(EnsembleMode mode) {
  switch (mode) {
    case EnsembleMode::kFeaturePartition:
      return "feature-partition";
    case EnsembleMode::kInstancePartition:
      return "instance-partition";
    case EnsembleMode::kRegression:
      return "regression";
  }
  return "unknown";
}

EnsembleMode ParseEnsembleMode(std::string_view name) {
  if (name == "feature-partition") return EnsembleMode::kFeaturePartition;
  if (name == "instance-partition") return EnsembleMode::kInstancePartition;
  if (name == "regression") return EnsembleMode::kRegression;
  Fail(ErrorKind::kInvalidConfiguration,
       "unknown ensemble mode '" + std::string(name) + "'");
}

std::size_t InstanceShard(std::size_t row, std::size_t submodels,
                          std::uint64_t seed) {
  if (submodels == 0) {
    Fail(ErrorKind::kInvalidArgument, "instance shard needs T >= 1");
  }
  const std::uint64_t offset = DeriveSeed(seed, 3) % submodels;
  return static_cast<std::size_t>((row % submodels + offset) % submodels);
}

Ensemble::Ensemble(FeaturePartition partition,
                   std::vector<TrainedSubmodel> submodels, EnsembleMode mode,
                   int num_labels, SubmodelSpec spec, std::uint64_t seed)
    : partition_(std::move(partition)),
      submodels_(std::move(submodels)),
      mode_(mode),
      num_labels_(num_labels),
      spec_(spec),
      seed_(seed) {
  partition_.Validate();
  if (submodels_.size() != partition_.submodel_count()) {
    Fail(ErrorKind::kInvalidConfiguration,
         "ensemble has " + std::to_string(submodels_.size()) +
             " submodels for a partition of " +
             std::to_string(partition_.submodel_count()));
  }
  for (std::size_t t = 0; t < submodels_.size(); ++t) {
    if (submodels_[t].features != partition_.subsets[t]) {
      Fail(ErrorKind::kInvalidConfiguration,
           "submodel " + std::to_string(t) +
               " reads features that differ from its partition subset");
    }
  }
  if (mode_ == EnsembleMode::kRegression && submodels_.size() % 2 == 0) {
    Fail(ErrorKind::kInvalidConfiguration,
         "regression ensembles need an odd number of submodels");
  }
}

void Ensemble::CheckWidth(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (static_cast<std::size_t>(x.size()) != partition_.d) {
    Fail(ErrorKind::kDataError, "instance has " + std::to_string(x.size()) +
                                    " features, ensemble expects " +
                                    std::to_string(partition_.d));
  }
}

LogitProfile Ensemble::Logits(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  CheckWidth(x);
  if (mode_ == EnsembleMode::kRegression) {
    Fail(ErrorKind::kInvalidArgument, "regression ensembles have no logits");
  }
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(submodels_.size()),
                       num_labels_);
  for (std::size_t t = 0; t < submodels_.size(); ++t) {
    rows.row(static_cast<Eigen::Index>(t)) =
        SubmodelLogits(submodels_[t], x).transpose();
  }
  return LogitProfile(std::move(rows));
}

VoteProfile Ensemble::Votes(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return Logits(x).Votes();
}

std::vector<double> Ensemble::Outputs(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  CheckWidth(x);
  if (mode_ != EnsembleMode::kRegression) {
    Fail(ErrorKind::kInvalidArgument,
         "real-valued outputs need a regression ensemble");
  }
  std::vector<double> out;
  out.reserve(submodels_.size());
  for (const auto& m : submodels_) out.push_back(SubmodelRegress(m, x));
  return out;
}

Label Ensemble::PredictPlurality(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return featpart::PredictPlurality(Votes(x));
}

Label Ensemble::PredictRunoff(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const LogitProfile logits = Logits(x);
  return featpart::PredictRunoff(logits.Votes(), logits);
}

double Ensemble::PredictMedian(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return MedianDecision(Outputs(x));
}

Ensemble TrainEnsemble(const Dataset& data, const FeaturePartition& partition,
                       const SubmodelSpec& spec, EnsembleMode mode,
                       std::uint64_t seed, unsigned threads) {
  partition.Validate();
  if (partition.d != data.d()) {
    Fail(ErrorKind::kDataError,
         "partition covers " + std::to_string(partition.d) +
             " features but the dataset has " + std::to_string(data.d()));
  }
  const bool regression = mode == EnsembleMode::kRegression;
  if (regression != (data.task == TaskKind::kRegression)) {
    Fail(ErrorKind::kInvalidConfiguration,
         regression ? "regression mode needs real-valued targets"
                    : "classification modes need class labels");
  }
  if (regression != !IsClassifier(spec.family)) {
    Fail(ErrorKind::kInvalidConfiguration,
         "learner '" + std::string(LearnerFamilyName(spec.family)) +
             "' does not match ensemble mode '" +
             std::string(EnsembleModeName(mode)) + "'");
  }
  const std::size_t count = partition.submodel_count();
  if (regression && count % 2 == 0) {
    Fail(ErrorKind::kInvalidConfiguration,
         "regression ensembles need an odd number of submodels, got " +
             std::to_string(count));
  }

  std::vector<std::vector<std::size_t>> shards;
  if (mode == EnsembleMode::kInstancePartition) {
    shards.resize(count);
    for (std::size_t i = 0; i < data.n(); ++i) {
      shards[InstanceShard(i, count, seed)].push_back(i);
    }
    for (std::size_t t = 0; t < count; ++t) {
      if (shards[t].empty()) {
        Fail(ErrorKind::kTrainingError,
             "submodel " + std::to_string(t) +
                 " received no training rows under instance partitioning");
      }
    }
  }

  std::vector<TrainedSubmodel> models(count);
  ParallelFor(count, threads, [&](std::size_t t) {
    SubmodelSpec local = spec;
    local.seed = DeriveSeed(seed, 1000 + t);
    const FeatureSet& features = partition.subsets[t];
    try {
      if (shards.empty()) {
        models[t] = TrainSubmodel(local, features, data.Columns(features),
                                  data.Targets(), data.d());
      } else {
        const Dataset part = data.Rows(shards[t]);
        models[t] = TrainSubmodel(local, features, part.Columns(features),
                                  part.Targets(), data.d());
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "submodel " + std::to_string(t) + ": " + e.what());
    }
  });
  return Ensemble(partition, std::move(models), mode,
                  regression ? 0 : data.num_labels(), spec, seed);
}

void SaveEnsemble(const Ensemble& ensemble, const std::filesystem::path& dir,
                  const std::vector<std::string>& label_names) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) Fail(ErrorKind::kDataError, "cannot create " + dir.string());
  const SubmodelSpec& spec = ensemble.spec();
  json files = json::array();
  for (std::size_t t = 0; t < ensemble.size(); ++t) {
    files.push_back(SubmodelFile(t));
    WriteFile(dir / SubmodelFile(t), SubmodelToJson(ensemble.submodels()[t]));
  }
  WriteFile(dir / "partition.json", PartitionToJson(ensemble.partition()));
  const json manifest = {
      {"format", kManifestFormat},
      {"partition", "partition.json"},
      {"mode", EnsembleModeName(ensemble.mode())},
      {"num_labels", ensemble.num_labels()},
      {"label_names", label_names},
      {"seed", ensemble.seed()},
      {"learner",
       {{"family", LearnerFamilyName(spec.family)},
        {"learning_rate", spec.learning_rate},
        {"iterations", spec.iterations},
        {"ridge", spec.ridge}}},
      {"submodels", files},
  };
  WriteFile(dir / "manifest.json", manifest.dump(2));
}

Ensemble LoadEnsemble(const std::filesystem::path& dir,
                      std::vector<std::string>* label_names) {
  json manifest;
  try {
    manifest = json::parse(ReadFile(dir / "manifest.json"));
    if (manifest.at("format") != kManifestFormat) {
      Fail(ErrorKind::kDataError, "unsupported ensemble bundle format");
    }
    SubmodelSpec spec;
    const json& learner = manifest.at("learner");
    spec.family = ParseLearnerFamily(learner.at("family").get<std::string>());
    spec.learning_rate = learner.at("learning_rate").get<double>();
    spec.iterations = learner.at("iterations").get<int>();
    spec.ridge = learner.at("ridge").get<double>();
    FeaturePartition partition = PartitionFromJson(
        ReadFile(dir / manifest.at("partition").get<std::string>()));
    std::vector<TrainedSubmodel> models;
    for (const auto& file : manifest.at("submodels")) {
      models.push_back(
          SubmodelFromJson(ReadFile(dir / file.get<std::string>())));
    }
    if (label_names != nullptr) {
      *label_names = manifest.at("label_names").get<std::vector<std::string>>();
    }
    return Ensemble(std::move(partition), std::move(models),
                    ParseEnsembleMode(manifest.at("mode").get<std::string>()),
                    manifest.at("num_labels").get<int>(), spec,
                    manifest.at("seed").get<std::uint64_t>());
  } catch (const json::exception& e) {
    Fail(ErrorKind::kDataError,
         std::string("malformed ensemble manifest: ") + e.what());
  }
}

}  // namespace featpart
