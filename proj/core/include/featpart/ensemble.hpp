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

#ifndef FEATPART_ENSEMBLE_HPP_
#define FEATPART_ENSEMBLE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "featpart/dataset.hpp"
#include "featpart/learners.hpp"
#include "featpart/partition.hpp"
#include "featpart/profile.hpp"

namespace featpart {

enum class EnsembleMode { kFeaturePartition, kInstancePartition, kRegression };

std::string_view EnsembleModeName(EnsembleMode mode);
EnsembleMode ParseEnsembleMode(std::string_view name);

// Instance hash: row i goes to submodel (i + DeriveSeed(seed, 3)) mod T.
std::size_t InstanceShard(std::size_t row, std::size_t submodels,
                          std::uint64_t seed);

class Ensemble {
 public:
  Ensemble(FeaturePartition partition, std::vector<TrainedSubmodel> submodels,
           EnsembleMode mode, int num_labels, SubmodelSpec spec,
           std::uint64_t seed);

  const FeaturePartition& partition() const { return partition_; }
  const std::vector<TrainedSubmodel>& submodels() const { return submodels_; }
  EnsembleMode mode() const { return mode_; }
  int num_labels() const { return num_labels_; }
  const SubmodelSpec& spec() const { return spec_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return submodels_.size(); }
  std::size_t input_dim() const { return partition_.d; }

  // Each throws data-error unless |x| equals the partition's d.
  VoteProfile Votes(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  LogitProfile Logits(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  std::vector<double> Outputs(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  Label PredictPlurality(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Label PredictRunoff(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  double PredictMedian(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  void CheckWidth(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  FeaturePartition partition_;
  std::vector<TrainedSubmodel> submodels_;
  EnsembleMode mode_;
  int num_labels_;
  SubmodelSpec spec_;
  std::uint64_t seed_;
};

// Trains one submodel per partition subset on worker threads. Feature mode
// uses every row; instance mode gives submodel t the rows whose shard is t;
// regression mode needs real targets, an odd T and least squares.
Ensemble TrainEnsemble(const Dataset& data, const FeaturePartition& partition,
                       const SubmodelSpec& spec, EnsembleMode mode,
                       std::uint64_t seed, unsigned threads = 0);

// Bundle layout: manifest.json, partition.json, submodel_<t>.json.
void SaveEnsemble(const Ensemble& ensemble, const std::filesystem::path& dir,
                  const std::vector<std::string>& label_names = {});
Ensemble LoadEnsemble(const std::filesystem::path& dir,
                      std::vector<std::string>* label_names = nullptr);

}  // namespace featpart

#endif  // FEATPART_ENSEMBLE_HPP_
