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

#ifndef FEATPART_LEARNERS_HPP_
#define FEATPART_LEARNERS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "featpart/partition.hpp"

namespace featpart {

using Label = int;

enum class LearnerFamily {
  kMultinomialLogistic,
  kNearestCentroid,
  kLinearLeastSquares,
};

std::string_view LearnerFamilyName(LearnerFamily family);
LearnerFamily ParseLearnerFamily(std::string_view name);
bool IsClassifier(LearnerFamily family);

struct SubmodelSpec {
  LearnerFamily family = LearnerFamily::kMultinomialLogistic;
  double learning_rate = 0.1;
  int iterations = 500;
  double ridge = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SubmodelSpec&, const SubmodelSpec&) = default;
};

// Training targets for one submodel: class labels in [0, num_labels) or real
// regression targets. Exactly one of the two is used, chosen by the family.
struct TrainingTargets {
  std::vector<Label> labels;
  int num_labels = 0;
  std::vector<double> values;
};

// A fitted submodel. It reads only the coordinates listed in `features`; all
// other coordinates of a full-width input are ignored.
//
// Parameter layout (`weights` rows x cols):
//   logistic:        |Y| x k weights, `bias` |Y|
//   nearest-centroid |Y| x k class centroids (standardized space)
//   least-squares:   1 x k weights, `bias` 1
struct TrainedSubmodel {
  LearnerFamily family = LearnerFamily::kMultinomialLogistic;
  FeatureSet features;
  std::size_t input_dim = 0;  // width of the full feature vector
  int num_labels = 0;         // 0 for regression
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;  // 0 marks a constant column
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  // Mean training loss after each iteration (logistic only; not persisted).
  std::vector<double> loss_history;

  std::size_t output_width() const {
    return num_labels > 0 ? static_cast<std::size_t>(num_labels) : 1;
  }
};

// `columns` holds only this submodel's feature columns (rows = instances, in
// the order of `features`). `input_dim` is the full feature width d; 0 means
// one past the largest feature index.
TrainedSubmodel TrainSubmodel(const SubmodelSpec& spec,
                              const FeatureSet& features,
                              const Eigen::MatrixXd& columns,
                              const TrainingTargets& targets,
                              std::size_t input_dim = 0);

// Per-label logits for a full-width feature vector; regression submodels
// return a single value. Throws data-error unless |x| == input_dim.
Eigen::VectorXd SubmodelLogits(const TrainedSubmodel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x);

// argmax with the smallest index winning ties.
Label ArgmaxLabel(const Eigen::Ref<const Eigen::VectorXd>& logits);

Label SubmodelPredict(const TrainedSubmodel& model,
                      const Eigen::Ref<const Eigen::VectorXd>& x);
double SubmodelRegress(const TrainedSubmodel& model,
                       const Eigen::Ref<const Eigen::VectorXd>& x);

std::string SubmodelToJson(const TrainedSubmodel& model);
TrainedSubmodel SubmodelFromJson(std::string_view text);

}  // namespace featpart

#endif  // FEATPART_LEARNERS_HPP_
