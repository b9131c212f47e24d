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

#include "featpart/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "featpart/error.hpp"

namespace featpart {
namespace {

using nlohmann::json;

constexpr double kConstantColumnTolerance = 1e-12;
// Logit reported for a class that had no training rows (nearest-centroid).
constexpr double kAbsentClassLogit = -std::numeric_limits<double>::max();

void CheckFinite(const Eigen::MatrixXd& columns) {
  for (Eigen::Index r = 0; r < columns.rows(); ++r) {
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
      if (!std::isfinite(columns(r, c))) {
        Fail(ErrorKind::kDataError,
             "non-finite training value at row " + std::to_string(r) +
                 ", column " + std::to_string(c));
      }
    }
  }
}

void FitStandardizer(const Eigen::MatrixXd& columns, TrainedSubmodel& model) {
  const auto n = static_cast<double>(columns.rows());
  model.mean = columns.colwise().mean().transpose();
  model.scale.resize(columns.cols());
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    const double var =
        (columns.col(c).array() - model.mean(c)).square().sum() / n;
    const double sd = std::sqrt(var);
    model.scale(c) = sd > kConstantColumnTolerance ? sd : 0.0;
  }
}

Eigen::MatrixXd Standardize(const TrainedSubmodel& model,
                            const Eigen::MatrixXd& columns) {
  Eigen::MatrixXd z(columns.rows(), columns.cols());
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    if (model.scale(c) == 0.0) {
      z.col(c).setZero();
    } else {
      z.col(c) = (columns.col(c).array() - model.mean(c)) / model.scale(c);
    }
  }
  return z;
}

// Row-wise log-sum-exp softmax; returns mean cross-entropy.
double SoftmaxCrossEntropy(const Eigen::MatrixXd& logits,
                           const std::vector<Label>& labels,
                           Eigen::MatrixXd& probs) {
  probs.resize(logits.rows(), logits.cols());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double top = logits.row(i).maxCoeff();
    probs.row(i) = (logits.row(i).array() - top).exp();
    const double total = probs.row(i).sum();
    probs.row(i) /= total;
    loss += std::log(total) + top - logits(i, labels[i]);
  }
  return loss / static_cast<double>(logits.rows());
}

void TrainLogistic(const SubmodelSpec& spec, const Eigen::MatrixXd& z,
                   const TrainingTargets& targets, TrainedSubmodel& model) {
  const Eigen::Index n = z.rows();
  const int classes = targets.num_labels;
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, classes);
  for (Eigen::Index i = 0; i < n; ++i) onehot(i, targets.labels[i]) = 1.0;

  model.weights = Eigen::MatrixXd::Zero(classes, z.cols());
  model.bias = Eigen::VectorXd::Zero(classes);
  Eigen::MatrixXd probs;
  const double inv_n = 1.0 / static_cast<double>(n);

  auto objective = [&](double data_loss) {
    return data_loss + 0.5 * spec.ridge * model.weights.squaredNorm();
  };

  model.loss_history.clear();
  model.loss_history.reserve(static_cast<std::size_t>(spec.iterations) + 1);
  for (int it = 0; it <= spec.iterations; ++it) {
    Eigen::MatrixXd logits = z * model.weights.transpose();
    logits.rowwise() += model.bias.transpose();
    const double loss = SoftmaxCrossEntropy(logits, targets.labels, probs);
    model.loss_history.push_back(objective(loss));
    if (it == spec.iterations) break;

    const Eigen::MatrixXd residual = probs - onehot;
    const Eigen::MatrixXd grad_w =
        inv_n * residual.transpose() * z + spec.ridge * model.weights;
    const Eigen::VectorXd grad_b = inv_n * residual.colwise().sum().transpose();
    model.weights -= spec.learning_rate * grad_w;
    model.bias -= spec.learning_rate * grad_b;
  }
}

void TrainCentroids(const Eigen::MatrixXd& z, const TrainingTargets& targets,
                    TrainedSubmodel& model) {
  const int classes = targets.num_labels;
  model.weights = Eigen::MatrixXd::Zero(classes, z.cols());
  // bias(c) = 1 if class c had rows, 0 otherwise.
  model.bias = Eigen::VectorXd::Zero(classes);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    model.weights.row(targets.labels[i]) += z.row(i);
    model.bias(targets.labels[i]) += 1.0;
  }
  for (int c = 0; c < classes; ++c) {
    if (model.bias(c) > 0) {
      model.weights.row(c) /= model.bias(c);
      model.bias(c) = 1.0;
    }
  }
}

void TrainLeastSquares(const SubmodelSpec& spec, const Eigen::MatrixXd& z,
                       const TrainingTargets& targets,
                       TrainedSubmodel& model) {
  const Eigen::Map<const Eigen::VectorXd> y(
      targets.values.data(), static_cast<Eigen::Index>(targets.values.size()));
  const double y_mean = y.mean();
  const Eigen::VectorXd centered = y.array() - y_mean;
  Eigen::VectorXd w;
  if (spec.ridge > 0.0) {
    Eigen::MatrixXd gram = z.transpose() * z;
    gram.diagonal().array() += spec.ridge;
    w = gram.ldlt().solve(z.transpose() * centered);
  } else {
    w = z.completeOrthogonalDecomposition().solve(centered);
  }
  model.weights = w.transpose();
  model.bias = Eigen::VectorXd::Constant(1, y_mean);
}

Eigen::VectorXd Gather(const TrainedSubmodel& model,
                       const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (static_cast<std::size_t>(x.size()) != model.input_dim) {
    Fail(ErrorKind::kDataError,
         "feature vector has " + std::to_string(x.size()) +
             " entries, model expects " + std::to_string(model.input_dim));
  }
  Eigen::VectorXd z(static_cast<Eigen::Index>(model.features.size()));
  for (std::size_t c = 0; c < model.features.size(); ++c) {
    const auto i = static_cast<Eigen::Index>(c);
    const double v = x(static_cast<Eigen::Index>(model.features[c]));
    if (!std::isfinite(v)) {
      Fail(ErrorKind::kDataError,
           "non-finite feature value at column " +
               std::to_string(model.features[c]));
    }
    z(i) = model.scale(i) == 0.0 ? 0.0 : (v - model.mean(i)) / model.scale(i);
  }
  return z;
}

}  // namespace

std::string_view LearnerFamilyName(LearnerFamily family) {
  switch (family) {
    case LearnerFamily::kMultinomialLogistic:
      return "multinomial-logistic";
    case LearnerFamily::kNearestCentroid:
      return "nearest-centroid";
    case LearnerFamily::kLinearLeastSquares:
      return "linear-least-squares";
  }
  return "unknown";
}

LearnerFamily ParseLearnerFamily(std::string_view name) {
  if (name == "multinomial-logistic" || name == "logistic") {
    return LearnerFamily::kMultinomialLogistic;
  }
  if (name == "nearest-centroid" || name == "centroid") {
    return LearnerFamily::kNearestCentroid;
  }
  if (name == "linear-least-squares" || name == "least-squares") {
    return LearnerFamily::kLinearLeastSquares;
  }
  Fail(ErrorKind::kInvalidConfiguration,
       "unknown learner family '" + std::string(name) + "'");
}

bool IsClassifier(LearnerFamily family) {
  return family != LearnerFamily::kLinearLeastSquares;
}

TrainedSubmodel TrainSubmodel(const SubmodelSpec& spec,
                              const FeatureSet& features,
                              const Eigen::MatrixXd& columns,
                              const TrainingTargets& targets,
                              std::size_t input_dim) {
  if (columns.rows() == 0) {
    Fail(ErrorKind::kTrainingError, "empty training set");
  }
  if (static_cast<std::size_t>(columns.cols()) != features.size()) {
    Fail(ErrorKind::kDataError,
         "column count " + std::to_string(columns.cols()) +
             " does not match feature subset size " +
             std::to_string(features.size()));
  }
  CheckFinite(columns);
  const auto n = static_cast<std::size_t>(columns.rows());

  TrainedSubmodel model;
  model.family = spec.family;
  model.features = features;
  model.input_dim =
      input_dim != 0
          ? input_dim
          : (features.empty() ? 0
                              : *std::max_element(features.begin(),
                                                  features.end()) + 1);
  for (std::size_t j : features) {
    if (j >= model.input_dim) {
      Fail(ErrorKind::kDataError, "feature index " + std::to_string(j) +
                                      " outside input width " +
                                      std::to_string(model.input_dim));
    }
  }

  if (IsClassifier(spec.family)) {
    if (targets.labels.size() != n) {
      Fail(ErrorKind::kDataError, "label count does not match row count");
    }
    if (targets.num_labels < 1) {
      Fail(ErrorKind::kDataError, "label count must be positive");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (targets.labels[i] < 0 || targets.labels[i] >= targets.num_labels) {
        Fail(ErrorKind::kDataError,
             "label out of range at row " + std::to_string(i));
      }
    }
    model.num_labels = targets.num_labels;
  } else {
    if (targets.values.size() != n) {
      Fail(ErrorKind::kDataError, "target count does not match row count");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(targets.values[i])) {
        Fail(ErrorKind::kDataError,
             "non-finite target at row " + std::to_string(i));
      }
    }
    model.num_labels = 0;
  }

  FitStandardizer(columns, model);
  const Eigen::MatrixXd z = Standardize(model, columns);
  switch (spec.family) {
    case LearnerFamily::kMultinomialLogistic:
      TrainLogistic(spec, z, targets, model);
      break;
    case LearnerFamily::kNearestCentroid:
      TrainCentroids(z, targets, model);
      break;
    case LearnerFamily::kLinearLeastSquares:
      TrainLeastSquares(spec, z, targets, model);
      break;
  }
  return model;
}

Eigen::VectorXd SubmodelLogits(const TrainedSubmodel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::VectorXd z = Gather(model, x);
  switch (model.family) {
    case LearnerFamily::kMultinomialLogistic:
      return model.weights * z + model.bias;
    case LearnerFamily::kNearestCentroid: {
      Eigen::VectorXd out(model.num_labels);
      for (int c = 0; c < model.num_labels; ++c) {
        out(c) = model.bias(c) > 0
                     ? -(model.weights.row(c).transpose() - z).norm()
                     : kAbsentClassLogit;
      }
      return out;
    }
    case LearnerFamily::kLinearLeastSquares:
      return Eigen::VectorXd::Constant(1, model.weights.row(0).dot(z) +
                                              model.bias(0));
  }
  return {};
}

Label ArgmaxLabel(const Eigen::Ref<const Eigen::VectorXd>& logits) {
  Label best = 0;
  for (Eigen::Index i = 1; i < logits.size(); ++i) {
    if (logits(i) > logits(best)) best = static_cast<Label>(i);
  }
  return best;
}

Label SubmodelPredict(const TrainedSubmodel& model,
                      const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (!IsClassifier(model.family)) {
    Fail(ErrorKind::kInvalidArgument, "regression submodel has no label");
  }
  return ArgmaxLabel(SubmodelLogits(model, x));
}

double SubmodelRegress(const TrainedSubmodel& model,
                       const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (IsClassifier(model.family)) {
    Fail(ErrorKind::kInvalidArgument, "classification submodel has no value");
  }
  return SubmodelLogits(model, x)(0);
}

namespace {

json VectorJson(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd VectorFrom(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(
      values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

std::string SubmodelToJson(const TrainedSubmodel& model) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < model.weights.rows(); ++r) {
    rows.push_back(VectorJson(model.weights.row(r).transpose()));
  }
  json j = {
      {"format", "featpart-submodel/1"},
      {"family", LearnerFamilyName(model.family)},
      {"features", model.features},
      {"input_dim", model.input_dim},
      {"num_labels", model.num_labels},
      {"mean", VectorJson(model.mean)},
      {"scale", VectorJson(model.scale)},
      {"weights", rows},
      {"bias", VectorJson(model.bias)},
  };
  return j.dump();
}

TrainedSubmodel SubmodelFromJson(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.at("format") != "featpart-submodel/1") {
      Fail(ErrorKind::kDataError, "unsupported submodel format");
    }
    TrainedSubmodel m;
    m.family = ParseLearnerFamily(j.at("family").get<std::string>());
    m.features = j.at("features").get<FeatureSet>();
    m.input_dim = j.at("input_dim").get<std::size_t>();
    m.num_labels = j.at("num_labels").get<int>();
    m.mean = VectorFrom(j.at("mean"));
    m.scale = VectorFrom(j.at("scale"));
    m.bias = VectorFrom(j.at("bias"));
    const auto& rows = j.at("weights");
    const auto cols = static_cast<Eigen::Index>(m.features.size());
    m.weights.resize(static_cast<Eigen::Index>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Eigen::VectorXd row = VectorFrom(rows[r]);
      if (row.size() != cols) {
        Fail(ErrorKind::kDataError, "weight row width mismatch");
      }
      m.weights.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    if (m.mean.size() != cols || m.scale.size() != cols) {
      Fail(ErrorKind::kDataError, "standardizer width mismatch");
    }
    return m;
  } catch (const json::exception& e) {
    Fail(ErrorKind::kDataError,
         std::string("malformed submodel file: ") + e.what());
  }
}

}  // namespace featpart
