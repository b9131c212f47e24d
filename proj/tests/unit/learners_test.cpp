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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "featpart/error.hpp"
#include "featpart/rng.hpp"

namespace featpart {
namespace {

SubmodelSpec Spec(LearnerFamily family) {
  SubmodelSpec s;
  s.family = family;
  return s;
}

TEST(Logistic, SeparatesOneDimensionalClasses) {
  // {(-1, first class), (+1, second class)} replicated.
  Eigen::MatrixXd x(20, 1);
  TrainingTargets t;
  t.num_labels = 2;
  for (int i = 0; i < 20; ++i) {
    x(i, 0) = i % 2 == 0 ? -1.0 : 1.0;
    t.labels.push_back(i % 2);
  }
  const auto m = TrainSubmodel(Spec(LearnerFamily::kMultinomialLogistic), {0},
                               x, t, 1);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(SubmodelPredict(m, x.row(i).transpose()), t.labels[static_cast<std::size_t>(i)]);
  }
}

TEST(Logistic, LossNeverIncreases) {
  Rng rng(5);
  Eigen::MatrixXd x(60, 3);
  TrainingTargets t;
  t.num_labels = 3;
  for (int i = 0; i < 60; ++i) {
    const int c = i % 3;
    for (int j = 0; j < 3; ++j) x(i, j) = (j == c ? 2.0 : 0.0) + rng.Normal();
    t.labels.push_back(c);
  }
  const auto m = TrainSubmodel(Spec(LearnerFamily::kMultinomialLogistic),
                               {0, 1, 2}, x, t, 3);
  ASSERT_EQ(m.loss_history.size(), 501u);
  for (std::size_t i = 1; i < m.loss_history.size(); ++i) {
    EXPECT_LE(m.loss_history[i], m.loss_history[i - 1] + 1e-9) << "iter " << i;
  }
}

TEST(Determinism, RetrainingIsBitIdentical) {
  Rng rng(9);
  Eigen::MatrixXd x(40, 2);
  TrainingTargets t;
  t.num_labels = 2;
  for (int i = 0; i < 40; ++i) {
    x(i, 0) = rng.Normal();
    x(i, 1) = rng.Normal();
    t.labels.push_back(x(i, 0) + x(i, 1) > 0 ? 1 : 0);
    t.values.push_back(3.0 * x(i, 0) - x(i, 1));
  }
  for (auto family : {LearnerFamily::kMultinomialLogistic,
                      LearnerFamily::kNearestCentroid,
                      LearnerFamily::kLinearLeastSquares}) {
    const auto a = TrainSubmodel(Spec(family), {1, 4}, x, t, 6);
    const auto b = TrainSubmodel(Spec(family), {1, 4}, x, t, 6);
    EXPECT_EQ(SubmodelToJson(a), SubmodelToJson(b));
    EXPECT_EQ(a.weights, b.weights);
    EXPECT_EQ(a.bias, b.bias);
  }
}

TEST(NearestCentroid, QueryNearFirstClass) {
  Eigen::MatrixXd x(2, 1);
  x << 0.0, 10.0;
  TrainingTargets t{{0, 1}, 2, {}};
  const auto m =
      TrainSubmodel(Spec(LearnerFamily::kNearestCentroid), {0}, x, t, 1);
  EXPECT_EQ(SubmodelPredict(m, Eigen::VectorXd::Constant(1, 1.0)), 0);
}

TEST(NearestCentroid, EquidistantQueryTakesSmallerIndex) {
  Eigen::MatrixXd x(2, 1);
  x << 0.0, 10.0;
  TrainingTargets t{{1, 0}, 2, {}};
  const auto m =
      TrainSubmodel(Spec(LearnerFamily::kNearestCentroid), {0}, x, t, 1);
  const Eigen::VectorXd logits =
      SubmodelLogits(m, Eigen::VectorXd::Constant(1, 5.0));
  EXPECT_EQ(logits(0), logits(1));
  EXPECT_EQ(ArgmaxLabel(logits), 0);
}

TEST(LeastSquares, RecoversSlope) {
  Eigen::MatrixXd x(5, 1);
  TrainingTargets t;
  for (int i = 0; i < 5; ++i) {
    x(i, 0) = i;
    t.values.push_back(2.0 * i);
  }
  const auto m =
      TrainSubmodel(Spec(LearnerFamily::kLinearLeastSquares), {0}, x, t, 1);
  EXPECT_NEAR(SubmodelRegress(m, Eigen::VectorXd::Constant(1, 3.0)), 6.0, 1e-6);
}

TEST(Restriction, OutsideCoordinatesAreIgnored) {
  Rng rng(13);
  Eigen::MatrixXd x(30, 2);
  TrainingTargets t;
  t.num_labels = 3;
  for (int i = 0; i < 30; ++i) {
    x(i, 0) = rng.Normal();
    x(i, 1) = rng.Normal();
    t.labels.push_back(i % 3);
    t.values.push_back(x(i, 0));
  }
  for (auto family : {LearnerFamily::kMultinomialLogistic,
                      LearnerFamily::kNearestCentroid,
                      LearnerFamily::kLinearLeastSquares}) {
    const auto m = TrainSubmodel(Spec(family), {2, 5}, x, t, 8);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd a(8);
      for (int j = 0; j < 8; ++j) a(j) = rng.Normal();
      Eigen::VectorXd b = a;
      for (int j : {0, 1, 3, 4, 6, 7}) b(j) = 1e6 * rng.Normal();
      EXPECT_EQ(SubmodelLogits(m, a), SubmodelLogits(m, b));
    }
  }
}

TEST(Errors, EmptyNonFiniteAndWidth) {
  TrainingTargets t{{}, 2, {}};
  try {
    TrainSubmodel(Spec(LearnerFamily::kMultinomialLogistic), {0},
                  Eigen::MatrixXd(0, 1), t, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTrainingError);
  }
  Eigen::MatrixXd bad(1, 1);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  t.labels = {0};
  try {
    TrainSubmodel(Spec(LearnerFamily::kMultinomialLogistic), {0}, bad, t, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDataError);
  }
  Eigen::MatrixXd ok(1, 1);
  ok(0, 0) = 1.0;
  const auto m =
      TrainSubmodel(Spec(LearnerFamily::kNearestCentroid), {0}, ok, t, 3);
  try {
    SubmodelLogits(m, Eigen::VectorXd::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDataError);
  }
}

TEST(ConstantColumns, PassThroughAsZero) {
  Eigen::MatrixXd x(4, 2);
  x << 1, 5, 2, 5, 3, 5, 4, 5;
  TrainingTargets t{{0, 0, 1, 1}, 2, {}};
  const auto m =
      TrainSubmodel(Spec(LearnerFamily::kMultinomialLogistic), {0, 1}, x, t, 2);
  EXPECT_EQ(m.scale(1), 0.0);
  Eigen::VectorXd a(2), b(2);
  a << 2.5, 5.0;
  b << 2.5, -100.0;
  EXPECT_EQ(SubmodelLogits(m, a), SubmodelLogits(m, b));
}

TEST(Json, RoundTripIsExact) {
  Rng rng(21);
  Eigen::MatrixXd x(25, 3);
  TrainingTargets t;
  t.num_labels = 2;
  for (int i = 0; i < 25; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = rng.Normal() / 3.0;
    t.labels.push_back(i % 2);
  }
  const auto m =
      TrainSubmodel(Spec(LearnerFamily::kMultinomialLogistic), {0, 2, 3}, x, t, 4);
  const auto back = SubmodelFromJson(SubmodelToJson(m));
  EXPECT_EQ(back.weights, m.weights);
  EXPECT_EQ(back.bias, m.bias);
  EXPECT_EQ(back.mean, m.mean);
  EXPECT_EQ(back.scale, m.scale);
  EXPECT_EQ(back.features, m.features);
  EXPECT_EQ(back.input_dim, m.input_dim);
}

}  // namespace
}  // namespace featpart
