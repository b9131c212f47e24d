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

#include <filesystem>

#include <gtest/gtest.h>

#include "featpart/certify.hpp"
#include "featpart/error.hpp"
#include "featpart/rng.hpp"

namespace featpart {
namespace {

SubmodelSpec Logistic(int iterations = 200) {
  SubmodelSpec s;
  s.iterations = iterations;
  return s;
}

int Differences(const VoteProfile& a, const VoteProfile& b,
                std::size_t* where = nullptr) {
  int diff = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a.votes()[t] != b.votes()[t]) {
      ++diff;
      if (where) *where = t;
    }
  }
  return diff;
}

TEST(Ensemble, SingleSubmodelMatchesItsOwnPrediction) {
  const Dataset data = GaussianBlobs(60, 4, 3, 1.0, 1);
  const Ensemble e = TrainEnsemble(data, StridedPartition(4, 1), Logistic(),
                                   EnsembleMode::kFeaturePartition, 0);
  for (std::size_t i = 0; i < data.n(); ++i) {
    const Eigen::VectorXd x = data.features.row(static_cast<Eigen::Index>(i)).transpose();
    EXPECT_EQ(e.PredictPlurality(x), SubmodelPredict(e.submodels()[0], x));
  }
}

TEST(Ensemble, InstanceShardsAreBalanced) {
  for (std::uint64_t seed : {0ull, 7ull, 99ull}) {
    std::vector<int> sizes(5, 0);
    for (std::size_t i = 0; i < 10; ++i) ++sizes[InstanceShard(i, 5, seed)];
    for (int s : sizes) EXPECT_EQ(s, 2);
  }
}

TEST(Ensemble, TrainingIsDeterministic) {
  const Dataset data = GaussianBlobs(80, 10, 3, 1.0, 2);
  const auto p = RandomPartition(10, 3, 5);
  const Ensemble a = TrainEnsemble(data, p, Logistic(), EnsembleMode::kFeaturePartition, 1, 4);
  const Ensemble b = TrainEnsemble(data, p, Logistic(), EnsembleMode::kFeaturePartition, 1, 1);
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    Eigen::VectorXd x(10);
    for (int j = 0; j < 10; ++j) x(j) = 3 * rng.Normal();
    EXPECT_EQ(a.Votes(x), b.Votes(x));
    EXPECT_EQ(a.Logits(x).logits(), b.Logits(x).logits());
  }
}

TEST(Ensemble, AllSubmodelsAgreeOnOnlyPresentClass) {
  Dataset data = GaussianBlobs(30, 6, 3, 1.0, 4);
  for (auto& y : data.labels) y = 2;
  SubmodelSpec spec;
  spec.family = LearnerFamily::kNearestCentroid;
  const Ensemble e = TrainEnsemble(data, StridedPartition(6, 3), spec,
                                   EnsembleMode::kFeaturePartition, 0);
  const auto v = e.Votes(Eigen::VectorXd::Zero(6));
  EXPECT_EQ(v.counts(), (std::vector<int>{0, 0, 3}));
}

TEST(Ensemble, VotesAreLogitArgmax) {
  const Dataset data = GaussianBlobs(90, 9, 4, 0.5, 5);
  const Ensemble e = TrainEnsemble(data, StridedPartition(9, 3), Logistic(),
                                   EnsembleMode::kFeaturePartition, 0);
  for (std::size_t i = 0; i < 20; ++i) {
    const Eigen::VectorXd x = data.features.row(static_cast<Eigen::Index>(i)).transpose();
    const auto l = e.Logits(x);
    const auto v = e.Votes(x);
    for (std::size_t t = 0; t < e.size(); ++t) {
      EXPECT_EQ(v.votes()[t],
                ArgmaxLabel(l.logits().row(static_cast<Eigen::Index>(t)).transpose()));
    }
  }
}

TEST(Ensemble, PerturbingOneSubsetMovesOneVote) {
  const Dataset data = GaussianBlobs(120, 12, 3, 1.0, 6);
  const auto p = RandomPartition(12, 4, 8);
  const Ensemble e = TrainEnsemble(data, p, Logistic(), EnsembleMode::kFeaturePartition, 0);
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t i = rng.Below(data.n());
    const std::size_t t = rng.Below(4);
    Eigen::VectorXd x = data.features.row(static_cast<Eigen::Index>(i)).transpose();
    Eigen::VectorXd y = x;
    for (std::size_t j : p.subsets[t]) y(static_cast<Eigen::Index>(j)) = 10 * rng.Normal();
    const auto a = e.Logits(x);
    const auto b = e.Logits(y);
    for (std::size_t s = 0; s < 4; ++s) {
      if (s == t) continue;
      EXPECT_EQ(a.logits().row(static_cast<Eigen::Index>(s)),
                b.logits().row(static_cast<Eigen::Index>(s)));
    }
    std::size_t where = t;
    EXPECT_LE(Differences(a.Votes(), b.Votes(), &where), 1);
    EXPECT_EQ(where, t);
  }
}

TEST(Ensemble, WidthMismatchIsDataError) {
  const Dataset data = GaussianBlobs(30, 4, 2, 1.0, 7);
  const Ensemble e = TrainEnsemble(data, StridedPartition(4, 2), Logistic(50),
                                   EnsembleMode::kFeaturePartition, 0);
  try {
    e.Votes(Eigen::VectorXd::Zero(5));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::kDataError);
  }
}

TEST(Decisions, PluralityTieGoesToSmallerIndex) {
  EXPECT_EQ(PredictPlurality(VoteProfile::FromCounts(std::vector<int>{2, 2})), 0);
}

TEST(Decisions, RunoffOverturnsPluralityOnLogits) {
  // Vote and logit profiles given separately: votes tie 2-2 and logits
  // favor label 1 in three of four rows.
  const VoteProfile v({0, 0, 1, 1}, 3);
  Eigen::MatrixXd m(4, 3);
  m << 1, 0, -1,
       0, 1, -1,
       0, 1, -1,
       0, 1, -1;
  const LogitProfile l(m);
  EXPECT_EQ(v.plurality(), 0);
  EXPECT_EQ(v.runner_up(), 1);
  EXPECT_EQ(GapLogit(l, 0, 1), -2);
  EXPECT_EQ(PredictRunoff(v, l), 1);
}

TEST(Decisions, BinaryRunoffIsPlurality) {
  Rng rng(10);
  for (int i = 0; i < 2000; ++i) {
    const int t = 1 + static_cast<int>(rng.Below(9));
    Eigen::MatrixXd m(t, 2);
    for (int r = 0; r < t; ++r) {
      m(r, 0) = rng.Normal();
      m(r, 1) = rng.Normal();
    }
    const LogitProfile l(m);
    EXPECT_EQ(PredictRunoff(l.Votes(), l), PredictPlurality(l.Votes()));
  }
}

TEST(InstanceMode, EmptyShardNamesSubmodel) {
  const Dataset data = GaussianBlobs(3, 6, 2, 1.0, 11);
  try {
    TrainEnsemble(data, StridedPartition(6, 5), Logistic(10),
                  EnsembleMode::kInstancePartition, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTrainingError);
    EXPECT_NE(std::string(e.what()).find("submodel"), std::string::npos);
  }
}

TEST(InstanceMode, OneFlippedLabelMovesAtMostOneVote) {
  const Dataset data = GaussianBlobs(100, 10, 3, 0.6, 12);
  const auto p = StridedPartition(10, 5);
  const Ensemble base = TrainEnsemble(data, p, Logistic(), EnsembleMode::kInstancePartition, 21);
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    Dataset flipped = data;
    const std::size_t row = rng.Below(data.n());
    flipped.labels[row] = (flipped.labels[row] + 1 + static_cast<int>(rng.Below(2))) % 3;
    const Ensemble e = TrainEnsemble(flipped, p, Logistic(), EnsembleMode::kInstancePartition, 21);
    const std::size_t owner = InstanceShard(row, 5, 21);
    for (std::size_t i = 0; i < data.n(); ++i) {
      const Eigen::VectorXd x = data.features.row(static_cast<Eigen::Index>(i)).transpose();
      std::size_t where = owner;
      EXPECT_LE(Differences(base.Votes(x), e.Votes(x), &where), 1);
      EXPECT_EQ(where, owner);
    }
  }
}

TEST(RegressionMode, MedianAndOddT) {
  const Dataset data = LinearRegressionData(80, 9, 0.1, 14);
  SubmodelSpec spec;
  spec.family = LearnerFamily::kLinearLeastSquares;
  const Ensemble e = TrainEnsemble(data, StridedPartition(9, 3), spec,
                                   EnsembleMode::kRegression, 0);
  const Eigen::VectorXd x = data.features.row(0).transpose();
  auto out = e.Outputs(x);
  std::sort(out.begin(), out.end());
  EXPECT_EQ(e.PredictMedian(x), out[1]);
  try {
    TrainEnsemble(data, StridedPartition(9, 4), spec, EnsembleMode::kRegression, 0);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::kInvalidConfiguration);
  }
}

TEST(Bundle, SaveLoadRoundTrip) {
  const Dataset data = GaussianBlobs(60, 8, 3, 1.0, 15);
  auto [fine, spread] = OverlappingPartition(8, 2, 2, 3);
  const auto p = MakeOverlapping(fine, spread);
  const Ensemble e = TrainEnsemble(data, p, Logistic(), EnsembleMode::kFeaturePartition, 5);
  const auto dir = std::filesystem::temp_directory_path() / "featpart_bundle_test";
  std::filesystem::remove_all(dir);
  SaveEnsemble(e, dir, data.label_names);
  std::vector<std::string> names;
  const Ensemble back = LoadEnsemble(dir, &names);
  EXPECT_EQ(names, data.label_names);
  EXPECT_EQ(back.partition(), e.partition());
  EXPECT_EQ(back.mode(), e.mode());
  EXPECT_EQ(back.seed(), e.seed());
  for (std::size_t i = 0; i < data.n(); ++i) {
    const Eigen::VectorXd x = data.features.row(static_cast<Eigen::Index>(i)).transpose();
    EXPECT_EQ(back.Logits(x).logits(), e.Logits(x).logits());
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace featpart
